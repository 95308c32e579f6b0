//! Weierstrass reduction of the cubic family, the Tate formulaire, the
//! j-invariant, and the function Φ.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::arith::{rat_int, RatFunc, Rational, UniPoly};
use crate::geometry::ParamValue;
use crate::poly::{MPoly, VariableSpace};
use crate::tower::{TowerElement, TowerSpec};

use super::cubic::cubic_form;
use super::InvariantsError;

/// Tate coefficients of a Weierstrass model
/// `w2^2 w3 + a1 w1 w2 w3 + a3 w2 w3^2 = w1^3 + a2 w1^2 w3 + a4 w1 w3^2 + a6 w3^3`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeierstrassModel {
    pub a1: TowerElement,
    pub a2: TowerElement,
    pub a3: TowerElement,
    pub a4: TowerElement,
    pub a6: TowerElement,
}

/// The derived b-, c-quantities, discriminant, and j-invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct TateInvariants {
    pub b2: TowerElement,
    pub b4: TowerElement,
    pub b6: TowerElement,
    pub b8: TowerElement,
    pub c4: TowerElement,
    pub c6: TowerElement,
    pub delta: TowerElement,
    pub j: TowerElement,
}

fn param_ratfunc(t: &ParamValue) -> RatFunc {
    match t {
        ParamValue::Symbolic => RatFunc::var(),
        ParamValue::Rational(q) => RatFunc::from_rational(q.clone()),
    }
}

fn is_minus_three(t: &ParamValue) -> bool {
    matches!(t, ParamValue::Rational(q) if *q == rat_int(-3))
}

/// The cube-root constant `C = -cbrt((t^3/27 + 1)/3)`, i.e. the real cube
/// root with `C^3 = -(t^3+27)/81`, negative for `t > -3`.
fn cube_constant(tower: &Arc<TowerSpec>, t_rf: &RatFunc) -> Result<TowerElement, InvariantsError> {
    let t3 = t_rf.pow(3);
    let num = -&(&t3 + &RatFunc::from_int(27));
    let radicand = num.checked_div(&RatFunc::from_int(81))?;
    Ok(TowerElement::cbrt_of(tower, &radicand)?)
}

fn weierstrass_tower(t_rf: &RatFunc) -> Result<Arc<TowerSpec>, InvariantsError> {
    let t3 = t_rf.pow(3);
    let num = -&(&t3 + &RatFunc::from_int(27));
    let radicand = num.checked_div(&RatFunc::from_int(81))?;
    Ok(TowerSpec::builder().cbrt(radicand).build()?)
}

/// Composes the forward substitution `w1* = C w3`, `w2* = -w2 + (t/3) w3`,
/// `w3* = w1 + w2 - (t/3) w3` with the target Weierstrass polynomial,
/// verifies the result is `scale * c_t` for a nonzero scale, and returns
/// the model `a1 = -t/(3C), a2 = -t^2/(9C^2), a3 = 1, a4 = 0, a6 = -1/3`
/// together with the scale.
pub fn weierstrass_reduce(t: &ParamValue) -> Result<(WeierstrassModel, TowerElement), InvariantsError> {
    if is_minus_three(t) {
        return Err(InvariantsError::SingularCubic);
    }
    let t_rf = param_ratfunc(t);
    let tower = weierstrass_tower(&t_rf)?;
    let c = cube_constant(&tower, &t_rf)?;
    let c_inv = c.inv()?;
    let third = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[3]));
    let t_el = TowerElement::from_ratfunc(&tower, t_rf.clone());

    let a1 = -&(&t_el.scale(&third) * &c_inv);
    let a2 = -&(&t_el.pow(2).scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[9]))) * &c_inv.pow(2));
    let a3 = TowerElement::one(&tower);
    let a4 = TowerElement::zero(&tower);
    let a6 = TowerElement::from_ratfunc(&tower, -&third);
    let model = WeierstrassModel { a1: a1.clone(), a2: a2.clone(), a3: a3.clone(), a4: a4.clone(), a6: a6.clone() };

    // Target Weierstrass polynomial as LHS - RHS.
    let space = VariableSpace::ternary();
    let w1 = MPoly::var(&space, &tower, 0);
    let w2 = MPoly::var(&space, &tower, 1);
    let w3 = MPoly::var(&space, &tower, 2);
    let lhs = &(&(&w2.pow(2) * &w3) + &(&(&w1 * &w2) * &w3).scale(&a1)) + &(&w2 * &w3.pow(2)).scale(&a3);
    let rhs = &(&(&w1.pow(3) + &(&w1.pow(2).scale(&a2) * &w3))
        + &(&w1 * &w3.pow(2)).scale(&a4))
        + &w3.pow(3).scale(&a6);
    let weq = &lhs - &rhs;

    // Forward substitution into the Weierstrass equation.
    let t_third = TowerElement::from_ratfunc(&tower, t_rf.checked_div(&RatFunc::from_int(3))?);
    let w3_scaled = w3.scale(&t_third);
    let mut bindings = BTreeMap::new();
    bindings.insert("w1".to_string(), w3.scale(&c));
    bindings.insert("w2".to_string(), &(-&w2) + &w3_scaled);
    bindings.insert("w3".to_string(), &(&w1 + &w2) - &w3_scaled);
    let composed = weq.substitute(&bindings)?;

    // Proportionality against c_t: read the scale off the w1^3 coefficient.
    let ct = cubic_form(&tower, &t_rf);
    let scale = composed.coeff(&[3, 0, 0]);
    if scale.is_zero() {
        return Err(InvariantsError::ProportionalityFailed);
    }
    if &composed - &ct.poly().scale(&scale) != MPoly::zero(&space, &tower) {
        return Err(InvariantsError::ProportionalityFailed);
    }
    Ok((model, scale))
}

/// The standard formulaire: `b2 = a1^2+4a2`, `b4 = 2a4+a1a3`,
/// `b6 = a3^2+4a6`, `b8 = a1^2a6+4a2a6-a1a3a4+a2a3^2-a4^2`,
/// `c4 = b2^2-24b4`, `c6 = -b2^3+36b2b4-216b6`,
/// `Δ = -b2^2b8-8b4^3-27b6^2+9b2b4b6`, `j = c4^3/Δ`; the relations
/// `4b8 = b2b6-b4^2` and `1728Δ = c4^3-c6^2` are asserted.
pub fn tate_invariants(m: &WeierstrassModel) -> Result<TateInvariants, InvariantsError> {
    let four = RatFunc::from_int(4);
    let b2 = &m.a1.pow(2) + &m.a2.scale(&four);
    let b4 = &m.a4.scale(&RatFunc::from_int(2)) + &(&m.a1 * &m.a3);
    let b6 = &m.a3.pow(2) + &m.a6.scale(&four);
    let b8 = &(&(&(&m.a1.pow(2) * &m.a6) + &(&m.a2 * &m.a6).scale(&four)) - &(&(&m.a1 * &m.a3) * &m.a4))
        + &(&(&m.a2 * &m.a3.pow(2)) - &m.a4.pow(2));
    // 4 b8 = b2 b6 - b4^2
    debug_assert!((&b8.scale(&four) - &(&(&b2 * &b6) - &b4.pow(2))).is_zero());
    let c4 = &b2.pow(2) - &b4.scale(&RatFunc::from_int(24));
    let c6 = &(&(-&b2.pow(3)) + &(&b2 * &b4).scale(&RatFunc::from_int(36))) - &b6.scale(&RatFunc::from_int(216));
    let delta = &(&(&(-&(&b2.pow(2) * &b8)) - &b4.pow(3).scale(&RatFunc::from_int(8)))
        - &b6.pow(2).scale(&RatFunc::from_int(27)))
        + &(&(&b2 * &b4) * &b6).scale(&RatFunc::from_int(9));
    if delta.is_zero() {
        return Err(InvariantsError::SingularModel);
    }
    // 1728 Δ = c4^3 - c6^2
    debug_assert!((&delta.scale(&RatFunc::from_int(1728)) - &(&c4.pow(3) - &c6.pow(2))).is_zero());
    let j = &c4.pow(3) * &delta.inv()?;
    Ok(TateInvariants { b2, b4, b6, b8, c4, c6, delta, j })
}

/// The closed form `j = -t^3 (t^3-216)^3/(t^3+27)^3` in ℚ(t).
pub fn j_closed_form() -> RatFunc {
    let t3 = RatFunc::var().pow(3);
    let num = -&(&t3 * &(&t3 - &RatFunc::from_int(216)).pow(3));
    let den = (&t3 + &RatFunc::from_int(27)).pow(3);
    num.checked_div(&den).expect("denominator nonzero")
}

/// Evaluates the j-invariant of `Z_t`. Symbolic input returns the closed
/// form after cross-checking it against the Weierstrass/Tate pipeline;
/// rational input evaluates exactly.
pub fn j_of_ct(t: &ParamValue) -> Result<RatFunc, InvariantsError> {
    if is_minus_three(t) {
        return Err(InvariantsError::SingularCubic);
    }
    let closed = j_closed_form();
    match t {
        ParamValue::Symbolic => {
            let (model, _) = weierstrass_reduce(t)?;
            let tate = tate_invariants(&model)?;
            let pipeline = tate.j.as_ratfunc().ok_or(InvariantsError::ProportionalityFailed)?;
            if pipeline != closed {
                return Err(InvariantsError::ProportionalityFailed);
            }
            Ok(closed)
        }
        ParamValue::Rational(q) => {
            let v = closed.eval(q).ok_or(InvariantsError::SingularCubic)?;
            Ok(RatFunc::from_rational(v))
        }
    }
}

/// `Φ(s) = -s (s-216)^3/(s+27)^3` as a rational function of `s`.
pub fn phi_ratfunc() -> RatFunc {
    let s = RatFunc::var();
    let num = -&(&s * &(&s - &RatFunc::from_int(216)).pow(3));
    let den = (&s + &RatFunc::from_int(27)).pow(3);
    num.checked_div(&den).expect("denominator nonzero")
}

pub fn phi(s: &Rational) -> Result<Rational, InvariantsError> {
    if *s == rat_int(-27) {
        return Err(InvariantsError::PoleAt(s.clone()));
    }
    Ok(phi_ratfunc().eval(s).expect("pole excluded"))
}

/// Exact symbolic derivative of Φ at 0.
pub fn phi_derivative_at_zero() -> Rational {
    phi_ratfunc().derivative().eval(&rat_int(0)).expect("no pole at 0")
}

/// Strict monotonicity of Φ over an inclusive rational sample grid.
pub fn phi_monotone_scan(from: &Rational, to: &Rational, samples: usize) -> Result<bool, InvariantsError> {
    assert!(samples >= 2);
    let span = to - from;
    let mut prev: Option<Rational> = None;
    for idx in 0..samples {
        let s = from + &span * Rational::new(idx.into(), (samples - 1).into());
        let v = phi(&s)?;
        if let Some(p) = prev {
            if v <= p {
                return Ok(false);
            }
        }
        prev = Some(v);
    }
    Ok(true)
}

/// Reciprocity of the paired parameters t and -18/t: the product
/// `j(t) * j(-18/t)` equals `1728^2` exactly, i.e. the normalized
/// invariants `j/1728` are reciprocal. Excluded: `t ∈ {0, 6, -3}` (zero j
/// or singular cubic on either side).
pub fn reciprocity_check(t: &Rational) -> Result<bool, InvariantsError> {
    if *t == rat_int(0) || *t == rat_int(6) {
        return Err(InvariantsError::ExcludedParameter(format!(
            "j({}) = 0 has no reciprocal",
            t
        )));
    }
    if *t == rat_int(-3) {
        return Err(InvariantsError::ExcludedParameter("t = -3 is the singular cubic".into()));
    }
    let j1 = j_of_ct(&ParamValue::Rational(t.clone()))?;
    let partner = rat_int(-18) / t;
    let j2 = j_of_ct(&ParamValue::Rational(partner))?;
    let product = &j1 * &j2;
    Ok(product == RatFunc::from_rational(rat_int(1728) * rat_int(1728)))
}

/// The symbolic form of the same identity: `Φ(s) · Φ(-5832/s) = 1728^2` as
/// an exact rational-function identity (equivalently, the normalized map
/// `Φ/1728` satisfies `φ(s) φ(-5832/s) = 1`).
pub fn reciprocity_identity_symbolic() -> bool {
    let phi = phi_ratfunc();
    let inv_arg = RatFunc::from_int(-5832).checked_div(&RatFunc::var()).expect("s != 0");
    let other = phi.compose(&inv_arg);
    let product = &phi * &other;
    product == RatFunc::from_rational(rat_int(1728) * rat_int(1728))
}
