//! Instantiation of the hypersurface families.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::arith::{rat_int, RatFunc, Rational, UniPoly};
use crate::poly::{MPoly, VariableSpace};
use crate::tower::{TowerElement, TowerSpec};

use super::{GeometryError, TubeBase};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    M1,
    M2,
    QuadricTube,
    Pt,
    CalPt,
    FrakP,
    St,
    GenHyper,
    /// Image of a catalog base under an affine map.
    Derived,
}

impl FamilyTag {
    pub fn parse(s: &str) -> Option<FamilyTag> {
        match s {
            "M1" | "m1" => Some(FamilyTag::M1),
            "M2" | "m2" => Some(FamilyTag::M2),
            "QuadricTube" | "quadric-tube" => Some(FamilyTag::QuadricTube),
            "Pt" | "pt" => Some(FamilyTag::Pt),
            "CalPt" | "calpt" => Some(FamilyTag::CalPt),
            "FrakP" | "frakp" => Some(FamilyTag::FrakP),
            "St" | "st" => Some(FamilyTag::St),
            "GenHyper" | "genhyper" => Some(FamilyTag::GenHyper),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::M1 => "M1",
            FamilyTag::M2 => "M2",
            FamilyTag::QuadricTube => "QuadricTube",
            FamilyTag::Pt => "Pt",
            FamilyTag::CalPt => "CalPt",
            FamilyTag::FrakP => "FrakP",
            FamilyTag::St => "St",
            FamilyTag::GenHyper => "GenHyper",
            FamilyTag::Derived => "Derived",
        }
    }
}

/// A family parameter that is either left symbolic or bound to a rational.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Symbolic,
    Rational(Rational),
}

impl ParamValue {
    /// The parameter as an element of ℚ(t): the variable itself or the
    /// bound constant.
    fn as_ratfunc(&self) -> RatFunc {
        match self {
            ParamValue::Symbolic => RatFunc::var(),
            ParamValue::Rational(q) => RatFunc::from_rational(q.clone()),
        }
    }

    fn describe(&self) -> String {
        match self {
            ParamValue::Symbolic => "symbolic".into(),
            ParamValue::Rational(q) => q.to_string(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct FamilyParams {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub p: Option<usize>,
    pub t: Option<ParamValue>,
}

/// Compares a rational with `17 + 12 sqrt(2)`; equality cannot occur.
pub(crate) fn cmp_silver_bound(t: &Rational) -> Ordering {
    let seventeen = rat_int(17);
    if *t <= seventeen {
        return Ordering::Less;
    }
    let d = t - seventeen;
    (&d * &d).cmp(&rat_int(288))
}

struct Builder {
    space: Arc<VariableSpace>,
    tower: Arc<TowerSpec>,
    f: MPoly,
}

impl Builder {
    fn new(n: usize, tower: Arc<TowerSpec>) -> Self {
        let space = VariableSpace::tube(n);
        let f = MPoly::zero(&space, &tower);
        Builder { space, tower, f }
    }

    fn term(&mut self, coeff: TowerElement, vars: &[(usize, u16)]) {
        let mut exps = vec![0u16; self.space.dim()];
        for &(v, e) in vars {
            exps[v] += e;
        }
        self.f.add_term(exps, coeff);
    }

    fn term_rf(&mut self, coeff: RatFunc, vars: &[(usize, u16)]) {
        self.term(TowerElement::from_ratfunc(&self.tower, coeff), vars);
    }

    fn term_int(&mut self, coeff: i64, vars: &[(usize, u16)]) {
        self.term_rf(RatFunc::from_int(coeff), vars);
    }

    fn finish(self, n: usize, tag: FamilyTag, params: Vec<(String, String)>) -> TubeBase {
        let base = TubeBase::new(n, self.f, tag, params);
        assert!(base.passes_through_origin(), "catalog bases pass through the origin");
        base
    }
}

/// `x0 = Σ_{j<n} x_j^2 - x_n^2`.
pub fn m1_base(n: usize) -> Result<TubeBase, GeometryError> {
    if n < 2 {
        return Err(GeometryError::ParameterOutOfDomain("M1 needs n >= 2".into()));
    }
    let mut b = Builder::new(n, TowerSpec::rational());
    for j in 1..n {
        b.term_int(1, &[(j, 2)]);
    }
    b.term_int(-1, &[(n, 2)]);
    Ok(b.finish(n, FamilyTag::M1, vec![("n".into(), n.to_string())]))
}

/// `x0 = Σ_{j<=n-2} x_j^2 + x_{n-1} x_n + x_n^3`.
pub fn m2_base(n: usize) -> Result<TubeBase, GeometryError> {
    if n < 2 {
        return Err(GeometryError::ParameterOutOfDomain("M2 needs n >= 2".into()));
    }
    let mut b = Builder::new(n, TowerSpec::rational());
    for j in 1..=n - 2 {
        b.term_int(1, &[(j, 2)]);
    }
    b.term_int(1, &[(n - 1, 1), (n, 1)]);
    b.term_int(1, &[(n, 3)]);
    Ok(b.finish(n, FamilyTag::M2, vec![("n".into(), n.to_string())]))
}

/// The quadratic tube `x0 = Σ_{j<=k} x_j^2 - Σ_{j>k} x_j^2`.
pub fn quadric_tube_base(k: usize, n: usize) -> Result<TubeBase, GeometryError> {
    if k > n || n == 0 {
        return Err(GeometryError::ParameterOutOfDomain("quadric tube needs k <= n".into()));
    }
    let mut b = Builder::new(n, TowerSpec::rational());
    for j in 1..=n {
        b.term_int(if j <= k { 1 } else { -1 }, &[(j, 2)]);
    }
    Ok(b.finish(
        n,
        FamilyTag::QuadricTube,
        vec![("k".into(), k.to_string()), ("n".into(), n.to_string())],
    ))
}

fn pt_radicands(t: &RatFunc) -> (RatFunc, RatFunc, RatFunc) {
    let one = RatFunc::one();
    let r_a = (&one + t).scale_int(2); // 2(1+t)
    let r_b = t.scale_int(3); // 3t
    // (-t^2 + 34t - 1)/(3t)
    let num = &(&t.scale_int(34) - &(t * t)) - &one;
    let r_d = num.checked_div(&r_b).expect("t != 0 inside the domain");
    (r_a, r_b, r_d)
}

trait ScaleInt {
    fn scale_int(&self, k: i64) -> RatFunc;
}

impl ScaleInt for RatFunc {
    fn scale_int(&self, k: i64) -> RatFunc {
        self * &RatFunc::from_int(k)
    }
}

/// The family `P_t` for `5 <= k <= n-2`, `n >= 7`, `1 <= t <= 17+12√2`.
pub fn pt_base(k: usize, n: usize, t: &ParamValue) -> Result<TubeBase, GeometryError> {
    if n < 7 || k < 5 || k + 2 > n {
        return Err(GeometryError::ParameterOutOfDomain(format!(
            "Pt needs 5 <= k <= n-2 and n >= 7, got k={}, n={}",
            k, n
        )));
    }
    if let ParamValue::Rational(q) = t {
        if *q < rat_int(1) || cmp_silver_bound(q) == Ordering::Greater {
            return Err(GeometryError::ParameterOutOfDomain(format!(
                "Pt needs 1 <= t <= 17+12*sqrt(2), got t = {}",
                q
            )));
        }
    }
    let t_rf = t.as_ratfunc();
    let (r_a, r_b, r_d) = pt_radicands(&t_rf);
    let tower = TowerSpec::builder().sqrt(r_a.clone()).sqrt(r_b.clone()).sqrt(r_d.clone()).build()?;
    let sqrt_a = TowerElement::sqrt_of(&tower, &r_a)?;
    let sqrt_b = TowerElement::sqrt_of(&tower, &r_b)?;
    let sqrt_d = TowerElement::sqrt_of(&tower, &r_d)?;
    let one_plus_t = &RatFunc::one() + &t_rf;
    // (1+t)/sqrt(3t) = (1+t)/(3t) * sqrt(3t)
    let c_coeff = sqrt_b.scale(&one_plus_t.checked_div(&r_b).expect("t != 0"));

    let mut b = Builder::new(n, tower);
    for j in 1..=k - 2 {
        b.term_int(1, &[(j, 2)]);
    }
    b.term_int(1, &[(k - 1, 1), (k, 1)]);
    b.term_int(1, &[(k + 1, 1), (k + 2, 1)]);
    for j in k + 3..=n {
        b.term_int(-1, &[(j, 2)]);
    }
    b.term(sqrt_a.scale(&RatFunc::from_int(2)), &[(k - 4, 1), (k - 1, 1), (k + 1, 1)]);
    b.term(sqrt_b.scale(&RatFunc::from_int(2)), &[(k - 3, 1), (k + 1, 2)]);
    b.term(c_coeff, &[(k - 3, 1), (k - 1, 2)]);
    b.term(sqrt_d, &[(k - 2, 1), (k - 1, 2)]);
    // (x_{k-1}^2 + x_{k+1}^2)(x_{k-1}^2 + t x_{k+1}^2)
    b.term_int(1, &[(k - 1, 4)]);
    b.term_rf(&RatFunc::one() + &t_rf, &[(k - 1, 2), (k + 1, 2)]);
    b.term_rf(t_rf.clone(), &[(k + 1, 4)]);
    Ok(b.finish(
        n,
        FamilyTag::Pt,
        vec![
            ("k".into(), k.to_string()),
            ("n".into(), n.to_string()),
            ("t".into(), t.describe()),
        ],
    ))
}

/// The family `𝒫_t` for `4 <= k <= n-3`, `n >= 7`, `t >= 17+12√2`.
pub fn calpt_base(k: usize, n: usize, t: &ParamValue) -> Result<TubeBase, GeometryError> {
    if n < 7 || k < 4 || k + 3 > n {
        return Err(GeometryError::ParameterOutOfDomain(format!(
            "CalPt needs 4 <= k <= n-3 and n >= 7, got k={}, n={}",
            k, n
        )));
    }
    if let ParamValue::Rational(q) = t {
        if cmp_silver_bound(q) == Ordering::Less {
            return Err(GeometryError::ParameterOutOfDomain(format!(
                "CalPt needs t >= 17+12*sqrt(2), got t = {}",
                q
            )));
        }
    }
    let t_rf = t.as_ratfunc();
    let one = RatFunc::one();
    let r_a = (&one + &t_rf).scale_int(2);
    let r_b = t_rf.scale_int(3);
    // (t^2 - 34t + 1)/(3t)
    let num = &(&(&t_rf * &t_rf) - &t_rf.scale_int(34)) + &one;
    let r_d = num.checked_div(&r_b).expect("t != 0 inside the domain");
    let tower = TowerSpec::builder().sqrt(r_a.clone()).sqrt(r_b.clone()).sqrt(r_d.clone()).build()?;
    let sqrt_a = TowerElement::sqrt_of(&tower, &r_a)?;
    let sqrt_b = TowerElement::sqrt_of(&tower, &r_b)?;
    let sqrt_d = TowerElement::sqrt_of(&tower, &r_d)?;
    let c_coeff = sqrt_b.scale(&(&one + &t_rf).checked_div(&r_b).expect("t != 0"));

    let mut b = Builder::new(n, tower);
    for j in 1..=k - 2 {
        b.term_int(1, &[(j, 2)]);
    }
    b.term_int(-1, &[(k - 1, 2)]);
    b.term_int(1, &[(k, 1), (k + 1, 1)]);
    b.term_int(1, &[(k + 2, 1), (k + 3, 1)]);
    for j in k + 4..=n {
        b.term_int(-1, &[(j, 2)]);
    }
    b.term(sqrt_a.scale(&RatFunc::from_int(2)), &[(k - 3, 1), (k, 1), (k + 2, 1)]);
    b.term(sqrt_b.scale(&RatFunc::from_int(2)), &[(k - 2, 1), (k + 2, 2)]);
    b.term(c_coeff, &[(k - 2, 1), (k, 2)]);
    b.term(sqrt_d, &[(k - 1, 1), (k, 2)]);
    b.term_int(1, &[(k, 4)]);
    b.term_rf(&one + &t_rf, &[(k, 2), (k + 2, 2)]);
    b.term_rf(t_rf.clone(), &[(k + 2, 4)]);
    Ok(b.finish(
        n,
        FamilyTag::CalPt,
        vec![
            ("k".into(), k.to_string()),
            ("n".into(), n.to_string()),
            ("t".into(), t.describe()),
        ],
    ))
}

/// The unified family `𝔓_τ^p` for `n >= 7`, `0 <= p <= n-7`, `τ != ±2`.
pub fn frakp_base(n: usize, p: usize, tau: &ParamValue) -> Result<TubeBase, GeometryError> {
    if n < 7 || p > n - 7 {
        return Err(GeometryError::ParameterOutOfDomain(format!(
            "FrakP needs n >= 7 and 0 <= p <= n-7, got n={}, p={}",
            n, p
        )));
    }
    if let ParamValue::Rational(q) = tau {
        if *q == rat_int(2) || *q == rat_int(-2) {
            return Err(GeometryError::ParameterOutOfDomain("FrakP needs tau != ±2".into()));
        }
    }
    let tau_rf = tau.as_ratfunc();
    let tower = TowerSpec::builder().param_name("tau").build()?;
    let third = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[3]));
    let mut b = Builder::new(n, tower);
    b.term_int(4, &[(1, 1), (7, 1)]);
    b.term_int(4, &[(2, 1), (6, 1)]);
    b.term_rf(-&tau_rf, &[(3, 2)]);
    b.term_int(2, &[(4, 2)]);
    b.term_rf(-&tau_rf, &[(5, 2)]);
    b.term_int(4, &[(3, 1), (5, 1)]);
    for j in 8..=p + 7 {
        b.term_int(1, &[(j, 2)]);
    }
    for j in p + 8..=n {
        b.term_int(-1, &[(j, 2)]);
    }
    b.term_rf(tau_rf.scale_int(-2), &[(1, 2), (3, 1)]);
    b.term_rf(tau_rf.scale_int(-2), &[(2, 2), (5, 1)]);
    b.term_int(4, &[(1, 2), (5, 1)]);
    b.term_int(4, &[(2, 2), (3, 1)]);
    b.term_int(8, &[(1, 1), (2, 1), (4, 1)]);
    b.term_rf(-&(&tau_rf * &third), &[(1, 4)]);
    b.term_int(4, &[(1, 2), (2, 2)]);
    b.term_rf(-&(&tau_rf * &third), &[(2, 4)]);
    Ok(b.finish(
        n,
        FamilyTag::FrakP,
        vec![
            ("n".into(), n.to_string()),
            ("p".into(), p.to_string()),
            ("tau".into(), tau.describe()),
        ],
    ))
}

/// The cubic-pairing family `S_t` in ℂ^7:
/// `x0 = x1 x6 + x2 x5 + x3 x4 + x4^3 + x5^3 + x6^3 + t x4 x5 x6`.
pub fn st_base(t: &ParamValue) -> Result<TubeBase, GeometryError> {
    let t_rf = t.as_ratfunc();
    let mut b = Builder::new(6, TowerSpec::rational());
    b.term_int(1, &[(1, 1), (6, 1)]);
    b.term_int(1, &[(2, 1), (5, 1)]);
    b.term_int(1, &[(3, 1), (4, 1)]);
    b.term_int(1, &[(4, 3)]);
    b.term_int(1, &[(5, 3)]);
    b.term_int(1, &[(6, 3)]);
    b.term_rf(t_rf, &[(4, 1), (5, 1), (6, 1)]);
    Ok(b.finish(6, FamilyTag::St, vec![("t".into(), t.describe())]))
}

/// The affine-homogeneity template at `k = 5`, `n = 7` with relation-free
/// scalar symbols `a, b, c, d` and the quartic block of the `P_t` family
/// with symbolic `t`.
pub fn genhyper_symbolic() -> Result<TubeBase, GeometryError> {
    let tower = TowerSpec::builder().symbol("a").symbol("b").symbol("c").symbol("d").build()?;
    let a = TowerElement::symbol(&tower, "a")?;
    let bsym = TowerElement::symbol(&tower, "b")?;
    let c = TowerElement::symbol(&tower, "c")?;
    let d = TowerElement::symbol(&tower, "d")?;
    let t_rf = RatFunc::var();
    let mut b = Builder::new(7, tower);
    b.term_int(1, &[(1, 2)]);
    b.term_int(1, &[(2, 2)]);
    b.term_int(1, &[(3, 2)]);
    b.term_int(1, &[(4, 1), (5, 1)]);
    b.term_int(1, &[(6, 1), (7, 1)]);
    b.term(a, &[(1, 1), (4, 1), (6, 1)]);
    b.term(bsym, &[(2, 1), (6, 2)]);
    b.term(c, &[(2, 1), (4, 2)]);
    b.term(d, &[(3, 1), (4, 2)]);
    b.term_int(1, &[(4, 4)]);
    b.term_rf(&RatFunc::one() + &t_rf, &[(4, 2), (6, 2)]);
    b.term_rf(t_rf, &[(6, 4)]);
    Ok(b.finish(7, FamilyTag::GenHyper, vec![("k".into(), "5".into()), ("n".into(), "7".into())]))
}

/// Catalog dispatch from a tag and a parameter record.
pub fn instantiate_family(tag: FamilyTag, params: &FamilyParams) -> Result<TubeBase, GeometryError> {
    let need = |x: Option<usize>, what: &str| {
        x.ok_or_else(|| GeometryError::ParameterOutOfDomain(format!("missing parameter {}", what)))
    };
    let t = params.t.clone().unwrap_or(ParamValue::Symbolic);
    match tag {
        FamilyTag::M1 => m1_base(need(params.n, "n")?),
        FamilyTag::M2 => m2_base(need(params.n, "n")?),
        FamilyTag::QuadricTube => quadric_tube_base(need(params.k, "k")?, need(params.n, "n")?),
        FamilyTag::Pt => pt_base(need(params.k, "k")?, need(params.n, "n")?, &t),
        FamilyTag::CalPt => calpt_base(need(params.k, "k")?, need(params.n, "n")?, &t),
        FamilyTag::FrakP => frakp_base(need(params.n, "n")?, params.p.unwrap_or(0), &t),
        FamilyTag::St => st_base(&t),
        FamilyTag::GenHyper => genhyper_symbolic(),
        FamilyTag::Derived => Err(GeometryError::ParameterOutOfDomain(
            "Derived is not an instantiable catalog family".into(),
        )),
    }
}
