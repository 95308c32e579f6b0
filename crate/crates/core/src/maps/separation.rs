//! Graded separation of affinely homogeneous bases: under the trace-free
//! reduction, a linear equivalence preserves the grading, so differing
//! graded pieces certify affine non-equivalence; degree-4 binary quartics
//! delegate to the classical invariants.

use crate::arith::RatFunc;
use crate::geometry::{cubic_trace, TubeBase};
use crate::invariants::{quartic_invariants, BinaryQuartic, Separation};
use crate::poly::MPoly;
use crate::tower::{TowerElement, TowerSpec};

use super::MapsError;

/// Extracts a binary quartic from a degree-4 part supported on exactly two
/// variables; coefficients must be radical-free (ℚ(t)-valued) so the two
/// bases can be compared in a common field.
fn as_binary_quartic(p: &MPoly) -> Option<(BinaryQuartic, usize, usize)> {
    let support = p.support();
    if support.len() != 2 {
        return None;
    }
    let (u, v) = (support[0], support[1]);
    let spec = TowerSpec::rational();
    let mut coeffs: [RatFunc; 5] = std::array::from_fn(|_| RatFunc::zero());
    for (exps, c) in p.terms() {
        let eu = exps[u] as usize;
        let ev = exps[v] as usize;
        if eu + ev != 4 {
            return None;
        }
        coeffs[4 - eu] = c.as_ratfunc()?;
    }
    Some((
        BinaryQuartic::new(coeffs.map(|c| TowerElement::from_ratfunc(&spec, c))),
        u,
        v,
    ))
}

/// Compares graded pieces of two trace-free bases: a degree at which
/// exactly one side vanishes is a witness of non-equivalence; two binary
/// quartic degree-4 parts are separated by the classical invariants.
pub fn graded_separation(base1: &TubeBase, base2: &TubeBase) -> Result<Separation, MapsError> {
    if base1.n() != base2.n() {
        return Err(MapsError::DimensionMismatch { expected: base1.n(), got: base2.n() });
    }
    for (which, base) in [(1usize, base1), (2usize, base2)] {
        let trace = cubic_trace(base)?;
        if trace.iter().any(|v| !v.is_zero()) {
            return Err(MapsError::PreconditionViolated(format!(
                "base {} has a nonzero cubic trace",
                which
            )));
        }
    }
    let vars: Vec<usize> = (1..=base1.n()).collect();
    let d1 = base1.defining().total_degree().unwrap_or(0);
    let d2 = base2.defining().total_degree().unwrap_or(0);
    for d in 3..=d1.max(d2) {
        let p1 = base1.defining().homogeneous_component_in(d, &vars);
        let p2 = base2.defining().homogeneous_component_in(d, &vars);
        if p1.is_zero() != p2.is_zero() {
            return Ok(Separation::NonEquivalent {
                witness: format!("degree-{} graded part vanishes for exactly one base", d),
            });
        }
    }
    let q1 = base1.defining().homogeneous_component_in(4, &vars);
    let q2 = base2.defining().homogeneous_component_in(4, &vars);
    if q1.is_zero() || q2.is_zero() {
        return Ok(Separation::Inconclusive);
    }
    let (Some((f1, _, _)), Some((f2, _, _))) = (as_binary_quartic(&q1), as_binary_quartic(&q2))
    else {
        return Ok(Separation::Inconclusive);
    };
    let a = quartic_invariants(&f1);
    let b = quartic_invariants(&f2);
    match (a.disc.is_zero(), b.disc.is_zero()) {
        (true, false) | (false, true) => {
            return Ok(Separation::NonEquivalent {
                witness: "degree-4 discriminant pattern: repeated-root counts differ".into(),
            })
        }
        (true, true) => return Ok(Separation::Inconclusive),
        (false, false) => {}
    }
    if a.j.is_zero() || b.j.is_zero() {
        return Ok(Separation::Inconclusive);
    }
    if &a.i.pow(3) * &b.j.pow(2) != &b.i.pow(3) * &a.j.pow(2) {
        return Ok(Separation::NonEquivalent {
            witness: "degree-4 absolute invariants I^3/J^2 differ".into(),
        });
    }
    Ok(Separation::Inconclusive)
}
