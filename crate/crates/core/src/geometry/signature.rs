//! Hessians and exact inertia signatures by congruence diagonalization.

use crate::arith::Rational;
use crate::linalg::Matrix;
use crate::tower::{eval_to_real, RealRadical, Sign};

use super::{GeometryError, TubeBase};

/// Interval refinement budget for sign decisions; the exact-zero test runs
/// first, so this is only a guard against pathological near-zero values.
const SIGN_BITS: u32 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
    pub point: Vec<Rational>,
    pub param: Option<Rational>,
}

impl SignatureReport {
    pub fn pair(&self) -> (usize, usize) {
        (self.positives, self.negatives)
    }
}

/// Matrix of second partials of the defining polynomial at a rational base
/// point `(x1..xn)`, exact over the tower.
pub fn hessian(base: &TubeBase, point: &[Rational]) -> Result<Matrix, GeometryError> {
    let n = base.n();
    if point.len() != n {
        return Err(GeometryError::DimensionMismatch { expected: n, got: point.len() });
    }
    let f = base.defining();
    let mut full = Vec::with_capacity(n + 1);
    full.push(Rational::from_integer(0.into()));
    full.extend_from_slice(point);
    let mut h = Matrix::zero(f.tower(), n, n);
    for i in 1..=n {
        let fi = f.partial_derivative(i);
        for j in i..=n {
            let fij = fi.partial_derivative(j);
            let v = fij.eval_rational(&full)?;
            *h.at_mut(i - 1, j - 1) = v.clone();
            *h.at_mut(j - 1, i - 1) = v;
        }
    }
    Ok(h)
}

/// Inertia of a symmetric matrix over the tower, decided exactly. Entries
/// are evaluated at `t0` when they depend on the parameter; pure rational
/// matrices need no parameter value.
pub fn signature(m: &Matrix, t0: Option<&Rational>) -> Result<SignatureReport, GeometryError> {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let n = m.rows();
    let zero_t = Rational::from_integer(0.into());
    let at = |r: usize, c: usize| -> Result<RealRadical, GeometryError> {
        let entry = m.at(r, c);
        match t0 {
            Some(v) => Ok(eval_to_real(entry, v)?),
            None => match entry.as_ratfunc().and_then(|rf| rf.as_rational()) {
                Some(q) => Ok(RealRadical::from_rational(q)),
                None => {
                    if entry.as_ratfunc().is_some() {
                        Err(GeometryError::ParameterRequired)
                    } else {
                        // Radical entries are still constants in t-free
                        // towers; evaluate at an arbitrary point.
                        Ok(eval_to_real(entry, &zero_t)?)
                    }
                }
            },
        }
    };
    let mut a: Vec<Vec<RealRadical>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            row.push(at(r, c)?);
        }
        a.push(row);
    }

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut positives = 0usize;
    let mut negatives = 0usize;
    let mut zeros = 0usize;
    while !remaining.is_empty() {
        // Prefer a nonzero diagonal pivot.
        let pivot = remaining.iter().copied().find(|&i| !a[i][i].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish: fold a hyperbolic
                // pair via the congruence x_i -> x_i + x_j, which makes the
                // (i,i) entry 2 a_ij != 0; if the block is entirely zero we
                // are done.
                let off = remaining
                    .iter()
                    .enumerate()
                    .flat_map(|(pi, &i)| remaining[pi + 1..].iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero());
                match off {
                    None => {
                        zeros += remaining.len();
                        break;
                    }
                    Some((i, j)) => {
                        for &c in &remaining {
                            let v = a[i][c].add(&a[j][c]);
                            a[i][c] = v;
                        }
                        for &r in &remaining {
                            let v = a[r][i].add(&a[r][j]);
                            a[r][i] = v;
                        }
                        i
                    }
                }
            }
        };
        let p = a[pivot][pivot].clone();
        let (sign, _) = p.sign(SIGN_BITS).map_err(GeometryError::Tower)?;
        match sign {
            Sign::Positive => positives += 1,
            Sign::Negative => negatives += 1,
            Sign::Zero => unreachable!("pivot checked nonzero"),
        }
        remaining.retain(|&i| i != pivot);
        // Congruence clearing without division: row_r := p*row_r - f*row_p,
        // same on columns; scaling by the nonzero pivot preserves inertia.
        for &r in remaining.clone().iter() {
            let f = a[r][pivot].clone();
            if f.is_zero() {
                continue;
            }
            for &c in remaining.iter().chain(std::iter::once(&pivot)) {
                let v = p.mul(&a[r][c]).sub(&f.mul(&a[pivot][c]));
                a[r][c] = v;
            }
            for &rr in remaining.iter() {
                let v = p.mul(&a[rr][r]).sub(&f.mul(&a[rr][pivot]));
                a[rr][r] = v;
            }
            // The (r, pivot) entries are now cleared by construction.
            a[r][pivot] = RealRadical::zero();
            a[pivot][r] = RealRadical::zero();
        }
    }
    Ok(SignatureReport {
        positives,
        negatives,
        zeros,
        point: Vec::new(),
        param: t0.cloned(),
    })
}

/// The Levi form of the tube graph `x0 = F(x)` at a point is represented by
/// the Hessian of `F` there; its signature is computed exactly.
pub fn levi_signature(
    base: &TubeBase,
    point: &[Rational],
    t0: Option<&Rational>,
) -> Result<SignatureReport, GeometryError> {
    let h = hessian(base, point)?;
    let mut report = signature(&h, t0)?;
    report.point = point.to_vec();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};
    use crate::geometry::{frakp_base, m1_base, st_base, ParamValue};
    use crate::tower::{TowerElement, TowerSpec};

    fn zeros(n: usize) -> Vec<Rational> {
        vec![Rational::from_integer(0.into()); n]
    }

    #[test]
    fn m1_hessian_is_constant_diagonal() {
        // The Hessian of a quadratic graph is point-independent: checked at
        // the origin and five random rational points.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let base = m1_base(4).unwrap();
        let mut points = vec![zeros(4)];
        for _ in 0..5 {
            points.push((0..4).map(|_| rat(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))).collect());
        }
        for point in points {
            let h = hessian(&base, &point).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let expected = if i != j { 0 } else if i < 3 { 2 } else { -2 };
                    assert_eq!(h.at(i, j).as_ratfunc().unwrap(), crate::arith::RatFunc::from_int(expected));
                }
            }
            let report = signature(&h, None).unwrap();
            assert_eq!((report.positives, report.negatives, report.zeros), (3, 1, 0));
        }
    }

    #[test]
    fn st_pairing_matrix_is_split() {
        // Hessian of x1x6 + x2x5 + x3x4 at the origin: three hyperbolic
        // planes, signature (3,3); exercises the all-zero-diagonal path.
        let base = st_base(&ParamValue::Symbolic).unwrap();
        let report = levi_signature(&base, &zeros(6), None).unwrap();
        assert_eq!((report.positives, report.negatives, report.zeros), (3, 3, 0));
    }

    #[test]
    fn frakp_hessian_matches_quadratic_part() {
        // tau = 1, origin: Hessian of
        // 4x1x7 + 4x2x6 - x3^2 + 2x4^2 - x5^2 + 4x3x5.
        let base = frakp_base(7, 0, &ParamValue::Rational(rat_int(1))).unwrap();
        let h = hessian(&base, &zeros(7)).unwrap();
        let expected = [
            (0, 6, 4),
            (1, 5, 4),
            (2, 2, -2),
            (3, 3, 4),
            (4, 4, -2),
            (2, 4, 4),
        ];
        let mut m = crate::linalg::Matrix::zero(base.tower(), 7, 7);
        for &(i, j, v) in &expected {
            *m.at_mut(i, j) = TowerElement::from_int(base.tower(), v);
            *m.at_mut(j, i) = TowerElement::from_int(base.tower(), v);
        }
        assert_eq!(h, m);
    }

    #[test]
    fn frakp_signatures_follow_tau_branches() {
        // (p+4, n-p-4) for tau in (-2,2); (p+5, n-5-p) for tau in [-6,-2).
        let base = frakp_base(7, 0, &ParamValue::Rational(rat_int(0))).unwrap();
        let report = levi_signature(&base, &zeros(7), None).unwrap();
        assert_eq!(report.pair(), (4, 3));
        assert_eq!(report.positives + report.negatives + report.zeros, 7);
        let base = frakp_base(7, 0, &ParamValue::Rational(rat_int(-3))).unwrap();
        let report = levi_signature(&base, &zeros(7), None).unwrap();
        assert_eq!(report.pair(), (5, 2));
        let base = frakp_base(8, 1, &ParamValue::Rational(rat_int(1))).unwrap();
        let report = levi_signature(&base, &zeros(8), None).unwrap();
        assert_eq!(report.pair(), (5, 3));
    }

    #[test]
    fn symbolic_entries_need_parameter() {
        let base = frakp_base(7, 0, &ParamValue::Symbolic).unwrap();
        let h = hessian(&base, &zeros(7)).unwrap();
        assert_eq!(signature(&h, None), Err(GeometryError::ParameterRequired));
        let report = signature(&h, Some(&rat_int(0))).unwrap();
        assert_eq!(report.pair(), (4, 3));
    }

    #[test]
    fn sylvester_stability_under_congruence() {
        // Signature invariant under A -> C^T A C for random invertible C.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let spec = TowerSpec::rational();
        let base = frakp_base(7, 0, &ParamValue::Rational(rat(3, 2))).unwrap();
        let a = hessian(&base, &zeros(7)).unwrap();
        let expected = signature(&a, None).unwrap().pair();
        for _ in 0..50 {
            // Random unit lower-triangular times unit upper-triangular with
            // a diagonal of ±1: always invertible.
            let mut c = crate::linalg::Matrix::identity(&spec, 7);
            for i in 0..7 {
                for j in 0..7 {
                    if i == j {
                        let d: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                        *c.at_mut(i, j) = TowerElement::from_int(&spec, d);
                    } else if rng.gen_bool(0.4) {
                        let v: i64 = rng.gen_range(-3..=3);
                        *c.at_mut(i, j) = TowerElement::from_int(&spec, v);
                    }
                }
            }
            if c.det().is_zero() {
                continue;
            }
            let congruent = c.transpose().mul(&a).mul(&c);
            let got = signature(&congruent, None).unwrap();
            assert_eq!(got.pair(), expected);
            assert_eq!(got.zeros, 0);
        }
    }

    #[test]
    fn pt_levi_signature_constant_with_radical_entries() {
        // Away from the origin the Hessian of P_t picks up radical entries;
        // the inertia must still be (k, n-k) everywhere on the base.
        use crate::geometry::{calpt_base, pt_base};
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let pt = pt_base(5, 7, &ParamValue::Rational(rat_int(2))).unwrap();
        let calpt = calpt_base(4, 7, &ParamValue::Rational(rat_int(34))).unwrap();
        for (base, expected) in [(&pt, (5, 2)), (&calpt, (4, 3))] {
            for _ in 0..3 {
                let point: Vec<Rational> =
                    (0..7).map(|_| rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2))).collect();
                let report = levi_signature(base, &point, None).unwrap();
                assert_eq!(report.pair(), expected);
                assert_eq!(report.zeros, 0);
            }
        }
    }

    #[test]
    fn radical_entries_signed_exactly() {
        // diag(sqrt(3t) - 3, 1) at t = 2: sqrt(6) - 3 < 0.
        let rf3t = crate::arith::RatFunc::from_poly(crate::arith::UniPoly::from_ints(&[0, 3]));
        let tower = TowerSpec::builder().sqrt(rf3t.clone()).build().unwrap();
        let s = TowerElement::sqrt_of(&tower, &rf3t).unwrap();
        let mut m = crate::linalg::Matrix::zero(&tower, 2, 2);
        *m.at_mut(0, 0) = &s - &TowerElement::from_int(&tower, 3);
        *m.at_mut(1, 1) = TowerElement::one(&tower);
        let report = signature(&m, Some(&rat_int(2))).unwrap();
        assert_eq!((report.positives, report.negatives), (1, 1));
        // At t = 3: sqrt(9) - 3 = 0 exactly.
        let report = signature(&m, Some(&rat_int(3))).unwrap();
        assert_eq!((report.positives, report.negatives, report.zeros), (1, 0, 1));
    }
}
