//! Binary quartics and their classical invariants.

use std::sync::Arc;

use crate::arith::{rat_int, RatFunc, Rational, UniPoly};
use crate::geometry::cmp_silver_bound;
use crate::tower::{TowerElement, TowerSpec};

use super::InvariantsError;

/// `p4 ξ^4 + p3 ξ^3 η + p2 ξ^2 η^2 + p1 ξ η^3 + p0 η^4`, coefficients in a
/// shared tower; not identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryQuartic {
    coeffs: [TowerElement; 5],
}

/// The classical degree-2 and degree-3 invariants and the discriminant-like
/// combination `I^3 - 27 J^2` (vanishing iff a repeated projective root).
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticInvariants {
    pub i: TowerElement,
    pub j: TowerElement,
    pub disc: TowerElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    NonEquivalent { witness: String },
    Inconclusive,
}

impl BinaryQuartic {
    /// Coefficients listed from `p4` down to `p0`.
    pub fn new(coeffs: [TowerElement; 5]) -> Self {
        assert!(coeffs.iter().any(|c| !c.is_zero()), "zero quartic");
        BinaryQuartic { coeffs }
    }

    pub fn from_ratfuncs(spec: &Arc<TowerSpec>, coeffs: [RatFunc; 5]) -> Self {
        Self::new(coeffs.map(|c| TowerElement::from_ratfunc(spec, c)))
    }

    pub fn coeffs(&self) -> &[TowerElement; 5] {
        &self.coeffs
    }

    /// Linear substitution `ξ -> α ξ + β η`, `η -> γ ξ + δ η`.
    pub fn substitute_gl2(&self, m: &[[TowerElement; 2]; 2]) -> Self {
        let spec = self.coeffs[0].spec().clone();
        // Work in a tiny polynomial model: index by (power of ξ).
        let mul = |a: &[TowerElement], b: &[TowerElement]| -> Vec<TowerElement> {
            let mut out = vec![TowerElement::zero(&spec); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
            out
        };
        // New ξ and η as degree-1 forms in (ξ, η): [coeff of ξ, coeff of η].
        let xi = vec![m[0][0].clone(), m[0][1].clone()];
        let eta = vec![m[1][0].clone(), m[1][1].clone()];
        // Homogeneous degree-4 expansion: coefficients on ξ^(4-i) η^i.
        let mut acc = vec![TowerElement::zero(&spec); 5];
        for (idx, c) in self.coeffs.iter().enumerate() {
            // term = c * xi^(4-idx) * eta^idx
            let mut term = vec![TowerElement::one(&spec)];
            for _ in 0..(4 - idx) {
                term = mul(&term, &xi);
            }
            for _ in 0..idx {
                term = mul(&term, &eta);
            }
            for (pos, v) in term.iter().enumerate() {
                acc[pos] = &acc[pos] + &(v * c);
            }
        }
        // acc[i] multiplies ξ^(4-i) η^i which matches the storage order.
        BinaryQuartic::new([
            acc[0].clone(),
            acc[1].clone(),
            acc[2].clone(),
            acc[3].clone(),
            acc[4].clone(),
        ])
    }
}

/// With the normalization `a = p4, b = p3/4, c = p2/6, d = p1/4, e = p0`:
/// `I = ae - 4bd + 3c^2`, `J = ace + 2bcd - ad^2 - b^2 e - c^3`; the
/// invariant values depend on these divisors, fixed here once.
pub fn quartic_invariants(f: &BinaryQuartic) -> QuarticInvariants {
    let quarter = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[4]));
    let sixth = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[6]));
    let a = f.coeffs[0].clone();
    let b = f.coeffs[1].scale(&quarter);
    let c = f.coeffs[2].scale(&sixth);
    let d = f.coeffs[3].scale(&quarter);
    let e = f.coeffs[4].clone();
    let i = &(&(&a * &e) - &(&b * &d).scale(&RatFunc::from_int(4))) + &(&c * &c).scale(&RatFunc::from_int(3));
    let j = &(&(&(&(&a * &c) * &e) + &(&(&b * &c) * &d).scale(&RatFunc::from_int(2))) - &(&a * &(&d * &d)))
        - &(&(&(&b * &b) * &e) + &(&c * &(&c * &c)));
    let disc = &i.pow(3) - &j.pow(2).scale(&RatFunc::from_int(27));
    QuarticInvariants { i, j, disc }
}

/// The quartic `q_t(ξ,η) = (ξ^2+η^2)(ξ^2+tη^2)` with coefficients in ℚ(t)
/// (`t` symbolic) or ℚ (bound).
pub fn qt_quartic(t: &RatFunc) -> BinaryQuartic {
    let spec = TowerSpec::rational();
    BinaryQuartic::from_ratfuncs(
        &spec,
        [
            RatFunc::one(),
            RatFunc::zero(),
            &RatFunc::one() + t,
            RatFunc::zero(),
            t.clone(),
        ],
    )
}

/// GL₂(ℝ)-separation of `q_{t1}` and `q_{t2}` by the invariants: a
/// repeated-root-count mismatch (discriminant pattern) or distinct absolute
/// invariants `I^3/J^2` certify non-equivalence; agreement is inconclusive.
pub fn gl2r_separate(t1: &Rational, t2: &Rational) -> Result<Separation, InvariantsError> {
    for t in [t1, t2] {
        if *t < rat_int(1) || cmp_silver_bound(t) == std::cmp::Ordering::Greater {
            return Err(InvariantsError::OutOfRange(format!(
                "q_t separation domain is [1, 17+12*sqrt(2)], got {}",
                t
            )));
        }
    }
    if t1 == t2 {
        return Ok(Separation::Inconclusive);
    }
    let inv = |t: &Rational| {
        quartic_invariants(&qt_quartic(&RatFunc::from_rational(t.clone())))
    };
    let a = inv(t1);
    let b = inv(t2);
    match (a.disc.is_zero(), b.disc.is_zero()) {
        (true, false) | (false, true) => {
            return Ok(Separation::NonEquivalent {
                witness: "discriminant pattern: repeated-root counts differ".into(),
            })
        }
        (true, true) => return Ok(Separation::Inconclusive),
        (false, false) => {}
    }
    if a.j.is_zero() || b.j.is_zero() {
        return Ok(Separation::Inconclusive);
    }
    // I1^3 J2^2 != I2^3 J1^2 <=> the absolute invariants differ.
    let lhs = &a.i.pow(3) * &b.j.pow(2);
    let rhs = &b.i.pow(3) * &a.j.pow(2);
    if lhs != rhs {
        Ok(Separation::NonEquivalent { witness: "absolute invariants I^3/J^2 differ".into() })
    } else {
        Ok(Separation::Inconclusive)
    }
}

/// The zero locus of `q_t`: the projective points `{±i, ±i√t}`, with
/// multiplicity two each when `t = 1`.
pub fn quartic_root_lines(t: &Rational) -> Result<Vec<(TowerElement, TowerElement)>, InvariantsError> {
    if *t < Rational::from_integer(0.into()) {
        return Err(InvariantsError::NegativeParameter);
    }
    let t_rf = RatFunc::from_rational(t.clone());
    let spec = TowerSpec::builder().sqrt(t_rf.clone()).imaginary().build()?;
    let i = TowerElement::imaginary(&spec)?;
    let sqrt_t = TowerElement::sqrt_of(&spec, &t_rf)?;
    let one = TowerElement::one(&spec);
    let i_sqrt_t = &i * &sqrt_t;
    Ok(vec![
        (i.clone(), one.clone()),
        (-&i, one.clone()),
        (i_sqrt_t.clone(), one.clone()),
        (-&i_sqrt_t, one),
    ])
}

/// The unordered j-invariant of four distinct points of the projective
/// line: `256 (λ^2-λ+1)^3 / (λ^2 (λ-1)^2)` for the cross-ratio `λ`,
/// invariant under all 24 orderings.
pub fn cross_ratio_j(points: &[(TowerElement, TowerElement); 4]) -> Result<TowerElement, InvariantsError> {
    let spec = points[0].0.spec().clone();
    let det = |p: &(TowerElement, TowerElement), q: &(TowerElement, TowerElement)| -> TowerElement {
        &(&p.0 * &q.1) - &(&q.0 * &p.1)
    };
    for a in 0..4 {
        for b in a + 1..4 {
            if det(&points[a], &points[b]).is_zero() {
                return Err(InvariantsError::CoincidentPoints);
            }
        }
    }
    let d13 = det(&points[0], &points[2]);
    let d24 = det(&points[1], &points[3]);
    let d23 = det(&points[1], &points[2]);
    let d14 = det(&points[0], &points[3]);
    let lambda = &(&d13 * &d24) * &(&d23 * &d14).inv()?;
    let one = TowerElement::one(&spec);
    let num = (&(&lambda.pow(2) - &lambda) + &one).pow(3).scale(&RatFunc::from_int(256));
    let den = &lambda.pow(2) * &(&lambda - &one).pow(2);
    Ok(&num * &den.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rational_quartic(coeffs: [i64; 5]) -> BinaryQuartic {
        let spec = TowerSpec::rational();
        BinaryQuartic::from_ratfuncs(&spec, coeffs.map(RatFunc::from_int))
    }

    #[test]
    fn squared_circle_invariants() {
        // q_1 = (ξ^2+η^2)^2 = ξ^4 + 2ξ^2η^2 + η^4: I = 4/3, J = 8/27, disc 0.
        let q1 = rational_quartic([1, 0, 2, 0, 1]);
        let inv = quartic_invariants(&q1);
        assert_eq!(inv.i.as_rational().unwrap(), rat(4, 3));
        assert_eq!(inv.j.as_rational().unwrap(), rat(8, 27));
        assert!(inv.disc.is_zero());
    }

    #[test]
    fn repeated_root_at_zero() {
        // ξ^2 (ξ^2 + η^2) has disc = 0.
        let q = rational_quartic([1, 0, 1, 0, 0]);
        assert!(quartic_invariants(&q).disc.is_zero());
    }

    #[test]
    fn symbolic_qt_invariants() {
        // I = t + (1+t)^2/12 and J = t(1+t)/6 - (1+t)^3/216 in Q(t).
        let inv = quartic_invariants(&qt_quartic(&RatFunc::var()));
        let t = RatFunc::var();
        let one_plus_t = &RatFunc::one() + &t;
        let twelve = RatFunc::from_int(12);
        let expected_i = &t + &(&one_plus_t * &one_plus_t).checked_div(&twelve).unwrap();
        assert_eq!(inv.i.as_ratfunc().unwrap(), expected_i);
        let expected_j = &(&t * &one_plus_t).checked_div(&RatFunc::from_int(6)).unwrap()
            - &one_plus_t.pow(3).checked_div(&RatFunc::from_int(216)).unwrap();
        assert_eq!(inv.j.as_ratfunc().unwrap(), expected_j);
        // Spot-check against the t = 1 values above.
        assert_eq!(expected_i.eval(&rat_int(1)).unwrap(), rat(4, 3));
        assert_eq!(expected_j.eval(&rat_int(1)).unwrap(), rat(8, 27));
    }

    #[test]
    fn separation_examples() {
        // (1, 2): disc(q_1) = 0, disc(q_2) != 0.
        match gl2r_separate(&rat_int(1), &rat_int(2)).unwrap() {
            Separation::NonEquivalent { witness } => assert!(witness.contains("discriminant")),
            other => panic!("expected disc-pattern separation, got {:?}", other),
        }
        // Same parameter: inconclusive.
        assert_eq!(gl2r_separate(&rat_int(3), &rat_int(3)).unwrap(), Separation::Inconclusive);
        // (2, 3): absolute invariants 1331/49 vs 59319/2116.
        match gl2r_separate(&rat_int(2), &rat_int(3)).unwrap() {
            Separation::NonEquivalent { witness } => assert!(witness.contains("absolute")),
            other => panic!("expected invariant separation, got {:?}", other),
        }
        assert!(gl2r_separate(&rat_int(0), &rat_int(2)).is_err());
    }

    #[test]
    fn exact_absolute_invariants_frozen() {
        // Frozen exact values at t = 2 and t = 3.
        let inv2 = quartic_invariants(&qt_quartic(&RatFunc::from_int(2)));
        let ratio2 = &inv2.i.pow(3) * &inv2.j.pow(2).inv().unwrap();
        assert_eq!(ratio2.as_rational().unwrap(), rat(1331, 49));
        let inv3 = quartic_invariants(&qt_quartic(&RatFunc::from_int(3)));
        let ratio3 = &inv3.i.pow(3) * &inv3.j.pow(2).inv().unwrap();
        assert_eq!(ratio3.as_rational().unwrap(), rat(59319, 2116));
    }

    #[test]
    fn root_lines_satisfy_the_quartic() {
        // t = 4: {±i, ±2i}.
        let roots = quartic_root_lines(&rat_int(4)).unwrap();
        let spec = roots[0].0.spec().clone();
        let q = BinaryQuartic::from_ratfuncs(
            &spec,
            [
                RatFunc::one(),
                RatFunc::zero(),
                RatFunc::from_int(5),
                RatFunc::zero(),
                RatFunc::from_int(4),
            ],
        );
        for (xi, eta) in &roots {
            // Evaluate p4 ξ^4 + ... + p0 η^4.
            let mut acc = TowerElement::zero(&spec);
            for (idx, c) in q.coeffs().iter().enumerate() {
                let v = &xi.pow(4 - idx) * &eta.pow(idx);
                acc = &acc + &(c * &v);
            }
            assert!(acc.is_zero());
        }
        // t = 2 exercises a genuine radical root.
        let roots = quartic_root_lines(&rat_int(2)).unwrap();
        assert_eq!(roots.len(), 4);
        let spec2 = roots[0].0.spec().clone();
        for (xi, eta) in &roots {
            let sq = xi.pow(2);
            let e2 = eta.pow(2);
            let v = &(&sq + &e2) * &(&sq + &e2.scale(&RatFunc::from_int(2)));
            assert!(v.is_zero());
        }
        assert_eq!(spec2.generators().len(), 1);
        // t = 1: coincident pairs.
        let roots = quartic_root_lines(&rat_int(1)).unwrap();
        assert_eq!(roots[0], roots[2]);
        assert_eq!(roots[1], roots[3]);
        assert!(quartic_root_lines(&rat_int(-1)).is_err());
    }

    #[test]
    fn cross_ratio_classical_values() {
        let spec = TowerSpec::rational();
        let pt = |n: i64| (TowerElement::from_int(&spec, n), TowerElement::one(&spec));
        // Harmonic quadruple {0, ∞-substitute large?}: use (0, 1, -1, ∞) via
        // explicit projective coordinates: ∞ = (1, 0).
        let infty = (TowerElement::one(&spec), TowerElement::zero(&spec));
        let points = [pt(1), pt(-1), pt(0), infty];
        let j4 = cross_ratio_j(&points).unwrap();
        assert_eq!(j4.as_rational().unwrap(), rat_int(1728));
        // Coincident points rejected.
        let bad = [pt(1), pt(1), pt(0), pt(2)];
        assert_eq!(cross_ratio_j(&bad).unwrap_err(), InvariantsError::CoincidentPoints);
    }

    #[test]
    fn cross_ratio_invariant_under_all_orderings() {
        let spec = TowerSpec::rational();
        let pt = |n: i64, d: i64| {
            (
                TowerElement::from_rational(&spec, rat(n, d)),
                TowerElement::one(&spec),
            )
        };
        let pts = [pt(0, 1), pt(1, 1), pt(3, 2), pt(-7, 3)];
        let reference = cross_ratio_j(&pts).unwrap();
        // All 24 permutations.
        let mut idx = [0usize, 1, 2, 3];
        let mut count = 0;
        permute(&mut idx, 0, &mut |perm| {
            let arranged = [
                pts[perm[0]].clone(),
                pts[perm[1]].clone(),
                pts[perm[2]].clone(),
                pts[perm[3]].clone(),
            ];
            assert_eq!(cross_ratio_j(&arranged).unwrap(), reference);
            count += 1;
        });
        assert_eq!(count, 24);
    }

    fn permute(items: &mut [usize; 4], k: usize, f: &mut impl FnMut(&[usize; 4])) {
        if k == 4 {
            f(items);
            return;
        }
        for i in k..4 {
            items.swap(k, i);
            permute(items, k + 1, f);
            items.swap(k, i);
        }
    }

    #[test]
    fn equianharmonic_quadruple_has_j_zero() {
        // λ with λ^2 - λ + 1 = 0, i.e. λ = (1 + i√3)/2: j4 = 0.
        let three = RatFunc::from_int(3);
        let spec = TowerSpec::builder().sqrt(three.clone()).imaginary().build().unwrap();
        let i = TowerElement::imaginary(&spec).unwrap();
        let sqrt3 = TowerElement::sqrt_of(&spec, &three).unwrap();
        let half = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2]));
        let lambda = (&TowerElement::one(&spec) + &(&i * &sqrt3)).scale(&half);
        let one = TowerElement::one(&spec);
        let zero = TowerElement::zero(&spec);
        let points = [
            (zero.clone(), one.clone()),
            (one.clone(), one.clone()),
            (lambda, one.clone()),
            (one.clone(), zero),
        ];
        let j4 = cross_ratio_j(&points).unwrap();
        assert!(j4.is_zero());
    }

    #[test]
    fn disc_vanishes_iff_root_multiset_repeats() {
        // For the catalog quartics the discriminant-like combination is zero
        // exactly when the root multiset has a repeated element.
        for t in [1i64, 2, 4, 9] {
            let inv = quartic_invariants(&qt_quartic(&RatFunc::from_int(t)));
            let roots = quartic_root_lines(&rat_int(t)).unwrap();
            let mut repeated = false;
            for a in 0..4 {
                for b in a + 1..4 {
                    let d = &(&roots[a].0 * &roots[b].1) - &(&roots[b].0 * &roots[a].1);
                    if d.is_zero() {
                        repeated = true;
                    }
                }
            }
            assert_eq!(inv.disc.is_zero(), repeated, "at t = {}", t);
        }
    }

    #[test]
    fn roots_of_q4_cross_ratio() {
        // λ = 1/9 for {i, -i, 2i, -2i}: j4 = 1556068/81, order-independent.
        let roots = quartic_root_lines(&rat_int(4)).unwrap();
        let pts: [(TowerElement, TowerElement); 4] =
            [roots[0].clone(), roots[1].clone(), roots[2].clone(), roots[3].clone()];
        let j4 = cross_ratio_j(&pts).unwrap();
        assert_eq!(j4.as_rational().unwrap(), rat(1556068, 81));
        let reordered = [roots[2].clone(), roots[0].clone(), roots[3].clone(), roots[1].clone()];
        assert_eq!(cross_ratio_j(&reordered).unwrap(), j4);
    }

    #[test]
    fn covariance_under_gl2() {
        // I scales by det^4 and J by det^6 under substitutions.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let spec = TowerSpec::rational();
        let q = qt_quartic(&RatFunc::from_rational(rat(5, 2)));
        let base = quartic_invariants(&q);
        for _ in 0..30 {
            let entries: [[i64; 2]; 2] = [
                [rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
                [rng.gen_range(-4..=4), rng.gen_range(-4..=4)],
            ];
            let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
            if det == 0 {
                continue;
            }
            let m = entries.map(|row| row.map(|v| TowerElement::from_int(&spec, v)));
            let transformed = quartic_invariants(&q.substitute_gl2(&m));
            let det_el = TowerElement::from_int(&spec, det);
            assert_eq!(transformed.i, &base.i * &det_el.pow(4));
            assert_eq!(transformed.j, &base.j * &det_el.pow(6));
            // The absolute invariant is untouched: I'^3 J^2 = I^3 J'^2.
            assert_eq!(&transformed.i.pow(3) * &base.j.pow(2), &base.i.pow(3) * &transformed.j.pow(2));
        }
    }
}
