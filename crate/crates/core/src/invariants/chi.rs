//! The reparametrization `χ: t -> -12√t/(t+1)`, a bijection from
//! `[1, 17+12√2)` onto `[-6, -2)` and from `(17+12√2, ∞)` onto `(-2, 0)`.

use crate::arith::{rat_int, RatFunc, Rational};
use crate::tower::{eval_to_real, Sign, TowerElement, TowerSpec};

use super::InvariantsError;

/// Which interval of the bijection pair an inverse value lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `t ∈ [1, 17+12√2)`, `τ ∈ [-6, -2)`.
    Lower,
    /// `t ∈ (17+12√2, ∞)`, `τ ∈ (-2, 0)`.
    Upper,
}

/// χ expressed through a square-root witness: `χ(u^2) = -12u/(u^2+1)`.
pub fn chi_of_sqrt(u: &TowerElement) -> Result<TowerElement, InvariantsError> {
    let spec = u.spec().clone();
    let den = &u.pow(2) + &TowerElement::one(&spec);
    Ok(&u.scale(&RatFunc::from_int(-12)) * &den.inv()?)
}

/// χ at a rational parameter `t >= 1`, exact in the tower ℚ(√t).
pub fn chi(t: &Rational) -> Result<TowerElement, InvariantsError> {
    if *t < rat_int(1) {
        return Err(InvariantsError::OutOfRange(format!("chi needs t >= 1, got {}", t)));
    }
    let t_rf = RatFunc::from_rational(t.clone());
    let spec = TowerSpec::builder().sqrt(t_rf.clone()).build()?;
    let u = TowerElement::sqrt_of(&spec, &t_rf)?;
    chi_of_sqrt(&u)
}

/// χ at the right endpoint `t = 17 + 12√2`, where `√t = 3 + 2√2` collapses
/// the nested radical; the exact value is -2.
pub fn chi_at_silver_point() -> Result<TowerElement, InvariantsError> {
    let two = RatFunc::from_int(2);
    let spec = TowerSpec::builder().sqrt(two.clone()).build()?;
    let sqrt2 = TowerElement::sqrt_of(&spec, &two)?;
    let u = &TowerElement::from_int(&spec, 3) + &sqrt2.scale(&RatFunc::from_int(2));
    // u^2 = 17 + 12√2 by construction.
    let t = u.pow(2);
    let expected = &TowerElement::from_int(&spec, 17) + &sqrt2.scale(&RatFunc::from_int(12));
    debug_assert_eq!(t, expected);
    chi_of_sqrt(&u)
}

/// Solves `12√t = -τ(t+1)` on the requested branch, returning the
/// parameter `t` and its square-root witness `u = √t`, both exact in the
/// tower ℚ(√(36-τ²)).
pub fn chi_inverse(tau: &Rational, branch: Branch) -> Result<(TowerElement, TowerElement), InvariantsError> {
    let in_range = match branch {
        Branch::Lower => *tau >= rat_int(-6) && *tau < rat_int(-2),
        Branch::Upper => *tau > rat_int(-2) && *tau < rat_int(0),
    };
    if !in_range {
        return Err(InvariantsError::OutOfRange(format!(
            "tau = {} outside the {:?} branch interval",
            tau, branch
        )));
    }
    // u = (6 + sqrt(36 - tau^2)) / (-tau) is the root with u >= 1.
    let disc = rat_int(36) - tau * tau;
    let disc_rf = RatFunc::from_rational(disc.clone());
    let (spec, r) = if disc == rat_int(0) {
        let spec = TowerSpec::rational();
        let zero = TowerElement::zero(&spec);
        (spec, zero)
    } else {
        let spec = TowerSpec::builder().sqrt(disc_rf.clone()).build()?;
        let r = TowerElement::sqrt_of(&spec, &disc_rf)?;
        (spec, r)
    };
    let six_plus_r = &TowerElement::from_int(&spec, 6) + &r;
    let u = six_plus_r.scale(&RatFunc::from_rational(-(Rational::from_integer(1.into()) / tau)));
    let t = u.pow(2);
    Ok((t, u))
}

/// Exact strict-increase scan of χ over a rational sample grid with
/// `t >= 1`: adjacent values are compared in the shared constant-radical
/// algebra.
pub fn chi_strictly_increasing(samples: &[Rational]) -> Result<bool, InvariantsError> {
    let anywhere = rat_int(0);
    let mut prev: Option<crate::tower::RealRadical> = None;
    for t in samples {
        let value = chi(t)?;
        let real = eval_to_real(&value, &anywhere)?;
        if let Some(p) = prev {
            let diff = real.sub(&p);
            let (sign, _) = diff.sign(1 << 12)?;
            if sign != Sign::Positive {
                return Ok(false);
            }
        }
        prev = Some(real);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn endpoint_values() {
        // χ(1) = -6 exactly.
        let v = chi(&rat_int(1)).unwrap();
        assert_eq!(v.as_rational().unwrap(), rat_int(-6));
        // χ(17+12√2) = -2 exactly in the tower.
        let v = chi_at_silver_point().unwrap();
        assert_eq!(v.as_rational().unwrap(), rat_int(-2));
        assert!(chi(&rat_int(0)).is_err());
    }

    #[test]
    fn perfect_square_parameter_stays_rational() {
        // χ(4) = -24/5.
        let v = chi(&rat_int(4)).unwrap();
        assert_eq!(v.as_rational().unwrap(), rat(-24, 5));
    }

    #[test]
    fn inverse_round_trips_on_both_branches() {
        let grid_lower: Vec<Rational> = [(-6, 1), (-11, 2), (-5, 1), (-9, 2), (-3, 1), (-5, 2), (-21, 10)]
            .iter()
            .map(|&(n, d)| rat(n, d))
            .collect();
        for tau in &grid_lower {
            let (t, u) = chi_inverse(tau, Branch::Lower).unwrap();
            assert_eq!(&u * &u, t);
            let back = chi_of_sqrt(&u).unwrap();
            assert_eq!(back.as_rational().unwrap(), tau.clone());
        }
        let grid_upper: Vec<Rational> =
            [(-19, 10), (-3, 2), (-1, 1), (-1, 2), (-1, 10)].iter().map(|&(n, d)| rat(n, d)).collect();
        for tau in &grid_upper {
            let (t, u) = chi_inverse(tau, Branch::Upper).unwrap();
            assert_eq!(&u * &u, t);
            let back = chi_of_sqrt(&u).unwrap();
            assert_eq!(back.as_rational().unwrap(), tau.clone());
        }
    }

    #[test]
    fn inverse_first_example() {
        // chi_inverse(-6, lower) = 1.
        let (t, u) = chi_inverse(&rat_int(-6), Branch::Lower).unwrap();
        assert_eq!(t.as_rational().unwrap(), rat_int(1));
        assert_eq!(u.as_rational().unwrap(), rat_int(1));
    }

    #[test]
    fn branch_ranges_enforced() {
        assert!(chi_inverse(&rat_int(-7), Branch::Lower).is_err());
        assert!(chi_inverse(&rat_int(-1), Branch::Lower).is_err());
        assert!(chi_inverse(&rat_int(-3), Branch::Upper).is_err());
        assert!(chi_inverse(&rat_int(0), Branch::Upper).is_err());
    }

    #[test]
    fn monotone_scan_small_grid() {
        let samples: Vec<Rational> = (0..25).map(|i| rat_int(1) + rat(2 * i, 1)).collect();
        assert!(chi_strictly_increasing(&samples).unwrap());
        // Going downward fails immediately.
        let reversed: Vec<Rational> = samples.iter().rev().cloned().collect();
        assert!(!chi_strictly_increasing(&reversed).unwrap());
    }
}
