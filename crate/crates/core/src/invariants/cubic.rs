//! The cubic family `c_t(u1,u2,u3) = u1^3 + u2^3 + u3^3 + t u1 u2 u3` and
//! its singular locus.

use std::sync::Arc;

use crate::arith::{rat_int, RatFunc, Rational};
use crate::poly::{MPoly, VariableSpace};
use crate::tower::{TowerElement, TowerSpec};

use super::InvariantsError;

/// A plane cubic as a polynomial in `w1, w2, w3`.
#[derive(Debug, Clone, PartialEq)]
pub struct TernaryCubic {
    poly: MPoly,
}

impl TernaryCubic {
    pub fn new(poly: MPoly) -> Self {
        assert!(!poly.is_zero(), "zero cubic");
        assert_eq!(poly.space().dim(), 3);
        TernaryCubic { poly }
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }
}

/// `c_t` over the given tower; `t` is the ℚ(t) parameter of the tower, so a
/// bound value is expressed by a constant rational function.
pub fn cubic_form(tower: &Arc<TowerSpec>, t: &RatFunc) -> TernaryCubic {
    let space = VariableSpace::ternary();
    let mut p = MPoly::zero(&space, tower);
    for j in 0..3 {
        let mut exps = vec![0u16; 3];
        exps[j] = 3;
        p.add_term(exps, TowerElement::one(tower));
    }
    p.add_term(vec![1, 1, 1], TowerElement::from_ratfunc(tower, t.clone()));
    TernaryCubic::new(p)
}

/// The singular points of `Z_t` in ℂP²: empty for `t != -3`; at `t = -3`
/// the orbit `(1 : q : q^2)` with `q^3 = 1`, returned exactly over the
/// tower ℚ(√3, i) (the primitive cube root is `(-1 + i√3)/2`).
pub fn cubic_singular_locus(t: &Rational) -> Result<Vec<[TowerElement; 3]>, InvariantsError> {
    // The gradient system forces (t^3 + 27)(u1 u2 u3)^2 = 0; away from
    // t = -3 the only common zero is the origin, which is not projective.
    if *t != rat_int(-3) {
        return Ok(Vec::new());
    }
    let three = RatFunc::from_int(3);
    let spec = TowerSpec::builder().sqrt(three.clone()).imaginary().build()?;
    let one = TowerElement::one(&spec);
    let i = TowerElement::imaginary(&spec)?;
    let sqrt3 = TowerElement::sqrt_of(&spec, &three)?;
    let half = RatFunc::new(crate::arith::UniPoly::one(), crate::arith::UniPoly::from_ints(&[2]));
    // omega = (-1 + i sqrt(3))/2, a primitive cube root of unity.
    let omega = (&(&i * &sqrt3) - &one).scale(&half);
    let omega2 = &omega * &omega;
    Ok(vec![
        [one.clone(), one.clone(), one.clone()],
        [one.clone(), omega.clone(), omega2.clone()],
        [one, omega2, omega],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn locus_empty_away_from_minus_three() {
        for t in [0i64, 1, 2, -5] {
            assert!(cubic_singular_locus(&rat_int(t)).unwrap().is_empty());
        }
    }

    #[test]
    fn singular_orbit_at_minus_three() {
        let points = cubic_singular_locus(&rat_int(-3)).unwrap();
        assert_eq!(points.len(), 3);
        let spec = points[0][0].spec().clone();
        let c = cubic_form(&spec, &RatFunc::from_int(-3));
        for p in &points {
            // c_{-3} and all three partial derivatives vanish.
            let value = c.poly().eval_tower(p.as_slice()).unwrap();
            assert!(value.is_zero());
            for var in 0..3 {
                let d = c.poly().partial_derivative(var);
                assert!(d.eval_tower(p.as_slice()).unwrap().is_zero());
            }
        }
        // The rational singular point (1:1:1) is present.
        let one = TowerElement::one(&spec);
        assert_eq!(points[0], [one.clone(), one.clone(), one]);
    }

    #[test]
    fn gradient_grid_oracle_for_nonsingular_values() {
        // Brute-force check on a small rational grid: for t in {0, 1} the
        // gradient does not vanish at any nonzero grid point.
        for t in [0i64, 1] {
            let spec = TowerSpec::rational();
            let c = cubic_form(&spec, &RatFunc::from_int(t));
            let grads: Vec<MPoly> = (0..3).map(|v| c.poly().partial_derivative(v)).collect();
            for a in -3i64..=3 {
                for b in -3i64..=3 {
                    for d in -3i64..=3 {
                        if a == 0 && b == 0 && d == 0 {
                            continue;
                        }
                        let point: Vec<TowerElement> = [a, b, d]
                            .iter()
                            .map(|&v| TowerElement::from_int(&spec, v))
                            .collect();
                        let all_zero = grads
                            .iter()
                            .all(|g| g.eval_tower(&point).unwrap().is_zero());
                        assert!(!all_zero, "unexpected singular point at t={}", t);
                    }
                }
            }
        }
    }
}
