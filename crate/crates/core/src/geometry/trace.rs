//! The trace-free cubic test: contraction of the symmetrized cubic
//! coefficient tensor against the inverse of the quadratic part.

use num_bigint::BigInt;

use crate::arith::{RatFunc, Rational};
use crate::linalg::Matrix;
use crate::tower::TowerElement;

use super::{GeometryError, TubeBase};

/// Computes `v_i = Σ_{j,k} (Q2^{-1})_{jk} C_{ijk}` where `Q2` is the
/// quadratic part of the defining polynomial and `C` its fully symmetrized
/// cubic coefficient tensor. The zero vector certifies trace-freeness.
pub fn cubic_trace(base: &TubeBase) -> Result<Vec<TowerElement>, GeometryError> {
    let n = base.n();
    let f = base.defining();
    let tower = f.tower();
    let vars: Vec<usize> = (1..=n).collect();
    let q2 = f.homogeneous_component_in(2, &vars);
    let mut s = Matrix::zero(tower, n, n);
    let half = RatFunc::new(
        crate::arith::UniPoly::one(),
        crate::arith::UniPoly::from_ints(&[2]),
    );
    for i in 1..=n {
        for j in i..=n {
            let mut exps = vec![0u16; n + 1];
            exps[i] += 1;
            exps[j] += 1;
            let coeff = q2.coeff(&exps);
            let entry = if i == j { coeff } else { coeff.scale(&half) };
            *s.at_mut(i - 1, j - 1) = entry.clone();
            *s.at_mut(j - 1, i - 1) = entry;
        }
    }
    if s.det().is_zero() {
        return Err(GeometryError::DegenerateQuadraticPart);
    }
    let s_inv = s.inverse().ok_or(GeometryError::DegenerateQuadraticPart)?;

    let f3 = f.homogeneous_component_in(3, &vars);
    // C_{ijk} = coeff(monomial) * (∏ α_v!) / 3! for the sorted index triple.
    let symmetrized = |i: usize, j: usize, k: usize| -> TowerElement {
        let mut exps = vec![0u16; n + 1];
        exps[i] += 1;
        exps[j] += 1;
        exps[k] += 1;
        let coeff = f3.coeff(&exps);
        if coeff.is_zero() {
            return coeff;
        }
        let mut perm_count = BigInt::from(6);
        for &e in &exps {
            for m in 1..=e as u64 {
                perm_count /= BigInt::from(m);
            }
        }
        coeff.scale(&RatFunc::from_rational(Rational::new(BigInt::from(1), perm_count)))
    };
    let mut trace = Vec::with_capacity(n);
    for i in 1..=n {
        let mut acc = TowerElement::zero(tower);
        for j in 1..=n {
            for k in 1..=n {
                let sjk = s_inv.at(j - 1, k - 1);
                if sjk.is_zero() {
                    continue;
                }
                let c = symmetrized(i, j, k);
                if c.is_zero() {
                    continue;
                }
                acc = &acc + &(sjk * &c);
            }
        }
        trace.push(acc);
    }
    Ok(trace)
}

/// Convenience: true iff every contraction component vanishes.
pub fn is_trace_free(base: &TubeBase) -> Result<bool, GeometryError> {
    Ok(cubic_trace(base)?.iter().all(TowerElement::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{
        calpt_base, frakp_base, m2_base, pt_base, st_base, FamilyTag, ParamValue, TubeBase,
    };
    use crate::poly::{MPoly, VariableSpace};
    use crate::tower::TowerSpec;

    #[test]
    fn st_family_is_trace_free_symbolically() {
        let base = st_base(&ParamValue::Symbolic).unwrap();
        assert!(is_trace_free(&base).unwrap());
    }

    #[test]
    fn pt_family_is_trace_free_symbolically() {
        let base = pt_base(5, 7, &ParamValue::Symbolic).unwrap();
        assert!(is_trace_free(&base).unwrap());
    }

    #[test]
    fn calpt_and_frakp_trace_free() {
        assert!(is_trace_free(&calpt_base(4, 7, &ParamValue::Symbolic).unwrap()).unwrap());
        assert!(is_trace_free(&frakp_base(7, 0, &ParamValue::Symbolic).unwrap()).unwrap());
    }

    #[test]
    fn m2_is_trace_free() {
        assert!(is_trace_free(&m2_base(4).unwrap()).unwrap());
    }

    #[test]
    fn sum_of_cubes_counterexample() {
        // F = x1^3 + x2^3 over Q2 = x1^2 + x2^2: trace (1, 1).
        let space = VariableSpace::tube(2);
        let tower = TowerSpec::rational();
        let x1 = MPoly::var_named(&space, &tower, "x1").unwrap();
        let x2 = MPoly::var_named(&space, &tower, "x2").unwrap();
        let f = &(&x1.pow(2) + &x2.pow(2)) + &(&x1.pow(3) + &x2.pow(3));
        let base = TubeBase::new(2, f, FamilyTag::GenHyper, Vec::new());
        let trace = cubic_trace(&base).unwrap();
        let one = TowerElement::one(&tower);
        assert_eq!(trace, vec![one.clone(), one]);
    }

    #[test]
    fn degenerate_quadratic_part_rejected() {
        let space = VariableSpace::tube(2);
        let tower = TowerSpec::rational();
        let x1 = MPoly::var_named(&space, &tower, "x1").unwrap();
        let f = &x1.pow(2) + &x1.pow(3);
        let base = TubeBase::new(2, f, FamilyTag::GenHyper, Vec::new());
        assert_eq!(cubic_trace(&base), Err(GeometryError::DegenerateQuadraticPart));
    }

    #[test]
    fn trace_transforms_as_a_covector() {
        // v(F ∘ C) = C^T v(F) for invertible linear C, exact over Q.
        use crate::arith::rat_int;
        use rand::{Rng, SeedableRng};
        use std::collections::BTreeMap;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let base = st_base(&ParamValue::Rational(rat_int(2))).unwrap();
        let n = base.n();
        let space = base.space().clone();
        let tower = base.tower().clone();
        for _ in 0..5 {
            // Random invertible matrix: unit triangular with ±1 diagonal.
            let mut c = Matrix::identity(&tower, n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(0.3) {
                        *c.at_mut(i, j) = TowerElement::from_int(&tower, rng.gen_range(-2..=2));
                    }
                }
            }
            if c.det().is_zero() {
                continue;
            }
            // F(Cx): substitute x_i -> Σ_j C_ij x_j.
            let mut bindings = BTreeMap::new();
            for i in 1..=n {
                let mut img = MPoly::zero(&space, &tower);
                for j in 1..=n {
                    let xj = MPoly::var(&space, &tower, j);
                    img = &img + &xj.scale(c.at(i - 1, j - 1));
                }
                bindings.insert(format!("x{}", i), img);
            }
            let fc = base.defining().substitute(&bindings).unwrap();
            let transformed = TubeBase::new(n, fc, FamilyTag::GenHyper, Vec::new());
            let v = cubic_trace(&base).unwrap();
            let vc = cubic_trace(&transformed).unwrap();
            let expected = c.transpose().mul_vec(&v);
            assert_eq!(vc, expected);
        }
    }
}
