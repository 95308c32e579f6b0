//! Graph-preserving affine maps `x0 -> λ x0 + ℓ(x) + μ`, `x -> C x + b` and
//! their action on tube graphs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::geometry::{FamilyTag, TubeBase};
use crate::linalg::Matrix;
use crate::poly::MPoly;
use crate::tower::{TowerElement, TowerSpec};

use super::MapsError;

#[derive(Debug, Clone, PartialEq)]
pub struct AffineGraphMap {
    pub lambda: TowerElement,
    /// Coefficients of the linear form on `x1..xn` added to `x0`.
    pub ell: Vec<TowerElement>,
    pub mu: TowerElement,
    pub c: Matrix,
    pub b: Vec<TowerElement>,
}

impl AffineGraphMap {
    pub fn identity(spec: &Arc<TowerSpec>, n: usize) -> Self {
        AffineGraphMap {
            lambda: TowerElement::one(spec),
            ell: vec![TowerElement::zero(spec); n],
            mu: TowerElement::zero(spec),
            c: Matrix::identity(spec, n),
            b: vec![TowerElement::zero(spec); n],
        }
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn is_identity(&self) -> bool {
        let spec = self.lambda.spec();
        *self == Self::identity(spec, self.n())
    }

    /// Pure translation `X -> X - q` for a full point `q = (q0, q1..qn)`.
    pub fn translation_to_origin(q: &[TowerElement]) -> Self {
        let spec = q[0].spec().clone();
        let n = q.len() - 1;
        let mut m = Self::identity(&spec, n);
        m.mu = -&q[0];
        for j in 0..n {
            m.b[j] = -&q[j + 1];
        }
        m
    }

    /// Applies `self` first and `after` second.
    pub fn compose(&self, after: &AffineGraphMap) -> AffineGraphMap {
        let n = self.n();
        assert_eq!(n, after.n());
        let c = after.c.mul(&self.c);
        let mut b = after.c.mul_vec(&self.b);
        for j in 0..n {
            b[j] = &b[j] + &after.b[j];
        }
        let lambda = &after.lambda * &self.lambda;
        // ell(x) pieces: λ2*ell1 + C1^T ell2
        let c1t_ell2 = self.c.transpose().mul_vec(&after.ell);
        let mut ell = Vec::with_capacity(n);
        for j in 0..n {
            ell.push(&(&after.lambda * &self.ell[j]) + &c1t_ell2[j]);
        }
        let mut mu = &(&after.lambda * &self.mu) + &after.mu;
        for j in 0..n {
            mu = &mu + &(&after.ell[j] * &self.b[j]);
        }
        AffineGraphMap { lambda, ell, mu, c, b }
    }
}

/// Transports a graph through an affine map: the image of
/// `{x0 = F(x)}` is `{x0 = λ F(u) + ℓ(u) + μ}` with `u = C^{-1}(x - b)`,
/// fully expanded.
pub fn apply_affine(base: &TubeBase, m: &AffineGraphMap) -> Result<TubeBase, MapsError> {
    let n = base.n();
    if m.n() != n {
        return Err(MapsError::DimensionMismatch { expected: n, got: m.n() });
    }
    if m.lambda.is_zero() {
        return Err(MapsError::SingularMatrix);
    }
    let f = base.defining();
    let space = f.space().clone();
    let tower = f.tower().clone();
    let c_inv = m.c.inverse().ok_or(MapsError::SingularMatrix)?;
    // u_i = Σ_j Cinv[i][j] (x_j - b_j)
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = MPoly::zero(&space, &tower);
        for j in 0..n {
            let entry = c_inv.at(i, j);
            if entry.is_zero() {
                continue;
            }
            let xj = MPoly::var(&space, &tower, j + 1);
            let shifted = &xj - &MPoly::constant(&space, m.b[j].clone());
            acc = &acc + &shifted.scale(entry);
        }
        u.push(acc);
    }
    let mut bindings = BTreeMap::new();
    for i in 0..n {
        bindings.insert(format!("x{}", i + 1), u[i].clone());
    }
    let f_of_u = f.substitute(&bindings)?;
    let mut out = f_of_u.scale(&m.lambda);
    for i in 0..n {
        if !m.ell[i].is_zero() {
            out = &out + &u[i].scale(&m.ell[i]);
        }
    }
    out = &out + &MPoly::constant(&space, m.mu.clone());
    Ok(TubeBase::new(n, out, FamilyTag::Derived, base.params().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, RatFunc};
    use crate::geometry::{quadric_tube_base, st_base, ParamValue};
    use crate::parse::parse_expression_in;

    #[test]
    fn identity_fixes_base() {
        let base = st_base(&ParamValue::Symbolic).unwrap();
        let m = AffineGraphMap::identity(base.tower(), 6);
        let image = apply_affine(&base, &m).unwrap();
        assert_eq!(image.defining(), base.defining());
    }

    #[test]
    fn quadric_rescaling_symmetry() {
        // x -> 2x with λ = 4 fixes x0 = Σ x_j^2.
        let base = quadric_tube_base(3, 3).unwrap();
        let tower = base.tower().clone();
        let mut m = AffineGraphMap::identity(&tower, 3);
        m.lambda = TowerElement::from_int(&tower, 4);
        for j in 0..3 {
            *m.c.at_mut(j, j) = TowerElement::from_int(&tower, 2);
        }
        let image = apply_affine(&base, &m).unwrap();
        assert_eq!(image.defining(), base.defining());
    }

    #[test]
    fn translation_matches_hand_expansion() {
        // Translate S_t by q = (1, 0,0,0, 0,0,1): x6 -> x6 + 1 composed with
        // the x0 shift; the image graph is F(x + q') - 1.
        let base = st_base(&ParamValue::Symbolic).unwrap();
        let q: Vec<TowerElement> = [1i64, 0, 0, 0, 0, 0, 1]
            .iter()
            .map(|&v| TowerElement::from_int(base.tower(), v))
            .collect();
        let m = AffineGraphMap::translation_to_origin(&q);
        let image = apply_affine(&base, &m).unwrap();
        let expected = parse_expression_in(
            // F(x1..x5, x6+1) - 1 expanded by hand
            "x1*x6 + x1 + x2*x5 + x3*x4 + x4^3 + x5^3 + x6^3 + 3*x6^2 + 3*x6 + t*x4*x5*x6 + t*x4*x5",
            base.space(),
            base.tower(),
        )
        .unwrap();
        assert_eq!(image.defining(), &expected);
        // The translated base passes through the origin again.
        assert!(image.passes_through_origin());
    }

    #[test]
    fn composition_is_functorial() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let base = st_base(&ParamValue::Rational(rat_int(1))).unwrap();
        let tower = base.tower().clone();
        let n = 6;
        let mut random_map = || {
            let mut m = AffineGraphMap::identity(&tower, n);
            m.lambda = TowerElement::from_int(&tower, *[1, 2, -1].get(rng.gen_range(0..3)).unwrap());
            for j in 0..n {
                m.b[j] = TowerElement::from_int(&tower, rng.gen_range(-2..=2));
                m.ell[j] = TowerElement::from_int(&tower, rng.gen_range(-1..=1));
                for i in 0..n {
                    if i != j && rng.gen_bool(0.2) {
                        *m.c.at_mut(i, j) = TowerElement::from_int(&tower, rng.gen_range(-2..=2));
                    }
                }
            }
            m.mu = TowerElement::from_int(&tower, rng.gen_range(-3..=3));
            m
        };
        for _ in 0..10 {
            let m1 = random_map();
            let m2 = random_map();
            if m1.c.det().is_zero() || m2.c.det().is_zero() {
                continue;
            }
            let seq = apply_affine(&apply_affine(&base, &m1).unwrap(), &m2).unwrap();
            let composite = apply_affine(&base, &m1.compose(&m2)).unwrap();
            assert_eq!(seq.defining(), composite.defining());
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let base = st_base(&ParamValue::Symbolic).unwrap();
        let tower = base.tower().clone();
        let mut m = AffineGraphMap::identity(&tower, 6);
        *m.c.at_mut(0, 0) = TowerElement::zero(&tower);
        assert_eq!(apply_affine(&base, &m).unwrap_err(), MapsError::SingularMatrix);
        let _ = RatFunc::one();
    }
}
