//! The catalog of tube hypersurfaces and quadrics, plus pointwise
//! differential data: Hessians, inertia signatures, and the trace-free
//! cubic test.

mod families;
mod signature;
mod trace;

pub use families::{
    frakp_base, genhyper_symbolic, instantiate_family, m1_base, m2_base, pt_base, quadric_tube_base,
    st_base, calpt_base, FamilyParams, FamilyTag, ParamValue,
};
pub(crate) use families::cmp_silver_bound;
pub use signature::{hessian, levi_signature, signature, SignatureReport};
pub use trace::{cubic_trace, is_trace_free};

use std::sync::Arc;

use thiserror::Error;

use crate::arith::Rational;
use crate::linalg::Matrix;
use crate::poly::{MPoly, PolyError, VariableSpace};
use crate::tower::{TowerElement, TowerError, TowerSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quadratic part is degenerate")]
    DegenerateQuadraticPart,
    #[error("entries depend on the parameter; a rational value is required")]
    ParameterRequired,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// A tube hypersurface base in graph form `x0 = F(x1..xn)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeBase {
    n: usize,
    f: MPoly,
    tag: FamilyTag,
    params: Vec<(String, String)>,
}

impl TubeBase {
    pub fn new(n: usize, f: MPoly, tag: FamilyTag, params: Vec<(String, String)>) -> Self {
        assert_eq!(f.space().dim(), n + 1, "graph polynomial lives in x0..xn");
        let x0 = f.space().index_of("x0").expect("tube space");
        assert!(
            f.terms().keys().all(|e| e[x0] == 0),
            "graph polynomial must not involve x0"
        );
        TubeBase { n, f, tag, params }
    }

    /// Whether the base passes through the origin; holds for every catalog
    /// family (affine images of a base need not).
    pub fn passes_through_origin(&self) -> bool {
        self.f.coeff(&vec![0; self.n + 1]).is_zero()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The defining polynomial `F` with `x0 = F(x1..xn)`.
    pub fn defining(&self) -> &MPoly {
        &self.f
    }

    pub fn tag(&self) -> FamilyTag {
        self.tag
    }

    pub fn params(&self) -> &[(String, String)] {
        &self.params
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        self.f.space()
    }

    pub fn tower(&self) -> &Arc<TowerSpec> {
        self.f.tower()
    }

    /// Lifts base coordinates `(x1..xn)` to the full point `(F(x), x)`.
    pub fn lift_point(&self, coords: &[TowerElement]) -> Result<Vec<TowerElement>, GeometryError> {
        if coords.len() != self.n {
            return Err(GeometryError::DimensionMismatch { expected: self.n, got: coords.len() });
        }
        let mut full = Vec::with_capacity(self.n + 1);
        full.push(TowerElement::zero(self.f.tower()));
        full.extend_from_slice(coords);
        let x0 = self.f.eval_tower(&full)?;
        full[0] = x0;
        Ok(full)
    }

    pub fn lift_rational_point(&self, coords: &[Rational]) -> Result<Vec<TowerElement>, GeometryError> {
        let tower = self.f.tower();
        let coords: Vec<TowerElement> =
            coords.iter().map(|q| TowerElement::from_rational(tower, q.clone())).collect();
        self.lift_point(&coords)
    }
}

/// A Levi non-degenerate quadric `Im z0 = Σ H_jk z_j z̄_k` with `H` real
/// symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianQuadric {
    n: usize,
    h: Matrix,
}

impl HermitianQuadric {
    pub fn new(n: usize, h: Matrix) -> Self {
        assert_eq!(h.rows(), n);
        assert_eq!(h.cols(), n);
        assert!(h.is_symmetric(), "Hermitian matrix must be real symmetric");
        assert!(!h.det().is_zero(), "quadric must be Levi non-degenerate");
        HermitianQuadric { n, h }
    }

    /// The standard quadric with `k` positive and `n-k` negative squares.
    pub fn standard(k: usize, n: usize, tower: &Arc<TowerSpec>) -> Self {
        assert!(k <= n);
        let mut h = Matrix::zero(tower, n, n);
        for j in 0..n {
            *h.at_mut(j, j) = TowerElement::from_int(tower, if j < k { 1 } else { -1 });
        }
        Self::new(n, h)
    }

    /// The equivalent form `(1/2) Re (z1 z̄6 + z2 z̄5 + z3 z̄4)`: quarter
    /// entries on the anti-diagonal of a 6x6 matrix.
    pub fn prime_33(tower: &Arc<TowerSpec>) -> Self {
        let quarter = TowerElement::from_ratfunc(
            tower,
            crate::arith::RatFunc::new(
                crate::arith::UniPoly::from_ints(&[1]),
                crate::arith::UniPoly::from_ints(&[4]),
            ),
        );
        let mut h = Matrix::zero(tower, 6, 6);
        for j in 0..6 {
            *h.at_mut(j, 5 - j) = quarter.clone();
        }
        Self::new(6, h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.h
    }
}
