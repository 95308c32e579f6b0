//! Verification that polynomial automorphisms carry tube hypersurfaces onto
//! quadrics, graph-preserving affine maps, the affine-homogeneity
//! normalization pipeline, and graded separation of bases.

mod affine;
mod catalog;
mod homogenize;
mod separation;
mod verify;

pub use affine::{apply_affine, AffineGraphMap};
pub use catalog::{phi1, phi2, pt_map, calpt_map, quadric_to_tube_map, sphericity_bundle, st_map};
pub use homogenize::{homogenize_at, NormalizationStep, NormalizationTrace};
pub use crate::invariants::Separation;
pub use separation::graded_separation;
pub use verify::{verify_quadric_to_tube, verify_sphericity, SphericityOutcome};

use thiserror::Error;

use crate::geometry::GeometryError;
use crate::poly::{ComplexExpr, PolyError};
use crate::tower::TowerError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MapsError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map component {0} is not holomorphic")]
    NonHolomorphicComponent(usize),
    #[error("linear part of the affine map is singular")]
    SingularMatrix,
    #[error("the point does not satisfy the defining equation")]
    NotOnHypersurface,
    #[error("no normalization template for this base: {0}")]
    UnsupportedTemplate(String),
    #[error("absorption failed: {0}")]
    AbsorptionFailed(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("normalization pipeline did not reproduce the original equation")]
    NormalizationIncomplete,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

/// An (n+1)-tuple of holomorphic polynomial components `z*_0..z*_n` in
/// `z_0..z_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyAutomorphism {
    n: usize,
    components: Vec<ComplexExpr>,
}

impl PolyAutomorphism {
    pub fn new(n: usize, components: Vec<ComplexExpr>) -> Result<Self, MapsError> {
        if components.len() != n + 1 {
            return Err(MapsError::DimensionMismatch { expected: n + 1, got: components.len() });
        }
        for (idx, c) in components.iter().enumerate() {
            if !c.is_holomorphic() {
                return Err(MapsError::NonHolomorphicComponent(idx));
            }
        }
        Ok(PolyAutomorphism { n, components })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component(&self, j: usize) -> &ComplexExpr {
        &self.components[j]
    }

    pub fn components(&self) -> &[ComplexExpr] {
        &self.components
    }
}
