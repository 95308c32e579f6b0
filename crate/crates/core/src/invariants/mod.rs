//! Separating invariants: binary quartics under GL₂(ℝ), the cubic family
//! `c_t`, Weierstrass reduction with the Tate formulaire, the j-invariant,
//! Φ, and the reparametrization χ.

mod chi;
mod cubic;
mod quartic;
mod weierstrass;

pub use chi::{chi, chi_at_silver_point, chi_inverse, chi_of_sqrt, chi_strictly_increasing, Branch};
pub use cubic::{cubic_form, cubic_singular_locus, TernaryCubic};
pub use quartic::{
    cross_ratio_j, gl2r_separate, quartic_invariants, quartic_root_lines, qt_quartic, BinaryQuartic,
    QuarticInvariants, Separation,
};
pub use weierstrass::{
    j_closed_form, j_of_ct, phi, phi_derivative_at_zero, phi_monotone_scan, phi_ratfunc,
    reciprocity_check, reciprocity_identity_symbolic, tate_invariants, weierstrass_reduce,
    TateInvariants, WeierstrassModel,
};

use thiserror::Error;

use crate::arith::{ArithError, Rational};
use crate::poly::PolyError;
use crate::tower::TowerError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantsError {
    #[error("parameter must be nonnegative")]
    NegativeParameter,
    #[error("the four points must be pairwise distinct")]
    CoincidentPoints,
    #[error("the cubic is singular at t = -3")]
    SingularCubic,
    #[error("the composed Weierstrass form is not proportional to the cubic")]
    ProportionalityFailed,
    #[error("the model is singular (discriminant zero)")]
    SingularModel,
    #[error("pole at s = {0}")]
    PoleAt(Rational),
    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Tower(#[from] TowerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}
