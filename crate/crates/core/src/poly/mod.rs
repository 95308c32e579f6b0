//! Sparse multivariate polynomials over tower elements in named real
//! variables, with substitution, grading, and complex-to-real splitting.

mod complex;
mod mpoly;
mod render;

pub use complex::{complex_split, ComplexExpr};
pub use mpoly::{homogeneous_component, mpoly_substitute, MPoly};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomials live in different variable spaces")]
    SpaceMismatch,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Tower(#[from] crate::tower::TowerError),
}

/// An ordered set of variable names fixed for a computation.
#[derive(Debug, PartialEq, Eq)]
pub struct VariableSpace {
    names: Vec<String>,
}

impl VariableSpace {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Arc<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate variable name {}", n);
        }
        Arc::new(VariableSpace { names })
    }

    /// Real tube variables `x0..xn`.
    pub fn tube(n: usize) -> Arc<Self> {
        Self::new((0..=n).map(|j| format!("x{}", j)).collect())
    }

    /// Real and imaginary parts `x0..xn, y0..yn`.
    pub fn tube_split(n: usize) -> Arc<Self> {
        let mut names: Vec<String> = (0..=n).map(|j| format!("x{}", j)).collect();
        names.extend((0..=n).map(|j| format!("y{}", j)));
        Self::new(names)
    }

    /// Complex variables and their conjugates `z0..zn, zb0..zbn`.
    pub fn complex(n: usize) -> Arc<Self> {
        let mut names: Vec<String> = (0..=n).map(|j| format!("z{}", j)).collect();
        names.extend((0..=n).map(|j| format!("zb{}", j)));
        Self::new(names)
    }

    /// Projective cubic variables `w1, w2, w3`.
    pub fn ternary() -> Arc<Self> {
        Self::new(vec!["w1", "w2", "w3"])
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for VariableSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}
