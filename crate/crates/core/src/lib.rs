//! Exact symbolic kernel for tube-hypersurface verification: radical towers
//! over ℚ(t), sparse multivariate polynomials, a catalog of explicit
//! hypersurface families and automorphisms, and the separating invariants
//! (binary quartics, Levi signatures, the j-invariant pipeline).

pub mod arith;
pub mod geometry;
pub mod invariants;
pub mod maps;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod tower;

#[cfg(test)]
mod proptests;
