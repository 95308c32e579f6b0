//! Finite extension algebras of ℚ(t): adjoined square roots, at most one
//! real cube root, relation-free symbols, and the imaginary unit.
//!
//! Elements are stored on the reduced monomial basis in the generators, with
//! ℚ(t) coefficients, so the zero test is coefficient comparison. Soundness
//! of that test rests on the independence validation performed when a spec
//! is built: no product of declared square-root radicands (including -1 when
//! the imaginary unit is present) may be a square in ℚ(t), and the cube-root
//! radicand may not be a cube.

mod element;
mod eval;
mod real;

pub use element::{tower_inv, tower_is_zero, tower_mul, TowerElement};
pub use eval::{eval_to_real, tower_eval_real, SignEstimate};
pub use real::{RealRadical, Sign};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TowerError {
    #[error("elements belong to different tower specs")]
    SpecMismatch,
    #[error("zero or non-invertible element (zero divisor)")]
    ZeroDivisor,
    #[error("dependent radicands: {0}")]
    DependentRadicands(String),
    #[error("square root of a radicand outside the declared tower: {0}")]
    NotInTower(String),
    #[error("tower has no generator named {0}")]
    UnknownGenerator(String),
    #[error("quadratic radicand {radicand} is negative at t = {at}")]
    NegativeRadicand { radicand: String, at: Rational },
    #[error("element involves the imaginary unit; no real evaluation")]
    ImaginaryPresent,
    #[error("element involves a relation-free symbol; no real evaluation")]
    SymbolPresent,
    #[error("radicand or coefficient has a pole at t = {0}")]
    PoleAt(Rational),
    #[error("sign undecided at maximal interval refinement and not provably zero")]
    PrecisionExhausted,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Kind of a tower generator together with its defining relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenKind {
    /// `g^2 = radicand`, radicand the canonical square-class representative.
    Sqrt(RatFunc),
    /// `g^3 = radicand`, radicand the canonical cube-class representative;
    /// `g` denotes the real cube root.
    Cbrt(RatFunc),
    /// Relation-free scalar symbol; exponents may be negative.
    Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
}

impl Generator {
    fn relation_degree(&self) -> Option<u8> {
        match self.kind {
            GenKind::Sqrt(_) => Some(2),
            GenKind::Cbrt(_) => Some(3),
            GenKind::Symbol => None,
        }
    }
}

/// Declaration of a tower: ordered generators plus the imaginary-unit flag.
#[derive(Debug, Eq)]
pub struct TowerSpec {
    generators: Vec<Generator>,
    with_i: bool,
    /// Display name of the ℚ(t) parameter (`t` for the families, `tau` for
    /// the unified family). Cosmetic only: excluded from equality.
    param_name: String,
}

impl PartialEq for TowerSpec {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.with_i == other.with_i
    }
}

impl TowerSpec {
    pub fn builder() -> TowerBuilder {
        TowerBuilder::default()
    }

    /// Plain ℚ(t): no generators, no imaginary unit.
    pub fn rational() -> Arc<TowerSpec> {
        TowerSpec::builder().build().expect("trivial tower is valid")
    }

    /// ℚ(t) with only the imaginary unit adjoined.
    pub fn gaussian() -> Arc<TowerSpec> {
        TowerSpec::builder().imaginary().build().expect("gaussian tower is valid")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn has_imaginary_unit(&self) -> bool {
        self.with_i
    }

    pub fn param_name(&self) -> &str {
        &self.param_name
    }

    /// Dimension over ℚ(t) of the radical part (symbols excluded), i.e. the
    /// size of the reduced monomial basis used by the regular representation.
    pub fn radical_dimension(&self) -> usize {
        let mut d = if self.with_i { 2 } else { 1 };
        for g in &self.generators {
            if let Some(e) = g.relation_degree() {
                d *= e as usize;
            }
        }
        d
    }

    pub fn has_symbols(&self) -> bool {
        self.generators.iter().any(|g| g.kind == GenKind::Symbol)
    }

}

/// Checks the declared radicands for multiplicative independence: every
/// nonempty product of square-root radicand classes (with -1 included when
/// the imaginary unit is present) must have a nontrivial square class, and
/// the cube radicand must have a nontrivial cube class. Returns the
/// offending combination otherwise.
pub fn validate_independence(spec: &TowerSpec) -> Result<(), TowerError> {
    let mut classes: Vec<(String, RatFunc)> = Vec::new();
    if spec.with_i {
        classes.push(("i".into(), RatFunc::from_int(-1)));
    }
    for g in &spec.generators {
        match &g.kind {
            GenKind::Sqrt(r) => {
                classes.push((g.name.clone(), r.clone()));
            }
            GenKind::Cbrt(r) => {
                let (_, rep) = r.cube_class()?;
                if rep.is_one() {
                    return Err(TowerError::DependentRadicands(format!(
                        "cube radicand {} of {} is a perfect cube in Q(t)",
                        r, g.name
                    )));
                }
            }
            GenKind::Symbol => {}
        }
    }
    for mask in 1u32..(1 << classes.len()) {
        let mut prod = RatFunc::one();
        let mut names = Vec::new();
        for (idx, (name, class)) in classes.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                prod = &prod * class;
                names.push(name.as_str());
            }
        }
        let (_, rep) = prod.square_class()?;
        if rep.is_one() {
            return Err(TowerError::DependentRadicands(format!(
                "product of radicands {{{}}} is a square in Q(t)",
                names.join(", ")
            )));
        }
    }
    Ok(())
}

/// Searches the multiplicative span of the accepted square classes (with
/// `-1` adjoined when the imaginary unit is present) for `rep`. On a hit,
/// returns the subset mask and whether `-1` participates, together with the
/// exact square root of `rep / product`.
pub(crate) fn square_class_in_span(
    rep: &RatFunc,
    classes: &[RatFunc],
    with_i: bool,
) -> Result<Option<(u32, bool, RatFunc)>, TowerError> {
    for mask in 0u32..(1 << classes.len()) {
        for use_i in [false, true] {
            if use_i && !with_i {
                continue;
            }
            let mut prod = if use_i { RatFunc::from_int(-1) } else { RatFunc::one() };
            for (idx, class) in classes.iter().enumerate() {
                if mask & (1 << idx) != 0 {
                    prod = &prod * class;
                }
            }
            let ratio = rep.checked_div(&prod).map_err(TowerError::Arith)?;
            let (m, residue) = ratio.square_class()?;
            if residue.is_one() {
                return Ok(Some((mask, use_i, m)));
            }
        }
    }
    Ok(None)
}

#[derive(Default)]
pub struct TowerBuilder {
    sqrts: Vec<RatFunc>,
    cbrts: Vec<RatFunc>,
    symbols: Vec<String>,
    with_i: bool,
    param_name: Option<String>,
}

impl TowerBuilder {
    /// Declares that square roots of `r`'s square class are available.
    pub fn sqrt(mut self, r: RatFunc) -> Self {
        self.sqrts.push(r);
        self
    }

    /// Declares the real cube root of `r`'s cube class (at most one).
    pub fn cbrt(mut self, r: RatFunc) -> Self {
        self.cbrts.push(r);
        self
    }

    /// Declares a relation-free scalar symbol.
    pub fn symbol(mut self, name: &str) -> Self {
        self.symbols.push(name.to_string());
        self
    }

    pub fn imaginary(mut self) -> Self {
        self.with_i = true;
        self
    }

    pub fn param_name(mut self, name: &str) -> Self {
        self.param_name = Some(name.to_string());
        self
    }

    /// Canonicalizes the radicands, reduces them to a multiplicatively
    /// independent basis of square classes, validates independence, and
    /// freezes the spec. Radicands whose class is trivial or already
    /// generated by accepted classes (times the imaginary unit) create no
    /// generator; `sqrt_of` resolves them as subset products.
    pub fn build(self) -> Result<Arc<TowerSpec>, TowerError> {
        let mut generators = Vec::new();
        let mut accepted: Vec<RatFunc> = Vec::new();
        let mut sqrt_idx = 0usize;
        for r in &self.sqrts {
            let (_, rep) = r.square_class()?;
            if rep.is_one() {
                continue;
            }
            if square_class_in_span(&rep, &accepted, self.with_i)?.is_some() {
                continue;
            }
            accepted.push(rep.clone());
            generators.push(Generator { name: format!("r{}", sqrt_idx), kind: GenKind::Sqrt(rep) });
            sqrt_idx += 1;
        }
        if self.cbrts.len() > 1 {
            return Err(TowerError::DependentRadicands("at most one cube generator is supported".into()));
        }
        for r in &self.cbrts {
            let (_, rep) = r.cube_class()?;
            if rep.is_one() {
                continue;
            }
            generators.push(Generator { name: "c".into(), kind: GenKind::Cbrt(rep) });
        }
        for name in &self.symbols {
            if generators.iter().any(|g| &g.name == name) {
                return Err(TowerError::DependentRadicands(format!("duplicate generator name {}", name)));
            }
            generators.push(Generator { name: name.clone(), kind: GenKind::Symbol });
        }
        let spec = TowerSpec {
            generators,
            with_i: self.with_i,
            param_name: self.param_name.unwrap_or_else(|| "t".into()),
        };
        validate_independence(&spec)?;
        Ok(Arc::new(spec))
    }
}

impl fmt::Display for TowerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q({})", self.param_name)?;
        for g in &self.generators {
            match &g.kind {
                GenKind::Sqrt(r) => write!(f, "[sqrt({})]", r)?,
                GenKind::Cbrt(r) => write!(f, "[cbrt({})]", r)?,
                GenKind::Symbol => write!(f, "[{}]", g.name)?,
            }
        }
        if self.with_i {
            write!(f, "[i]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;

    fn rf(coeffs: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::from_ints(coeffs))
    }

    #[test]
    fn independent_radicands_accepted() {
        // {2(1+t), 3t} have distinct squarefree classes.
        let spec = TowerSpec::builder().sqrt(rf(&[2, 2])).sqrt(rf(&[0, 3])).build().unwrap();
        assert_eq!(spec.generators().len(), 2);
        assert!(validate_independence(&spec).is_ok());
    }

    #[test]
    fn same_class_radicands_merge() {
        // 12t = 4 * 3t: same class, one generator.
        let spec = TowerSpec::builder().sqrt(rf(&[0, 3])).sqrt(rf(&[0, 12])).build().unwrap();
        assert_eq!(spec.generators().len(), 1);
    }

    #[test]
    fn cube_radicand_validates() {
        // (t^3+27)/81-style radicand is not a cube.
        let r = RatFunc::new(UniPoly::from_ints(&[-27, 0, 0, -1]), UniPoly::from_ints(&[81]));
        let spec = TowerSpec::builder().cbrt(r).build().unwrap();
        assert_eq!(spec.generators().len(), 1);
        // A perfect cube produces no generator.
        let spec = TowerSpec::builder().cbrt(rf(&[8])).build().unwrap();
        assert_eq!(spec.generators().len(), 0);
    }

    #[test]
    fn dependent_subset_rejected() {
        // -1 (from i), 3t and -3t multiply to a square.
        let spec = TowerSpec {
            generators: vec![
                Generator { name: "a".into(), kind: GenKind::Sqrt(rf(&[0, 3])) },
                Generator { name: "b".into(), kind: GenKind::Sqrt(rf(&[0, -3])) },
            ],
            with_i: true,
            param_name: "t".into(),
        };
        assert!(matches!(validate_independence(&spec), Err(TowerError::DependentRadicands(_))));
    }
}
