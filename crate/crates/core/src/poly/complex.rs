//! Polynomial expressions in `z0..zn, zb0..zbn` over a tower containing the
//! imaginary unit, and their splitting into real and imaginary parts.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::tower::{TowerElement, TowerSpec};

use super::{MPoly, PolyError, VariableSpace};

/// An MPoly in the complex variables and their formal conjugates. The tower
/// must contain the imaginary unit.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexExpr {
    poly: MPoly,
    n: usize,
}

impl ComplexExpr {
    /// Wraps a polynomial living in `VariableSpace::complex(n)`.
    pub fn new(poly: MPoly, n: usize) -> Self {
        assert_eq!(poly.space().dim(), 2 * (n + 1), "complex space must be z0..zn, zb0..zbn");
        assert!(poly.tower().has_imaginary_unit(), "complex expressions need the imaginary unit");
        ComplexExpr { poly, n }
    }

    pub fn zero(n: usize, tower: &Arc<TowerSpec>) -> Self {
        Self::new(MPoly::zero(&VariableSpace::complex(n), tower), n)
    }

    pub fn constant(n: usize, c: TowerElement) -> Self {
        Self::new(MPoly::constant(&VariableSpace::complex(n), c), n)
    }

    /// The variable `z_j`.
    pub fn z(n: usize, tower: &Arc<TowerSpec>, j: usize) -> Self {
        let space = VariableSpace::complex(n);
        Self::new(MPoly::var(&space, tower, j), n)
    }

    /// The conjugate variable `z̄_j`.
    pub fn zbar(n: usize, tower: &Arc<TowerSpec>, j: usize) -> Self {
        let space = VariableSpace::complex(n);
        Self::new(MPoly::var(&space, tower, n + 1 + j), n)
    }

    pub fn as_poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Holomorphic means no conjugate variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.poly.terms().keys().all(|e| e[self.n + 1..].iter().all(|&x| x == 0))
    }

    /// Complex conjugation: swaps `z_j <-> z̄_j` and maps `i -> -i` in the
    /// coefficients.
    pub fn conjugate(&self) -> Self {
        let m = self.n + 1;
        let mut out = MPoly::zero(self.poly.space(), self.poly.tower());
        for (exps, c) in self.poly.terms() {
            let mut swapped = vec![0u16; 2 * m];
            for j in 0..m {
                swapped[j] = exps[m + j];
                swapped[m + j] = exps[j];
            }
            out.add_term(swapped, c.conj_i());
        }
        ComplexExpr { poly: out, n: self.n }
    }

    pub fn scale(&self, c: &TowerElement) -> Self {
        ComplexExpr { poly: self.poly.scale(c), n: self.n }
    }

    pub fn pow(&self, e: usize) -> Self {
        ComplexExpr { poly: self.poly.pow(e), n: self.n }
    }

    /// Substitutes `z_j = x_j + i y_j`, `z̄_j = x_j - i y_j`, expands, and
    /// returns the parts with the coefficient algebra split on the imaginary
    /// unit: `self = re + i * im`, both outputs free of `i`.
    pub fn split(&self) -> Result<(MPoly, MPoly), PolyError> {
        let tower = self.poly.tower();
        let space = VariableSpace::tube_split(self.n);
        let i = TowerElement::imaginary(tower)?;
        let mut bindings = BTreeMap::new();
        for j in 0..=self.n {
            let xj = MPoly::var_named(&space, tower, &format!("x{}", j))?;
            let yj = MPoly::var_named(&space, tower, &format!("y{}", j))?;
            let iy = yj.scale(&i);
            bindings.insert(format!("z{}", j), &xj + &iy);
            bindings.insert(format!("zb{}", j), &xj - &iy);
        }
        let expanded = self.poly.substitute(&bindings)?;
        let mut re = MPoly::zero(&space, tower);
        let mut im = MPoly::zero(&space, tower);
        for (exps, c) in expanded.terms() {
            let (cr, ci) = c.re_im();
            re.add_term(exps.clone(), cr);
            im.add_term(exps.clone(), ci);
        }
        Ok((re, im))
    }
}

/// Operation form of [`ComplexExpr::split`].
pub fn complex_split(e: &ComplexExpr) -> Result<(MPoly, MPoly), PolyError> {
    e.split()
}

impl Add for &ComplexExpr {
    type Output = ComplexExpr;
    fn add(self, rhs: &ComplexExpr) -> ComplexExpr {
        ComplexExpr { poly: &self.poly + &rhs.poly, n: self.n }
    }
}

impl Sub for &ComplexExpr {
    type Output = ComplexExpr;
    fn sub(self, rhs: &ComplexExpr) -> ComplexExpr {
        ComplexExpr { poly: &self.poly - &rhs.poly, n: self.n }
    }
}

impl Mul for &ComplexExpr {
    type Output = ComplexExpr;
    fn mul(self, rhs: &ComplexExpr) -> ComplexExpr {
        ComplexExpr { poly: &self.poly * &rhs.poly, n: self.n }
    }
}

impl Neg for &ComplexExpr {
    type Output = ComplexExpr;
    fn neg(self) -> ComplexExpr {
        ComplexExpr { poly: -&self.poly, n: self.n }
    }
}

impl fmt::Display for ComplexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for ComplexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}
