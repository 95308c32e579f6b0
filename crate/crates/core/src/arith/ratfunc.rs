//! The rational-function field ℚ(t) in canonical form: reduced fraction with
//! monic denominator, so equality is coefficient-wise.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::unipoly::{squarefree_part, UniPoly};
use super::{ArithError, Rational};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatFuncOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Dispatch form of the field operations; `Div` fails on a zero divisor.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: RatFuncOp) -> Result<RatFunc, ArithError> {
    match op {
        RatFuncOp::Add => Ok(a + b),
        RatFuncOp::Sub => Ok(a - b),
        RatFuncOp::Mul => Ok(a * b),
        RatFuncOp::Div => a.checked_div(b),
    }
}

impl RatFunc {
    /// Canonicalizes `num/den`: cancels the gcd and scales the denominator
    /// monic. Panics on a zero denominator (use `checked_div` for data-driven
    /// divisions).
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num: UniPoly::zero(), den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }

    /// The parameter `t` itself.
    pub fn var() -> Self {
        RatFunc::from_poly(UniPoly::var())
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, ArithError> {
        if rhs.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn recip(&self) -> Result<RatFunc, ArithError> {
        RatFunc::one().checked_div(self)
    }

    pub fn pow(&self, e: usize) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> RatFunc {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(num, &self.den * &self.den)
    }

    /// Evaluation at a rational parameter; `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Substitutes another rational function for `t`.
    pub fn compose(&self, inner: &RatFunc) -> RatFunc {
        let eval_poly = |p: &UniPoly| -> RatFunc {
            let mut acc = RatFunc::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * inner) + &RatFunc::from_rational(c.clone());
            }
            acc
        };
        let den = eval_poly(&self.den);
        eval_poly(&self.num)
            .checked_div(&den)
            .expect("composition hit the denominator's zero locus identically")
    }

    /// Writes `self = m^2 * rep` with `rep` the canonical square-class
    /// representative (signed squarefree content kernel times monic
    /// squarefree polynomial part). `rep = 1` exactly when `self` is a
    /// square in ℚ(t).
    pub fn square_class(&self) -> Result<(RatFunc, RatFunc), ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let rep = squarefree_part(&(&self.num * &self.den))?;
        let ratio = self.checked_div(&RatFunc::from_poly(rep.clone()))?;
        let m_num = ratio.num.exact_sqrt().expect("square class ratio must be a perfect square");
        let m_den = ratio.den.exact_sqrt().expect("square class ratio must be a perfect square");
        Ok((RatFunc::new(m_num, m_den), RatFunc::from_poly(rep)))
    }

    /// Writes `self = m^3 * rep` with `rep` the canonical cube-class
    /// representative (positive cubefree content kernel times the monic
    /// cube-free polynomial part); `rep = 1` iff `self` is a cube in ℚ(t).
    pub fn cube_class(&self) -> Result<(RatFunc, RatFunc), ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        let pq2 = &(&self.num * &self.den) * &self.den;
        let (content, factors) = pq2.squarefree_decomposition();
        let (kernel, kroot) =
            super::integers::int_cubefree_kernel(&(content.numer() * content.denom() * content.denom()));
        let mut rep = UniPoly::constant(Rational::from(kernel));
        let mut root = UniPoly::constant(Rational::new(kroot, content.denom().clone()));
        for (a, k) in factors {
            rep = &rep * &a.pow(k % 3);
            root = &root * &a.pow(k / 3);
        }
        // self = pq2 / den^3, so m = root / den.
        let m = RatFunc::new(root, self.den.clone());
        let rep = RatFunc::from_poly(rep);
        debug_assert_eq!(&(&(&m * &m) * &m) * &rep, *self);
        Ok((m, rep))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num - &rhs.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc { num: &self.num * &rhs.num, den: UniPoly::one() };
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
