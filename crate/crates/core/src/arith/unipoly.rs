//! Univariate polynomials over ℚ in the parameter `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::integers::int_squarefree_kernel;
use super::{ArithError, Rational};

/// Dense univariate polynomial; `coeffs[d]` is the degree-`d` coefficient and
/// the leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `c * t^d`.
    pub fn monomial(c: Rational, d: usize) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); d + 1];
        coeffs[d] = c;
        UniPoly { coeffs }
    }

    /// The variable `t`.
    pub fn var() -> Self {
        UniPoly::monomial(Rational::one(), 1)
    }

    /// Builds from integer coefficients listed by ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * Rational::from(BigInt::from(i as u64 + 1)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn div_rem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lc;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    let v = &rem[k + i] - c * &factor;
                    rem[k + i] = v;
                }
                quot[k] = factor;
            }
            rem.pop();
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd computed with a primitive pseudo-remainder sequence over ℤ
    /// to avoid intermediate coefficient blowup.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let mut a = self.primitive_int();
        let mut b = other.primitive_int();
        if int_degree(&a) < int_degree(&b) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if int_is_zero(&b) {
                return UniPoly::new(a.into_iter().map(Rational::from).collect()).monic();
            }
            let r = int_pseudo_rem(&a, &b);
            a = b;
            b = int_primitive(r);
        }
    }

    /// Squarefree decomposition `self = content * ∏ a_k^k` (Yun's algorithm);
    /// returns the content and the monic squarefree factors `a_k` with their
    /// multiplicities.
    pub fn squarefree_decomposition(&self) -> (Rational, Vec<(UniPoly, usize)>) {
        assert!(!self.is_zero());
        let content = self.leading_coeff();
        let f = self.monic();
        if f.is_one() {
            return (content, Vec::new());
        }
        let mut out = Vec::new();
        let g = f.gcd(&f.derivative());
        let mut c = f.div_exact(&g);
        let mut d = &f.derivative().div_exact(&g) - &c.derivative();
        let mut k = 1usize;
        while c.degree() != Some(0) {
            let a = c.gcd(&d);
            if a.degree() != Some(0) {
                out.push((a.clone(), k));
            }
            c = c.div_exact(&a);
            d = &d.div_exact(&a) - &c.derivative();
            k += 1;
        }
        (content, out)
    }

    /// Exact square root when `self` is a perfect square in `Q[t]`.
    pub fn exact_sqrt(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return Some(UniPoly::zero());
        }
        let (content, factors) = self.squarefree_decomposition();
        if content.is_negative() {
            return None;
        }
        let num = content.numer().sqrt();
        let den = content.denom().sqrt();
        if (&num * &num, &den * &den) != (content.numer().clone(), content.denom().clone()) {
            return None;
        }
        let mut root = UniPoly::constant(Rational::new(num, den));
        for (a, k) in factors {
            if k % 2 != 0 {
                return None;
            }
            root = &root * &a.pow(k / 2);
        }
        Some(root)
    }

    /// Clears denominators and the integer content, keeping the sign.
    fn primitive_int(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        int_primitive(ints)
    }
}

fn int_degree(p: &[BigInt]) -> usize {
    p.len().saturating_sub(1)
}

fn int_is_zero(p: &[BigInt]) -> bool {
    p.is_empty()
}

fn int_trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn int_primitive(p: Vec<BigInt>) -> Vec<BigInt> {
    let p = int_trim(p);
    if p.is_empty() {
        return p;
    }
    let mut content = BigInt::zero();
    for c in &p {
        content = content.gcd(c);
    }
    if p.last().unwrap().is_negative() {
        content = -content;
    }
    p.into_iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of integer polynomials: `lc(b)^(δ+1) * a mod b`.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = int_degree(b);
    let lc = b.last().unwrap().clone();
    let mut rem: Vec<BigInt> = a.to_vec();
    while int_trim(rem.clone()).len() > db {
        rem = int_trim(rem);
        let k = rem.len() - 1 - db;
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lc;
        }
        for (i, c) in b.iter().enumerate() {
            rem[k + i] -= &top * c;
        }
        rem = int_trim(rem);
        if rem.len() <= db {
            break;
        }
    }
    int_trim(rem)
}

/// Squarefree part in the square-class sense: the unique `s` with
/// `p = s * m^2`, `s` squarefree, normalized as (signed squarefree kernel of
/// the content) times the monic odd-multiplicity factors.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let (content, factors) = p.squarefree_decomposition();
    let (kernel, _) = int_squarefree_kernel(&(content.numer() * content.denom()));
    let mut s = UniPoly::constant(Rational::from(kernel));
    for (a, k) in factors {
        if k % 2 == 1 {
            s = &s * &a;
        }
    }
    Ok(s)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        UniPoly::new(out)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let v = &out[i + j] + a * b;
                out[i + j] = v;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for UniPoly {
    /// Renders with explicit `*` and `^` so the output re-parses, highest
    /// degree first, e.g. `t^2 - 34*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for d in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[d];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || d == 0;
            if show_coeff {
                write!(f, "{}", fmt_rational(&mag))?;
            }
            if d > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "t")?;
                if d > 1 {
                    write!(f, "^{}", d)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    #[test]
    fn div_rem_roundtrip() {
        let a = UniPoly::from_ints(&[-1, 0, 0, 1]); // t^3 - 1
        let b = UniPoly::from_ints(&[-1, 1]); // t - 1
        let (q, r) = a.div_rem(&b);
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
    }

    #[test]
    fn gcd_cancellation() {
        // gcd(t^2 - 1, t^2 - 2t + 1) = t - 1
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        // t^3 + 27 and its derivative 3t^2 share no factor.
        let p = UniPoly::from_ints(&[27, 0, 0, 1]);
        assert!(p.gcd(&p.derivative()).is_one());
    }

    #[test]
    fn squarefree_part_examples() {
        // 3t stays 3t: no repeated factor, content kernel 3.
        let p = UniPoly::from_ints(&[0, 3]);
        assert_eq!(squarefree_part(&p).unwrap(), p);
        // t^2 has squarefree part 1.
        let p = UniPoly::from_ints(&[0, 0, 1]);
        assert!(squarefree_part(&p).unwrap().is_one());
        // t^3 + 27 is already squarefree.
        let p = UniPoly::from_ints(&[27, 0, 0, 1]);
        assert_eq!(squarefree_part(&p).unwrap(), p);
        // 12t reduces to 3t modulo rational squares.
        let p = UniPoly::from_ints(&[0, 12]);
        assert_eq!(squarefree_part(&p).unwrap(), UniPoly::from_ints(&[0, 3]));
        assert_eq!(squarefree_part(&UniPoly::zero()), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 * (t+2)^3 * 5
        let f = UniPoly::from_ints(&[-1, 1]).pow(2);
        let g = UniPoly::from_ints(&[2, 1]).pow(3);
        let p = (&f * &g).scale(&rat_int(5));
        let (content, factors) = p.squarefree_decomposition();
        assert_eq!(content, rat_int(5));
        assert_eq!(
            factors,
            vec![(UniPoly::from_ints(&[-1, 1]), 2), (UniPoly::from_ints(&[2, 1]), 3)]
        );
    }

    #[test]
    fn exact_sqrt() {
        let p = UniPoly::from_ints(&[1, 2, 1]).scale(&rat(9, 4)); // (3/2 (t+1))^2
        let r = p.exact_sqrt().unwrap();
        assert_eq!(&r * &r, p);
        assert!(UniPoly::from_ints(&[0, 1]).exact_sqrt().is_none());
    }

    #[test]
    fn display_renders_signs() {
        let p = UniPoly::from_ints(&[1, -34, 1]);
        assert_eq!(p.to_string(), "t^2 - 34*t + 1");
        assert_eq!(UniPoly::from_ints(&[0, 3]).to_string(), "3*t");
        assert_eq!(UniPoly::from_ints(&[-2]).to_string(), "-2");
    }
}
