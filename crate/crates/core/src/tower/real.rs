//! Exact arithmetic for real radical constants: elements of
//! ℚ(√d₁, …, √dₘ, ∛e) with squarefree integer kernels dᵢ and a cubefree
//! kernel e. Canonical kernels make the zero test coefficient-wise and the
//! sign decision a terminating interval refinement.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

use super::TowerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Basis key: positive squarefree `d` under the square root and the cube
/// generator exponent `j` (0..3).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct RKey {
    d: BigInt,
    j: u8,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RealRadical {
    /// Positive cubefree kernel of the single real cube root, if any term
    /// uses one.
    cube_kernel: Option<BigInt>,
    terms: BTreeMap<RKey, Rational>,
}

impl RealRadical {
    pub fn zero() -> Self {
        RealRadical { cube_kernel: None, terms: BTreeMap::new() }
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(q, BigInt::one(), 0, None);
        out
    }

    /// The value √d for a positive squarefree integer kernel.
    pub fn sqrt_kernel(d: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(Rational::one(), d, 0, None);
        out
    }

    /// The real cube root of the positive cubefree kernel `e`.
    pub fn cbrt_kernel(e: BigInt) -> Self {
        let mut out = Self::zero();
        out.add_term(Rational::one(), BigInt::one(), 1, Some(e));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (k, q) = self.terms.iter().next().unwrap();
            if k.d.is_one() && k.j == 0 {
                return Some(q.clone());
            }
        }
        None
    }

    /// Adds `coeff * sqrt(d) * cbrt(kernel)^j`; `d` must be positive
    /// squarefree, the cube kernel positive cubefree and consistent across
    /// the element.
    pub fn add_term(&mut self, coeff: Rational, d: BigInt, j: u8, cube_kernel: Option<BigInt>) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(d.is_positive());
        debug_assert!(j < 3);
        if j > 0 {
            let e = cube_kernel.expect("cube exponent requires a kernel");
            match &self.cube_kernel {
                None => self.cube_kernel = Some(e),
                Some(existing) => assert_eq!(existing, &e, "mixed cube kernels"),
            }
        }
        let key = RKey { d, j };
        let entry = self.terms.entry(key).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            let key = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone());
            if let Some(key) = key {
                self.terms.remove(&key);
            }
        }
    }

    pub fn neg(&self) -> Self {
        RealRadical {
            cube_kernel: self.cube_kernel.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(v.clone(), k.d.clone(), k.j, rhs.cube_kernel.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let kernel = match (&self.cube_kernel, &rhs.cube_kernel) {
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "mixed cube kernels");
                Some(a.clone())
            }
            (Some(a), None) => Some(a.clone()),
            (None, b) => b.clone(),
        };
        let mut out = RealRadical { cube_kernel: kernel.clone(), terms: BTreeMap::new() };
        for (ka, va) in &self.terms {
            for (kb, vb) in &rhs.terms {
                // sqrt(d1) sqrt(d2) = g sqrt((d1/g)(d2/g)) with g = gcd.
                let g = ka.d.gcd(&kb.d);
                let d = (&ka.d / &g) * (&kb.d / &g);
                let mut coeff = va * vb * Rational::from(g);
                let mut j = ka.j + kb.j;
                if j >= 3 {
                    j -= 3;
                    coeff *= Rational::from(kernel.clone().expect("cube kernel present"));
                }
                out.add_term(coeff, d, j, kernel.clone());
            }
        }
        out
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        RealRadical {
            cube_kernel: self.cube_kernel.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * q)).collect(),
        }
    }

    /// Exact sign with an enclosing interval. The zero case is decided
    /// exactly from the canonical basis; otherwise intervals refine until
    /// the sign resolves or `max_bits` is exhausted.
    pub fn sign(&self, max_bits: u32) -> Result<(Sign, (Rational, Rational)), TowerError> {
        if self.is_zero() {
            return Ok((Sign::Zero, (Rational::zero(), Rational::zero())));
        }
        if let Some(q) = self.as_rational() {
            let sign = if q.is_positive() { Sign::Positive } else { Sign::Negative };
            return Ok((sign, (q.clone(), q)));
        }
        let mut bits = 32u32;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Ok((Sign::Positive, (lo, hi)));
            }
            if hi.is_negative() {
                return Ok((Sign::Negative, (lo, hi)));
            }
            if bits >= max_bits {
                return Err(TowerError::PrecisionExhausted);
            }
            bits = (bits * 2).min(max_bits);
        }
    }

    fn enclose(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (key, coeff) in &self.terms {
            // Radical part is positive: sqrt(d) * cbrt(e)^j with d, e > 0.
            let (mut rlo, mut rhi) = sqrt_enclosure(&key.d, bits);
            if key.j > 0 {
                let e = self.cube_kernel.as_ref().unwrap();
                let ej = e.pow(key.j as u32);
                let (clo, chi) = cbrt_enclosure(&ej, bits);
                rlo *= clo;
                rhi *= chi;
            }
            if coeff.is_positive() {
                lo += coeff * &rlo;
                hi += coeff * &rhi;
            } else {
                lo += coeff * &rhi;
                hi += coeff * &rlo;
            }
        }
        (lo, hi)
    }
}

/// Encloses √n for a positive integer in a width-2⁻ᵏ rational interval.
fn sqrt_enclosure(n: &BigInt, bits: u32) -> (Rational, Rational) {
    if n.is_one() {
        return (Rational::one(), Rational::one());
    }
    let scale = BigInt::one() << bits;
    let scaled = n * &scale * &scale;
    let root = scaled.sqrt();
    (
        Rational::new(root.clone(), scale.clone()),
        Rational::new(root + BigInt::one(), scale),
    )
}

/// Encloses ∛n for a positive integer.
fn cbrt_enclosure(n: &BigInt, bits: u32) -> (Rational, Rational) {
    if n.is_one() {
        return (Rational::one(), Rational::one());
    }
    let scale = BigInt::one() << bits;
    let scaled = n * &scale * &scale * &scale;
    let root = scaled.cbrt();
    (
        Rational::new(root.clone(), scale.clone()),
        Rational::new(root + BigInt::one(), scale),
    )
}

impl fmt::Debug for RealRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", v)?;
            if !k.d.is_one() {
                write!(f, "*sqrt({})", k.d)?;
            }
            if k.j > 0 {
                write!(f, "*cbrt({})^{}", self.cube_kernel.as_ref().unwrap(), k.j)?;
            }
        }
        Ok(())
    }
}
