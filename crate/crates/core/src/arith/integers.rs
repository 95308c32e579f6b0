//! Integer kernel extraction used for square/cube class canonicalization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Bound for trial division when extracting square/cube kernels. Cofactors
/// past this bound are checked for being perfect powers and otherwise
/// treated as power-free; the parameter values exercised by the catalog stay
/// far below this.
const TRIAL_BOUND: u64 = 100_000;

fn trial_factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut factors = Vec::new();
    let mut p = BigInt::from(2u32);
    while &p * &p <= n && p <= BigInt::from(TRIAL_BOUND) {
        if n.is_multiple_of(&p) {
            let mut e = 0u32;
            while n.is_multiple_of(&p) {
                n /= &p;
                e += 1;
            }
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    factors
}

/// Decomposes `n = kernel * root^2` with `kernel` squarefree (up to the
/// trial-division bound) carrying the sign of `n`.
pub fn int_squarefree_kernel(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "kernel of zero is undefined");
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut kernel = BigInt::one();
    let mut root = BigInt::one();
    for (p, e) in trial_factor(n) {
        if e == 1 {
            // Unfactored cofactor: try a perfect-square salvage.
            if p > BigInt::from(TRIAL_BOUND) {
                let s = p.sqrt();
                if &s * &s == p {
                    root *= s;
                    continue;
                }
            }
            kernel *= p;
        } else {
            root *= p.pow(e / 2);
            if e % 2 == 1 {
                kernel *= p;
            }
        }
    }
    (sign * kernel, root)
}

/// Decomposes `n = kernel * root^3` with `kernel` cubefree and positive-led:
/// the sign of `n` goes into `root` so the kernel is always positive.
pub fn int_cubefree_kernel(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "kernel of zero is undefined");
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut kernel = BigInt::one();
    let mut root = BigInt::one();
    for (p, e) in trial_factor(n) {
        if e == 1 && p > BigInt::from(TRIAL_BOUND) {
            let c = p.cbrt();
            if &c * &c * &c == p {
                root *= c;
                continue;
            }
        }
        root *= p.pow(e / 3);
        kernel *= p.pow(e % 3);
    }
    (kernel, sign * root)
}

/// Writes `c = kernel * m^2` with `kernel` a squarefree integer carrying the
/// sign of `c`.
pub fn rational_square_class(c: &Rational) -> (BigInt, Rational) {
    assert!(!c.is_zero());
    let pq = c.numer() * c.denom();
    let (kernel, root) = int_squarefree_kernel(&pq);
    let m = Rational::new(root, c.denom().clone());
    debug_assert_eq!(Rational::from(kernel.clone()) * &m * &m, *c);
    (kernel, m)
}

/// Writes `c = kernel * m^3` with `kernel` a positive cubefree integer; the
/// sign of `c` lives in `m`.
pub fn rational_cube_class(c: &Rational) -> (BigInt, Rational) {
    assert!(!c.is_zero());
    let pqq = c.numer() * c.denom() * c.denom();
    let (kernel, root) = int_cubefree_kernel(&pqq);
    let m = Rational::new(root, c.denom().clone());
    debug_assert_eq!(Rational::from(kernel.clone()) * &m * &m * &m, *c);
    (kernel, m)
}
