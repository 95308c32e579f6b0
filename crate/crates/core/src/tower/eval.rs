//! Real evaluation of tower elements at rational parameter values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rational_cube_class, rational_square_class, Rational};

use super::element::TowerElement;
use super::real::{RealRadical, Sign};
use super::{GenKind, TowerError};

/// Outcome of a real evaluation: the exact sign and the final enclosing
/// interval (degenerate for exactly-rational or zero values).
#[derive(Debug, Clone, PartialEq)]
pub struct SignEstimate {
    pub sign: Sign,
    pub interval: (Rational, Rational),
}

/// Evaluates `a` at `t = t0` on the declared real branches (nonnegative
/// square roots, real cube root) and decides its sign exactly: zero is
/// detected from the canonical constant-radical form, nonzero signs by
/// interval refinement up to `precision` bits.
pub fn tower_eval_real(
    a: &TowerElement,
    t0: &Rational,
    precision: u32,
) -> Result<SignEstimate, TowerError> {
    let value = eval_to_real(a, t0)?;
    let (sign, interval) = value.sign(precision.max(32))?;
    Ok(SignEstimate { sign, interval })
}

/// Maps a tower element to the canonical constant-radical algebra at `t0`.
pub fn eval_to_real(a: &TowerElement, t0: &Rational) -> Result<RealRadical, TowerError> {
    if a.involves_imaginary() {
        return Err(TowerError::ImaginaryPresent);
    }
    if a.involves_symbols() {
        return Err(TowerError::SymbolPresent);
    }
    let gens = a.spec().generators();
    let mut out = RealRadical::zero();
    for (mono, coeff) in a.terms() {
        let mut q = coeff.eval(t0).ok_or_else(|| TowerError::PoleAt(t0.clone()))?;
        if q.is_zero() {
            continue;
        }
        let mut d = BigInt::one();
        let mut j = 0u8;
        let mut cube_kernel = None;
        let mut term_zero = false;
        for (idx, g) in gens.iter().enumerate() {
            let e = mono.exps[idx];
            if e == 0 {
                continue;
            }
            match &g.kind {
                GenKind::Sqrt(r) => {
                    let rho = r.eval(t0).ok_or_else(|| TowerError::PoleAt(t0.clone()))?;
                    if rho.is_zero() {
                        term_zero = true;
                        break;
                    }
                    if rho.is_negative() {
                        return Err(TowerError::NegativeRadicand {
                            radicand: r.to_string(),
                            at: t0.clone(),
                        });
                    }
                    let (kernel, m) = rational_square_class(&rho);
                    q *= m;
                    // Recombine squarefree kernels: sqrt(d) sqrt(k) = g sqrt(dk/g^2).
                    let g = d.gcd(&kernel);
                    q *= Rational::from(g.clone());
                    d = (&d / &g) * (kernel / g);
                }
                GenKind::Cbrt(r) => {
                    let rho = r.eval(t0).ok_or_else(|| TowerError::PoleAt(t0.clone()))?;
                    if rho.is_zero() {
                        term_zero = true;
                        break;
                    }
                    let (kernel, m) = rational_cube_class(&rho);
                    for _ in 0..e {
                        q *= &m;
                    }
                    if kernel.is_one() {
                        continue;
                    }
                    j = e as u8;
                    cube_kernel = Some(kernel);
                }
                GenKind::Symbol => unreachable!("symbols rejected above"),
            }
        }
        if term_zero {
            continue;
        }
        out.add_term(q, d, j, cube_kernel);
    }
    Ok(out)
}
