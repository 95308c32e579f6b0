//! Canonical text rendering: graded-lexicographic term order with explicit
//! `*` and `^`, re-parseable by the expression grammar.

use std::cmp::Ordering;
use std::fmt;

use crate::tower::TowerElement;

use super::MPoly;

fn graded_lex(a: &[u16], b: &[u16]) -> Ordering {
    let da: usize = a.iter().map(|&x| x as usize).sum();
    let db: usize = b.iter().map(|&x| x as usize).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Renders a coefficient as a product factor, parenthesizing anything that
/// would bind wrongly inside a product.
fn coeff_factor(c: &TowerElement) -> (bool, String) {
    if let Some(rf) = c.as_ratfunc() {
        if let Some(q) = rf.as_rational() {
            let neg = q < num_rational::BigRational::from_integer(0.into());
            let mag = if neg { -q } else { q };
            return (neg, format!("{}", crate::arith::RatFunc::from_rational(mag)));
        }
        if rf.denom().is_one() {
            let nonzero = rf.numer().coeffs().iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
            if nonzero == 1 {
                // Bare monomials like `t` or `3*t^2` need no parentheses.
                return (false, format!("{}", rf));
            }
            return (false, format!("({})", rf));
        }
        // `(num)/(den)` is already unambiguous as a factor.
        return (false, format!("{}", rf));
    }
    (false, format!("({})", c))
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u16>, &TowerElement)> = self.terms().iter().collect();
        terms.sort_by(|(ea, _), (eb, _)| graded_lex(eb, ea));
        let mut first = true;
        for (exps, coeff) in terms {
            let mut mono = Vec::new();
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    mono.push(self.space().name(idx).to_string());
                } else {
                    mono.push(format!("{}^{}", self.space().name(idx), e));
                }
            }
            let (neg, cstr) = coeff_factor(coeff);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = cstr == "1";
            if mono.is_empty() {
                write!(f, "{}", cstr)?;
            } else if coeff_is_one {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", cstr, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::super::VariableSpace;
    use super::*;
    use crate::arith::{rat, RatFunc, UniPoly};
    use crate::tower::TowerSpec;

    #[test]
    fn graded_lex_ordering() {
        let space = VariableSpace::tube(3);
        let tower = TowerSpec::rational();
        let x1 = MPoly::var_named(&space, &tower, "x1").unwrap();
        let x2 = MPoly::var_named(&space, &tower, "x2").unwrap();
        let x3 = MPoly::var_named(&space, &tower, "x3").unwrap();
        let p = &(&(&x2 * &x3) + &x1.pow(3)) - &x1.scale_rf(&RatFunc::from_rational(rat(1, 2)));
        assert_eq!(p.to_string(), "x1^3 + x2*x3 - 1/2*x1");
    }

    #[test]
    fn radical_coefficients_parenthesized() {
        let space = VariableSpace::tube(2);
        let tower = TowerSpec::builder()
            .sqrt(RatFunc::from_poly(UniPoly::from_ints(&[0, 3])))
            .build()
            .unwrap();
        let s3t = crate::tower::TowerElement::sqrt_of(&tower, &RatFunc::from_poly(UniPoly::from_ints(&[0, 3]))).unwrap();
        let x1 = MPoly::var_named(&space, &tower, "x1").unwrap();
        let p = x1.pow(2).scale(&s3t.scale(&RatFunc::from_int(2)));
        assert_eq!(p.to_string(), "(2*sqrt(3*t))*x1^2");
    }
}
