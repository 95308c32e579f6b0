//! Expression parser: variables `x0..xN`/`y0..yN`, the scalar `t`, rational
//! literals, `+ - * / ^`, parentheses, and `sqrt(...)`/`cbrt(...)` of
//! rational functions in `t`. Radicands register tower generators
//! automatically, canonicalized by square/cube class.

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{RatFunc, Rational};
use crate::poly::{MPoly, VariableSpace};
use crate::tower::{TowerElement, TowerSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unsupported radicand at position {pos}: argument must be a rational function in t")]
    UnsupportedRadicand { pos: usize },
    #[error("division at position {pos} requires an invertible scalar divisor")]
    NonScalarDivisor { pos: usize },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("variable {name} not available in the target space")]
    UnknownVariable { name: String },
    #[error(transparent)]
    Tower(#[from] crate::tower::TowerError),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Var(String),
    Param,
    Sqrt,
    Cbrt,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                tokens.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                tokens.push((start, Token::Num(n)));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "t" => Token::Param,
                    "sqrt" => Token::Sqrt,
                    "cbrt" => Token::Cbrt,
                    _ if (word.starts_with('x') || word.starts_with('y'))
                        && word[1..].chars().all(|c| c.is_ascii_digit())
                        && word.len() > 1 =>
                    {
                        Token::Var(word.to_string())
                    }
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: start,
                            msg: format!("unknown identifier `{}`", word),
                        })
                    }
                };
                tokens.push((start, tok));
            }
            _ => {
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character `{}`", c) })
            }
        }
    }
    Ok(tokens)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(BigInt),
    Var(String),
    Param,
    Radical { cube: bool, arg: Box<Ast>, pos: usize },
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, u32),
}

struct Parser<'a> {
    tokens: &'a [(usize, Token)],
    pos: usize,
    text_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.text_len)
    }

    fn advance(&mut self) -> Option<&(usize, Token)> {
        let t = self.tokens.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Token, what: &str) -> Result<(), ParseError> {
        match self.advance() {
            Some((_, t)) if *t == tok => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(ParseError::Syntax { pos: self.here(), msg: format!("expected {}", what) })
            }
        }
    }

    fn parse_expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.parse_factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.advance();
                    let rhs = self.parse_factor()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    let pos = self.here();
                    self.advance();
                    let rhs = self.parse_factor()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Ast, ParseError> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.advance();
            let inner = self.parse_factor()?;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> Result<Ast, ParseError> {
        let base = self.parse_atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.advance();
            let pos = self.here();
            match self.advance() {
                Some((_, Token::Num(n))) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent out of range".into(),
                    })?;
                    return Ok(Ast::Pow(Box::new(base), e));
                }
                _ => {
                    return Err(ParseError::Syntax { pos, msg: "expected integer exponent".into() })
                }
            }
        }
        Ok(base)
    }

    fn parse_atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.here();
        match self.advance().cloned() {
            Some((_, Token::Num(n))) => Ok(Ast::Num(n)),
            Some((_, Token::Var(name))) => Ok(Ast::Var(name)),
            Some((_, Token::Param)) => Ok(Ast::Param),
            Some((p, Token::Sqrt)) => {
                self.expect(Token::LParen, "`(` after sqrt")?;
                let arg = self.parse_expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(Ast::Radical { cube: false, arg: Box::new(arg), pos: p })
            }
            Some((p, Token::Cbrt)) => {
                self.expect(Token::LParen, "`(` after cbrt")?;
                let arg = self.parse_expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(Ast::Radical { cube: true, arg: Box::new(arg), pos: p })
            }
            Some((_, Token::LParen)) => {
                let inner = self.parse_expr()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(inner)
            }
            Some((p, tok)) => {
                Err(ParseError::Syntax { pos: p, msg: format!("unexpected token {:?}", tok) })
            }
            None => Err(ParseError::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Folds a scalar subtree to a rational function in `t`; radicals and
/// variables are rejected (they make the radicand non-rational).
fn fold_scalar(ast: &Ast) -> Result<RatFunc, Option<usize>> {
    match ast {
        Ast::Num(n) => Ok(RatFunc::from_rational(Rational::from(n.clone()))),
        Ast::Param => Ok(RatFunc::var()),
        Ast::Var(_) | Ast::Radical { .. } => Err(None),
        Ast::Neg(a) => Ok(-&fold_scalar(a)?),
        Ast::Add(a, b) => Ok(&fold_scalar(a)? + &fold_scalar(b)?),
        Ast::Sub(a, b) => Ok(&fold_scalar(a)? - &fold_scalar(b)?),
        Ast::Mul(a, b) => Ok(&fold_scalar(a)? * &fold_scalar(b)?),
        Ast::Div(a, b, pos) => {
            fold_scalar(a)?.checked_div(&fold_scalar(b)?).map_err(|_| Some(*pos))
        }
        Ast::Pow(a, e) => Ok(fold_scalar(a)?.pow(*e as usize)),
    }
}

fn collect(ast: &Ast, vars: &mut Vec<String>, sqrts: &mut Vec<RatFunc>, cbrts: &mut Vec<RatFunc>) -> Result<(), ParseError> {
    match ast {
        Ast::Num(_) | Ast::Param => Ok(()),
        Ast::Var(name) => {
            if !vars.contains(name) {
                vars.push(name.clone());
            }
            Ok(())
        }
        Ast::Radical { cube, arg, pos } => {
            collect(arg, vars, sqrts, cbrts)?;
            let r = fold_scalar(arg).map_err(|div_pos| match div_pos {
                Some(p) => ParseError::DivisionByZero { pos: p },
                None => ParseError::UnsupportedRadicand { pos: *pos },
            })?;
            if *cube {
                cbrts.push(r);
            } else {
                sqrts.push(r);
            }
            Ok(())
        }
        Ast::Neg(a) | Ast::Pow(a, _) => collect(a, vars, sqrts, cbrts),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b, _) => {
            collect(a, vars, sqrts, cbrts)?;
            collect(b, vars, sqrts, cbrts)
        }
    }
}

fn eval(
    ast: &Ast,
    space: &Arc<VariableSpace>,
    tower: &Arc<TowerSpec>,
) -> Result<MPoly, ParseError> {
    match ast {
        Ast::Num(n) => Ok(MPoly::constant(
            space,
            TowerElement::from_rational(tower, Rational::from(n.clone())),
        )),
        Ast::Param => Ok(MPoly::constant(space, TowerElement::param(tower))),
        Ast::Var(name) => MPoly::var_named(space, tower, name)
            .map_err(|_| ParseError::UnknownVariable { name: name.clone() }),
        Ast::Radical { cube, arg, pos } => {
            let r = fold_scalar(arg).map_err(|div_pos| match div_pos {
                Some(p) => ParseError::DivisionByZero { pos: p },
                None => ParseError::UnsupportedRadicand { pos: *pos },
            })?;
            let elem = if *cube {
                TowerElement::cbrt_of(tower, &r)?
            } else {
                if is_negative_like(&r) {
                    // Negative square classes need the imaginary unit, which
                    // the expression grammar does not expose.
                    return Err(ParseError::UnsupportedRadicand { pos: *pos });
                }
                TowerElement::sqrt_of(tower, &r)?
            };
            Ok(MPoly::constant(space, elem))
        }
        Ast::Neg(a) => Ok(-&eval(a, space, tower)?),
        Ast::Add(a, b) => Ok(&eval(a, space, tower)? + &eval(b, space, tower)?),
        Ast::Sub(a, b) => Ok(&eval(a, space, tower)? - &eval(b, space, tower)?),
        Ast::Mul(a, b) => Ok(&eval(a, space, tower)? * &eval(b, space, tower)?),
        Ast::Div(a, b, pos) => {
            let num = eval(a, space, tower)?;
            let den = eval(b, space, tower)?;
            let scalar = den.as_constant().ok_or(ParseError::NonScalarDivisor { pos: *pos })?;
            if scalar.is_zero() {
                return Err(ParseError::DivisionByZero { pos: *pos });
            }
            let inv = scalar.inv().map_err(|_| ParseError::NonScalarDivisor { pos: *pos })?;
            Ok(num.scale(&inv))
        }
        Ast::Pow(a, e) => Ok(eval(a, space, tower)?.pow(*e as usize)),
    }
}

fn is_negative_like(r: &RatFunc) -> bool {
    match r.square_class() {
        Ok((_, rep)) => rep
            .as_rational()
            .map(|q| q < Rational::from_integer(0.into()))
            .unwrap_or(false)
            || rep == RatFunc::from_int(-1),
        Err(_) => false,
    }
}

/// Parses into an inferred space (`x0..xN`, plus `y0..yN` if any `y`
/// appears) over the tower implied by the `sqrt`/`cbrt` subterms.
pub fn parse_expression(text: &str) -> Result<MPoly, ParseError> {
    let (ast, vars, sqrts, cbrts) = parse_to_ast(text)?;
    let mut max_idx = 0usize;
    let mut any_y = false;
    for v in &vars {
        let idx: usize = v[1..].parse().map_err(|_| ParseError::Syntax {
            pos: 0,
            msg: format!("bad variable index in `{}`", v),
        })?;
        max_idx = max_idx.max(idx);
        any_y |= v.starts_with('y');
    }
    let space = if any_y { VariableSpace::tube_split(max_idx) } else { VariableSpace::tube(max_idx) };
    let mut builder = TowerSpec::builder();
    for r in sqrts {
        builder = builder.sqrt(r);
    }
    for r in cbrts {
        builder = builder.cbrt(r);
    }
    let tower = builder.build()?;
    eval(&ast, &space, &tower)
}

/// Parses into a caller-fixed space and tower; every variable and radicand
/// must already be available there.
pub fn parse_expression_in(
    text: &str,
    space: &Arc<VariableSpace>,
    tower: &Arc<TowerSpec>,
) -> Result<MPoly, ParseError> {
    let (ast, _, _, _) = parse_to_ast(text)?;
    eval(&ast, space, tower)
}

/// Parsed tree plus the variables, square radicands, and cube radicands it
/// mentions.
type ParsedParts = (Ast, Vec<String>, Vec<RatFunc>, Vec<RatFunc>);

fn parse_to_ast(text: &str) -> Result<ParsedParts, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens: &tokens, pos: 0, text_len: text.len() };
    let ast = parser.parse_expr()?;
    if parser.pos < tokens.len() {
        return Err(ParseError::Syntax {
            pos: parser.here(),
            msg: "trailing input after expression".into(),
        });
    }
    let mut vars = Vec::new();
    let mut sqrts = Vec::new();
    let mut cbrts = Vec::new();
    collect(&ast, &mut vars, &mut sqrts, &mut cbrts)?;
    Ok((ast, vars, sqrts, cbrts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;

    #[test]
    fn simple_polynomial() {
        let p = parse_expression("x1^2 - x2*x3").unwrap();
        assert_eq!(p.to_string(), "x1^2 - x2*x3");
        assert_eq!(p.space().dim(), 4); // x0..x3
    }

    #[test]
    fn radical_coefficient_roundtrip() {
        let p = parse_expression("2*sqrt(3*t)*x1*x2^2").unwrap();
        assert_eq!(p.tower().generators().len(), 1);
        let rendered = p.to_string();
        assert_eq!(rendered, "(2*sqrt(3*t))*x1*x2^2");
        let again = parse_expression(&rendered).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn syntax_error_with_position() {
        let err = parse_expression("x1 + + x2").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { pos: 5, .. }), "got {:?}", err);
        assert!(parse_expression("x1 +").is_err());
        assert!(parse_expression("(x1").is_err());
        assert!(parse_expression("x1 x2").is_err());
    }

    #[test]
    fn radicand_must_be_rational_in_t() {
        let err = parse_expression("sqrt(x1)").unwrap_err();
        assert!(matches!(err, ParseError::UnsupportedRadicand { .. }));
        let err = parse_expression("sqrt(sqrt(t))").unwrap_err();
        assert!(matches!(err, ParseError::UnsupportedRadicand { .. }));
    }

    #[test]
    fn rational_literals_and_division() {
        let p = parse_expression("3/4*x1 - x1/2").unwrap();
        let expected = parse_expression("1/4*x1").unwrap();
        assert_eq!(p, expected);
        assert!(matches!(
            parse_expression("x1/x2"),
            Err(ParseError::NonScalarDivisor { .. })
        ));
        assert!(matches!(parse_expression("x1/0"), Err(ParseError::DivisionByZero { .. })));
    }

    #[test]
    fn division_by_radical_scalar() {
        // (1+t)/sqrt(3t) = (1+t)/(3t) * sqrt(3t)
        let p = parse_expression("(1+t)/sqrt(3*t)*x1").unwrap();
        let tower = p.tower().clone();
        let rf = RatFunc::new(UniPoly::from_ints(&[1, 1]), UniPoly::from_ints(&[0, 3]));
        let s = TowerElement::sqrt_of(&tower, &RatFunc::from_poly(UniPoly::from_ints(&[0, 3]))).unwrap();
        let expected_coeff = s.scale(&rf);
        let x1 = MPoly::var_named(p.space(), &tower, "x1").unwrap();
        assert_eq!(p, x1.scale(&expected_coeff));
    }

    #[test]
    fn same_class_radicands_unify() {
        let p = parse_expression("sqrt(12*t) - 2*sqrt(3*t)").unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn cbrt_parses() {
        let p = parse_expression("cbrt(9*t^3+243)*x1").unwrap();
        assert_eq!(p.tower().generators().len(), 1);
        let again = parse_expression(&p.to_string()).unwrap();
        assert_eq!(again, p);
    }
}
