//! Elements of a tower algebra on the reduced monomial basis.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;


use crate::arith::{RatFunc, Rational};

use super::{GenKind, TowerError, TowerSpec};

/// Reduced basis monomial: one exponent per generator plus the imaginary
/// flag. Radical exponents stay below the relation degree; symbol exponents
/// are unconstrained (negative allowed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct TMono {
    pub exps: Vec<i16>,
    pub imag: bool,
}

impl TMono {
    fn unit(len: usize) -> Self {
        TMono { exps: vec![0; len], imag: false }
    }

    fn is_unit(&self) -> bool {
        !self.imag && self.exps.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TowerElement {
    spec: Arc<TowerSpec>,
    terms: BTreeMap<TMono, RatFunc>,
}

/// Product in the shared tower; the spec form of the operator.
pub fn tower_mul(a: &TowerElement, b: &TowerElement) -> Result<TowerElement, TowerError> {
    if a.spec != b.spec {
        return Err(TowerError::SpecMismatch);
    }
    Ok(a * b)
}

/// Multiplicative inverse computed from the regular representation of
/// multiplication-by-`a` over ℚ(t).
pub fn tower_inv(a: &TowerElement) -> Result<TowerElement, TowerError> {
    a.inv()
}

/// True iff every basis coefficient vanishes; this is an exact zero test
/// provided the spec passed independence validation.
pub fn tower_is_zero(a: &TowerElement) -> bool {
    a.is_zero()
}

impl TowerElement {
    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub(crate) fn terms(&self) -> &BTreeMap<TMono, RatFunc> {
        &self.terms
    }

    pub fn zero(spec: &Arc<TowerSpec>) -> Self {
        TowerElement { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn one(spec: &Arc<TowerSpec>) -> Self {
        Self::from_ratfunc(spec, RatFunc::one())
    }

    pub fn from_ratfunc(spec: &Arc<TowerSpec>, r: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !r.is_zero() {
            terms.insert(TMono::unit(spec.generators().len()), r);
        }
        TowerElement { spec: spec.clone(), terms }
    }

    pub fn from_rational(spec: &Arc<TowerSpec>, q: Rational) -> Self {
        Self::from_ratfunc(spec, RatFunc::from_rational(q))
    }

    pub fn from_int(spec: &Arc<TowerSpec>, n: i64) -> Self {
        Self::from_ratfunc(spec, RatFunc::from_int(n))
    }

    /// The ℚ(t) parameter as an element.
    pub fn param(spec: &Arc<TowerSpec>) -> Self {
        Self::from_ratfunc(spec, RatFunc::var())
    }

    /// The imaginary unit; errors if the spec lacks it.
    pub fn imaginary(spec: &Arc<TowerSpec>) -> Result<Self, TowerError> {
        if !spec.has_imaginary_unit() {
            return Err(TowerError::NotInTower("imaginary unit not declared".into()));
        }
        let mut terms = BTreeMap::new();
        terms.insert(TMono { exps: vec![0; spec.generators().len()], imag: true }, RatFunc::one());
        Ok(TowerElement { spec: spec.clone(), terms })
    }

    /// The generator with index `idx` as an element.
    pub fn generator(spec: &Arc<TowerSpec>, idx: usize) -> Self {
        let mut exps = vec![0i16; spec.generators().len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(TMono { exps, imag: false }, RatFunc::one());
        TowerElement { spec: spec.clone(), terms }
    }

    /// The declared symbol with the given name.
    pub fn symbol(spec: &Arc<TowerSpec>, name: &str) -> Result<Self, TowerError> {
        match spec.generators().iter().position(|g| g.name == name && g.kind == GenKind::Symbol) {
            Some(idx) => Ok(Self::generator(spec, idx)),
            None => Err(TowerError::UnknownGenerator(name.into())),
        }
    }

    /// A square root of `r` expressed through the declared generators:
    /// `sqrt(r) = m * g_{i1} * ... * g_{ik}` (optionally times `i`) when the
    /// square class of `r` lies in the multiplicative span of the declared
    /// classes. Subset products cover radicands whose classes degenerate at
    /// special parameter values.
    pub fn sqrt_of(spec: &Arc<TowerSpec>, r: &RatFunc) -> Result<Self, TowerError> {
        if r.is_zero() {
            return Ok(Self::zero(spec));
        }
        let (m, rep) = r.square_class()?;
        if rep.is_one() {
            return Ok(Self::from_ratfunc(spec, m));
        }
        let quad_gens: Vec<(usize, RatFunc)> = spec
            .generators()
            .iter()
            .enumerate()
            .filter_map(|(idx, g)| match &g.kind {
                GenKind::Sqrt(class) => Some((idx, class.clone())),
                _ => None,
            })
            .collect();
        let classes: Vec<RatFunc> = quad_gens.iter().map(|(_, c)| c.clone()).collect();
        let Some((mask, use_i, m2)) =
            super::square_class_in_span(&rep, &classes, spec.has_imaginary_unit())?
        else {
            return Err(TowerError::NotInTower(format!("sqrt({})", r)));
        };
        let mut out = Self::from_ratfunc(spec, &m * &m2);
        for (pos, (idx, _)) in quad_gens.iter().enumerate() {
            if mask & (1 << pos) != 0 {
                out = &out * &Self::generator(spec, *idx);
            }
        }
        if use_i {
            out = &out * &Self::imaginary(spec)?;
        }
        Ok(out)
    }

    /// The real cube root of `r` through the declared cubic generator.
    pub fn cbrt_of(spec: &Arc<TowerSpec>, r: &RatFunc) -> Result<Self, TowerError> {
        if r.is_zero() {
            return Ok(Self::zero(spec));
        }
        let (m, rep) = r.cube_class()?;
        if rep.is_one() {
            return Ok(Self::from_ratfunc(spec, m));
        }
        for (idx, g) in spec.generators().iter().enumerate() {
            if g.kind == GenKind::Cbrt(rep.clone()) {
                return Ok(&Self::generator(spec, idx) * &Self::from_ratfunc(spec, m));
            }
        }
        Err(TowerError::NotInTower(format!("cbrt({})", r)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_unit() && c.is_one())
    }

    /// The coefficient field element when the value is a pure ℚ(t) scalar.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        if self.terms.is_empty() {
            return Some(RatFunc::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_unit() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.as_ratfunc().and_then(|r| r.as_rational())
    }

    pub fn involves_imaginary(&self) -> bool {
        self.terms.keys().any(|m| m.imag)
    }

    pub fn involves_symbols(&self) -> bool {
        self.terms.keys().any(|m| {
            m.exps.iter().enumerate().any(|(i, &e)| e != 0 && self.spec.generators()[i].kind == GenKind::Symbol)
        })
    }

    /// Conjugation `i -> -i`; identity on towers without the imaginary unit.
    pub fn conj_i(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), if m.imag { -c } else { c.clone() }))
            .collect();
        TowerElement { spec: self.spec.clone(), terms }
    }

    /// Splits as `re + i * im` with both parts free of the imaginary unit.
    pub fn re_im(&self) -> (Self, Self) {
        let mut re = BTreeMap::new();
        let mut im = BTreeMap::new();
        for (m, c) in &self.terms {
            let key = TMono { exps: m.exps.clone(), imag: false };
            if m.imag {
                im.insert(key, c.clone());
            } else {
                re.insert(key, c.clone());
            }
        }
        (
            TowerElement { spec: self.spec.clone(), terms: re },
            TowerElement { spec: self.spec.clone(), terms: im },
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the element in another tower by rewriting every source
    /// generator through the target: square roots resolve through the
    /// target's square-class span, the cube root and symbols match by class
    /// and name, and the imaginary unit must be available if used.
    pub fn embed(&self, target: &Arc<TowerSpec>) -> Result<TowerElement, TowerError> {
        if *target == self.spec {
            return Ok(TowerElement { spec: target.clone(), terms: self.terms.clone() });
        }
        if self.involves_imaginary() && !target.has_imaginary_unit() {
            return Err(TowerError::NotInTower("imaginary unit".into()));
        }
        let mut images = Vec::with_capacity(self.spec.generators().len());
        for g in self.spec.generators() {
            let image = match &g.kind {
                GenKind::Sqrt(class) => Self::sqrt_of(target, class)?,
                GenKind::Cbrt(class) => Self::cbrt_of(target, class)?,
                GenKind::Symbol => Self::symbol(target, &g.name)?,
            };
            images.push(image);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::from_ratfunc(target, c.clone());
            for (src, image) in images.iter().enumerate() {
                let e = m.exps[src];
                if e > 0 {
                    term = &term * &image.pow(e as usize);
                } else if e < 0 {
                    term = &term * &image.pow((-e) as usize).inv()?;
                }
            }
            if m.imag {
                term = &term * &Self::imaginary(target)?;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        TowerElement { spec: self.spec.clone(), terms }
    }

    fn insert_term(terms: &mut BTreeMap<TMono, RatFunc>, mono: TMono, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum: RatFunc = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Reduces a raw exponent vector through the generator relations,
    /// multiplying `coeff` by the radicands consumed.
    fn reduce_mono(spec: &TowerSpec, mut exps: Vec<i16>, imag_count: u32, coeff: &mut RatFunc) -> TMono {
        for (idx, g) in spec.generators().iter().enumerate() {
            match &g.kind {
                GenKind::Sqrt(r) => {
                    while exps[idx] >= 2 {
                        exps[idx] -= 2;
                        *coeff = &*coeff * r;
                    }
                }
                GenKind::Cbrt(r) => {
                    while exps[idx] >= 3 {
                        exps[idx] -= 3;
                        *coeff = &*coeff * r;
                    }
                }
                GenKind::Symbol => {}
            }
        }
        let imag = imag_count % 2 == 1;
        if imag_count / 2 % 2 == 1 {
            *coeff = -&*coeff;
        }
        TMono { exps, imag }
    }

    /// Inverse of a single-term element: radical exponents flip through the
    /// relation, symbol exponents negate, the scalar inverts.
    fn invert_monomial(&self, mono: &TMono, coeff: &RatFunc) -> Result<TowerElement, TowerError> {
        let mut inv_coeff = coeff.recip()?;
        let mut exps = vec![0i16; mono.exps.len()];
        for (idx, g) in self.spec.generators().iter().enumerate() {
            let e = mono.exps[idx];
            if e == 0 {
                continue;
            }
            match &g.kind {
                GenKind::Sqrt(r) => {
                    // g^-1 = g / r
                    exps[idx] = 1;
                    inv_coeff = &inv_coeff * &r.recip()?;
                }
                GenKind::Cbrt(r) => {
                    // g^-e = g^(3-e) / r
                    exps[idx] = 3 - e;
                    inv_coeff = &inv_coeff * &r.recip()?;
                }
                GenKind::Symbol => {
                    exps[idx] = -e;
                }
            }
        }
        let mut terms = BTreeMap::new();
        if mono.imag {
            // i^-1 = -i
            terms.insert(TMono { exps, imag: true }, -&inv_coeff);
        } else {
            terms.insert(TMono { exps, imag: false }, inv_coeff);
        }
        Ok(TowerElement { spec: self.spec.clone(), terms })
    }

    pub fn inv(&self) -> Result<TowerElement, TowerError> {
        if self.is_zero() {
            return Err(TowerError::ZeroDivisor);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return self.invert_monomial(&m.clone(), &c.clone());
        }
        // Factor out a common symbol monomial; the cofactor must then be
        // symbol-free for the finite-dimensional regular representation.
        let sym_slots: Vec<usize> = self
            .spec
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.kind == GenKind::Symbol)
            .map(|(i, _)| i)
            .collect();
        let mut common = vec![0i16; self.spec.generators().len()];
        for &s in &sym_slots {
            common[s] = self.terms.keys().map(|m| m.exps[s]).min().unwrap();
        }
        let shifted: BTreeMap<TMono, RatFunc> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                for &s in &sym_slots {
                    exps[s] -= common[s];
                }
                (TMono { exps, imag: m.imag }, c.clone())
            })
            .collect();
        let cofactor = TowerElement { spec: self.spec.clone(), terms: shifted };
        if cofactor.involves_symbols() {
            return Err(TowerError::ZeroDivisor);
        }
        let cof_inv = cofactor.invert_radical()?;
        // Inverse of the factored-out symbol monomial.
        let mut mono_exps = vec![0i16; self.spec.generators().len()];
        for &s in &sym_slots {
            mono_exps[s] = -common[s];
        }
        let mut terms = BTreeMap::new();
        terms.insert(TMono { exps: mono_exps, imag: false }, RatFunc::one());
        let mono_inv = TowerElement { spec: self.spec.clone(), terms };
        Ok(&cof_inv * &mono_inv)
    }

    /// Regular-representation inverse for symbol-free elements.
    fn invert_radical(&self) -> Result<TowerElement, TowerError> {
        let basis = self.radical_basis();
        let dim = basis.len();
        let index_of = |m: &TMono| basis.binary_search(m).expect("reduced monomial in basis");
        // Columns: coordinates of self * basis[j].
        let mut mat = vec![vec![RatFunc::zero(); dim]; dim];
        for (j, b) in basis.iter().enumerate() {
            let be = TowerElement {
                spec: self.spec.clone(),
                terms: BTreeMap::from([(b.clone(), RatFunc::one())]),
            };
            let prod = self * &be;
            for (m, c) in &prod.terms {
                mat[index_of(m)][j] = c.clone();
            }
        }
        let mut rhs = vec![RatFunc::zero(); dim];
        rhs[index_of(&TMono::unit(self.spec.generators().len()))] = RatFunc::one();
        let solution = solve_ratfunc_system(mat, rhs).ok_or(TowerError::ZeroDivisor)?;
        let mut terms = BTreeMap::new();
        for (j, b) in basis.iter().enumerate() {
            if !solution[j].is_zero() {
                terms.insert(b.clone(), solution[j].clone());
            }
        }
        Ok(TowerElement { spec: self.spec.clone(), terms })
    }

    /// Enumerates the reduced radical basis monomials in sorted order.
    fn radical_basis(&self) -> Vec<TMono> {
        let gens = self.spec.generators();
        let mut basis = vec![TMono::unit(gens.len())];
        for (idx, g) in gens.iter().enumerate() {
            if let Some(deg) = g.relation_degree() {
                let mut next = Vec::new();
                for b in &basis {
                    for e in 0..deg as i16 {
                        let mut exps = b.exps.clone();
                        exps[idx] = e;
                        next.push(TMono { exps, imag: false });
                    }
                }
                basis = next;
            }
        }
        if self.spec.has_imaginary_unit() {
            let mut next = Vec::new();
            for b in &basis {
                next.push(b.clone());
                next.push(TMono { exps: b.exps.clone(), imag: true });
            }
            basis = next;
        }
        basis.sort();
        basis
    }
}

/// Gaussian elimination over the field ℚ(t); canonical reduction of every
/// entry keeps growth in check. Returns `None` for singular systems.
fn solve_ratfunc_system(mut mat: Vec<Vec<RatFunc>>, mut rhs: Vec<RatFunc>) -> Option<Vec<RatFunc>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !mat[r][col].is_zero())?;
        mat.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let inv = mat[col][col].recip().ok()?;
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let factor = &mat[r][col] * &inv;
            for c in col..n {
                let v = &mat[r][c] - &(&factor * &mat[col][c]);
                mat[r][c] = v;
            }
            let v = &rhs[r] - &(&factor * &rhs[col]);
            rhs[r] = v;
        }
    }
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        out.push(&rhs[r] * &mat[r][r].recip().ok()?);
    }
    Some(out)
}

impl Add for &TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        debug_assert_eq!(self.spec, rhs.spec, "tower spec mismatch");
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            TowerElement::insert_term(&mut terms, m.clone(), c.clone());
        }
        TowerElement { spec: self.spec.clone(), terms }
    }
}

impl Sub for &TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &TowerElement) -> TowerElement {
        self + &(-rhs)
    }
}

impl Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        TowerElement { spec: self.spec.clone(), terms }
    }
}

impl Mul for &TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        debug_assert_eq!(self.spec, rhs.spec, "tower spec mismatch");
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut coeff = ca * cb;
                let exps: Vec<i16> = ma.exps.iter().zip(&mb.exps).map(|(x, y)| x + y).collect();
                let imag_count = ma.imag as u32 + mb.imag as u32;
                let mono = TowerElement::reduce_mono(&self.spec, exps, imag_count, &mut coeff);
                TowerElement::insert_term(&mut terms, mono, coeff);
            }
        }
        TowerElement { spec: self.spec.clone(), terms }
    }
}

impl fmt::Display for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Parenthesize any coefficient factor that is not a plain rational,
        // keeping rendered terms valid inside larger products.
        let coeff_factor = |c: &RatFunc| -> String {
            if c.as_rational().is_some() {
                format!("{}", c)
            } else if c.denom().is_one() {
                format!("({})", c.numer())
            } else {
                format!("{}", c)
            }
        };
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if !c.is_one() || m.is_unit() {
                parts.push(coeff_factor(c));
            }
            for (idx, g) in self.spec.generators().iter().enumerate() {
                let e = m.exps[idx];
                if e == 0 {
                    continue;
                }
                let base = match &g.kind {
                    GenKind::Sqrt(r) => format!("sqrt({})", r),
                    GenKind::Cbrt(r) => format!("cbrt({})", r),
                    GenKind::Symbol => g.name.clone(),
                };
                if e == 1 {
                    parts.push(base);
                } else {
                    parts.push(format!("{}^{}", base, e));
                }
            }
            if m.imag {
                parts.push("i".into());
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::UniPoly;
    use crate::tower::TowerSpec;

    fn rf(coeffs: &[i64]) -> RatFunc {
        RatFunc::from_poly(UniPoly::from_ints(coeffs))
    }

    fn pt_style_spec() -> Arc<TowerSpec> {
        TowerSpec::builder()
            .sqrt(rf(&[2]))
            .sqrt(rf(&[2, 2]))
            .sqrt(rf(&[0, 3]))
            .imaginary()
            .build()
            .unwrap()
    }

    #[test]
    fn defining_relations() {
        let spec = pt_style_spec();
        let s3t = TowerElement::sqrt_of(&spec, &rf(&[0, 3])).unwrap();
        // sqrt(3t) * sqrt(3t) = 3t
        assert_eq!((&s3t * &s3t).as_ratfunc().unwrap(), rf(&[0, 3]));
        // sqrt(2(1+t)) * sqrt(3t) squares to 6t(1+t)
        let s2t = TowerElement::sqrt_of(&spec, &rf(&[2, 2])).unwrap();
        let prod = &s2t * &s3t;
        assert_eq!((&prod * &prod).as_ratfunc().unwrap(), &rf(&[2, 2]) * &rf(&[0, 3]));
        // i^2 = -1
        let i = TowerElement::imaginary(&spec).unwrap();
        assert_eq!((&i * &i).as_ratfunc().unwrap(), RatFunc::from_int(-1));
    }

    #[test]
    fn cube_relation_and_inverse() {
        // C = -cbrt((t^3/27 + 1)/3), so C^3 = -(t^3+27)/81.
        let radicand = RatFunc::new(UniPoly::from_ints(&[-27, 0, 0, -1]), UniPoly::from_ints(&[81]));
        let spec = TowerSpec::builder().cbrt(radicand.clone()).build().unwrap();
        let c = TowerElement::cbrt_of(&spec, &radicand).unwrap();
        // C * C^2 = C^3 = radicand
        assert_eq!((&c * &c.pow(2)).as_ratfunc().unwrap(), radicand);
        // inv(C) = -81 C^2/(t^3+27): check by multiplying back.
        let inv = c.inv().unwrap();
        assert!((&inv * &c).is_one());
        let expected = c.pow(2).scale(&RatFunc::new(
            UniPoly::from_ints(&[-81]),
            UniPoly::from_ints(&[27, 0, 0, 1]),
        ));
        assert_eq!(inv, expected);
    }

    #[test]
    fn sqrt_of_rescales_into_class() {
        let spec = pt_style_spec();
        // sqrt(12t) = 2 sqrt(3t)
        let a = TowerElement::sqrt_of(&spec, &rf(&[0, 12])).unwrap();
        let b = TowerElement::sqrt_of(&spec, &rf(&[0, 3])).unwrap();
        assert_eq!(a, b.scale(&rf(&[2])));
        // sqrt(1/(3t)) = sqrt(3t)/(3t)
        let inv_rad = rf(&[1]).checked_div(&rf(&[0, 3])).unwrap();
        let c = TowerElement::sqrt_of(&spec, &inv_rad).unwrap();
        assert_eq!(c, b.scale(&rf(&[1]).checked_div(&rf(&[0, 3])).unwrap()));
        // sqrt of a perfect square is rational: no generator touched.
        let d = TowerElement::sqrt_of(&spec, &rf(&[4])).unwrap();
        assert_eq!(d.as_ratfunc().unwrap(), rf(&[2]));
    }

    #[test]
    fn dependent_triple_reduces_to_a_basis() {
        // {2, 3, 6} is multiplicatively dependent: 2*3*6 = 36. The builder
        // keeps an independent basis and sqrt(6) resolves as sqrt(2)*sqrt(3).
        let spec = TowerSpec::builder()
            .sqrt(rf(&[2]))
            .sqrt(rf(&[3]))
            .sqrt(rf(&[6]))
            .build()
            .unwrap();
        assert_eq!(spec.generators().len(), 2);
        let s2 = TowerElement::sqrt_of(&spec, &rf(&[2])).unwrap();
        let s3 = TowerElement::sqrt_of(&spec, &rf(&[3])).unwrap();
        let s6 = TowerElement::sqrt_of(&spec, &rf(&[6])).unwrap();
        assert_eq!(s6, &s2 * &s3);
        assert_eq!((&s6 * &s6).as_ratfunc().unwrap(), rf(&[6]));
        // sqrt(24) = 2 sqrt(6) through the same span.
        let s24 = TowerElement::sqrt_of(&spec, &rf(&[24])).unwrap();
        assert_eq!(s24, s6.scale(&rf(&[2])));
    }

    #[test]
    fn embed_resolves_across_reduced_towers() {
        // Source declares sqrt(6) directly; target knows only sqrt(2) and
        // sqrt(3). Embedding rewrites through the span.
        let src = TowerSpec::builder().sqrt(rf(&[6])).build().unwrap();
        let dst = TowerSpec::builder().sqrt(rf(&[2])).sqrt(rf(&[3])).build().unwrap();
        let s6 = TowerElement::sqrt_of(&src, &rf(&[6])).unwrap();
        let embedded = s6.embed(&dst).unwrap();
        let expected = &TowerElement::sqrt_of(&dst, &rf(&[2])).unwrap()
            * &TowerElement::sqrt_of(&dst, &rf(&[3])).unwrap();
        assert_eq!(embedded, expected);
    }

    #[test]
    fn inversion_of_sums() {
        let spec = pt_style_spec();
        let s3t = TowerElement::sqrt_of(&spec, &rf(&[0, 3])).unwrap();
        let one = TowerElement::one(&spec);
        // (1 + sqrt(3t))^-1 via regular representation.
        let a = &one + &s3t;
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        // inv(sqrt(3t)) = sqrt(3t)/(3t)
        let inv = s3t.inv().unwrap();
        assert_eq!(inv, s3t.scale(&rf(&[1]).checked_div(&rf(&[0, 3])).unwrap()));
        assert_eq!(TowerElement::zero(&spec).inv(), Err(TowerError::ZeroDivisor));
    }

    #[test]
    fn symbol_laurent_inverses() {
        let spec = TowerSpec::builder().symbol("a").symbol("b").build().unwrap();
        let a = TowerElement::symbol(&spec, "a").unwrap();
        let b = TowerElement::symbol(&spec, "b").unwrap();
        let prod = &a * &b;
        let inv = prod.inv().unwrap();
        assert!((&prod * &inv).is_one());
        // a + b is not a unit in the Laurent ring.
        assert_eq!((&a + &b).inv(), Err(TowerError::ZeroDivisor));
        // a*(1+i)-style mixed units invert.
        let spec = TowerSpec::builder().symbol("a").imaginary().build().unwrap();
        let a = TowerElement::symbol(&spec, "a").unwrap();
        let i = TowerElement::imaginary(&spec).unwrap();
        let u = &a * &(&TowerElement::one(&spec) + &i);
        let inv = u.inv().unwrap();
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn zero_decision_examples() {
        let spec = pt_style_spec();
        let s3t = TowerElement::sqrt_of(&spec, &rf(&[0, 3])).unwrap();
        let s2t = TowerElement::sqrt_of(&spec, &rf(&[2, 2])).unwrap();
        // sqrt(3t)*sqrt(3t) - 3t = 0
        let d = &(&s3t * &s3t) - &TowerElement::from_ratfunc(&spec, rf(&[0, 3]));
        assert!(tower_is_zero(&d));
        // sqrt(2(1+t)) - sqrt(3t) != 0
        assert!(!tower_is_zero(&(&s2t - &s3t)));
        // (1+t)/sqrt(3t) * sqrt(3t) - (1+t) = 0
        let coeff = TowerElement::from_ratfunc(&spec, rf(&[1, 1]));
        let q = &(&coeff * &s3t.inv().unwrap()) * &s3t;
        assert!(tower_is_zero(&(&q - &coeff)));
    }

    #[test]
    fn spec_mismatch_reported() {
        let s1 = pt_style_spec();
        let s2 = TowerSpec::rational();
        let a = TowerElement::one(&s1);
        let b = TowerElement::one(&s2);
        assert_eq!(tower_mul(&a, &b), Err(TowerError::SpecMismatch));
    }

    #[test]
    fn conjugation_and_parts() {
        let spec = TowerSpec::gaussian();
        let i = TowerElement::imaginary(&spec).unwrap();
        let z = &TowerElement::from_int(&spec, 3) + &i.scale(&rf(&[0, 2])); // 3 + 2t i
        let (re, im) = z.re_im();
        assert_eq!(re.as_ratfunc().unwrap(), rf(&[3]));
        assert_eq!(im.as_ratfunc().unwrap(), rf(&[0, 2]));
        let conj = z.conj_i();
        assert_eq!((&z + &conj).as_ratfunc().unwrap(), rf(&[6]));
    }
}
