//! The sparse polynomial carrier used by every identity check.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::arith::{RatFunc, Rational};
use crate::tower::{TowerElement, TowerSpec};

use super::{PolyError, VariableSpace};

/// Multivariate polynomial: exponent vectors over a fixed variable space
/// with tower-element coefficients sharing one spec. Zero coefficients are
/// never stored, so equality is term-wise.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    space: Arc<VariableSpace>,
    tower: Arc<TowerSpec>,
    terms: BTreeMap<Vec<u16>, TowerElement>,
}

/// Simultaneous substitution, fully expanded and collected; bindings are
/// keyed by variable name and unbound variables pass through by name into
/// the target space.
pub fn mpoly_substitute(p: &MPoly, bindings: &BTreeMap<String, MPoly>) -> Result<MPoly, PolyError> {
    p.substitute(bindings)
}

/// Sum of the terms of total degree exactly `d` in the listed variables.
pub fn homogeneous_component(p: &MPoly, d: usize, vars: &[usize]) -> MPoly {
    p.homogeneous_component_in(d, vars)
}

impl MPoly {
    pub fn zero(space: &Arc<VariableSpace>, tower: &Arc<TowerSpec>) -> Self {
        MPoly { space: space.clone(), tower: tower.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(space: &Arc<VariableSpace>, c: TowerElement) -> Self {
        let tower = c.spec().clone();
        let mut out = Self::zero(space, &tower);
        out.add_term(vec![0; space.dim()], c);
        out
    }

    pub fn one(space: &Arc<VariableSpace>, tower: &Arc<TowerSpec>) -> Self {
        Self::constant(space, TowerElement::one(tower))
    }

    pub fn var(space: &Arc<VariableSpace>, tower: &Arc<TowerSpec>, idx: usize) -> Self {
        assert!(idx < space.dim());
        let mut exps = vec![0u16; space.dim()];
        exps[idx] = 1;
        let mut out = Self::zero(space, tower);
        out.add_term(exps, TowerElement::one(tower));
        out
    }

    pub fn var_named(
        space: &Arc<VariableSpace>,
        tower: &Arc<TowerSpec>,
        name: &str,
    ) -> Result<Self, PolyError> {
        let idx = space.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        Ok(Self::var(space, tower, idx))
    }

    pub fn space(&self) -> &Arc<VariableSpace> {
        &self.space
    }

    pub fn tower(&self) -> &Arc<TowerSpec> {
        &self.tower
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, TowerElement> {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the monomial with the given exponent vector.
    pub fn coeff(&self, exps: &[u16]) -> TowerElement {
        self.terms.get(exps).cloned().unwrap_or_else(|| TowerElement::zero(&self.tower))
    }

    pub fn as_constant(&self) -> Option<TowerElement> {
        if self.terms.is_empty() {
            return Some(TowerElement::zero(&self.tower));
        }
        if self.terms.len() == 1 {
            let (exps, c) = self.terms.iter().next().unwrap();
            if exps.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u16>, coeff: TowerElement) {
        debug_assert_eq!(exps.len(), self.space.dim());
        debug_assert_eq!(coeff.spec(), &self.tower);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum: TowerElement = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &TowerElement) -> Self {
        if c.is_zero() {
            return Self::zero(&self.space, &self.tower);
        }
        let mut out = Self::zero(&self.space, &self.tower);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn scale_rf(&self, c: &RatFunc) -> Self {
        self.scale(&TowerElement::from_ratfunc(&self.tower, c.clone()))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(&self.space, &self.tower);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Degree in a subset of variables of one term.
    fn term_degree_in(exps: &[u16], vars: &[usize]) -> usize {
        vars.iter().map(|&v| exps[v] as usize).sum()
    }

    pub fn homogeneous_component_in(&self, d: usize, vars: &[usize]) -> Self {
        let mut out = Self::zero(&self.space, &self.tower);
        for (e, c) in &self.terms {
            if Self::term_degree_in(e, vars) == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Component of total degree `d` in all variables.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let all: Vec<usize> = (0..self.space.dim()).collect();
        self.homogeneous_component_in(d, &all)
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.space, &self.tower);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut exps = e.clone();
            exps[var] -= 1;
            let factor = TowerElement::from_int(&self.tower, e[var] as i64);
            out.add_term(exps, c * &factor);
        }
        out
    }

    /// Full evaluation at rational values for every variable.
    pub fn eval_rational(&self, point: &[Rational]) -> Result<TowerElement, PolyError> {
        if point.len() != self.space.dim() {
            return Err(PolyError::DimensionMismatch { expected: self.space.dim(), got: point.len() });
        }
        let mut acc = TowerElement::zero(&self.tower);
        for (e, c) in &self.terms {
            let mut v = Rational::from_integer(1.into());
            for (idx, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    v *= &point[idx];
                }
            }
            acc = &acc + &c.scale(&RatFunc::from_rational(v));
        }
        Ok(acc)
    }

    /// Evaluation at tower-element values for every variable.
    pub fn eval_tower(&self, point: &[TowerElement]) -> Result<TowerElement, PolyError> {
        if point.len() != self.space.dim() {
            return Err(PolyError::DimensionMismatch { expected: self.space.dim(), got: point.len() });
        }
        let mut acc = TowerElement::zero(&self.tower);
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (idx, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    v = &v * &point[idx];
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, MPoly>) -> Result<MPoly, PolyError> {
        for name in bindings.keys() {
            if self.space.index_of(name).is_none() {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
        }
        let (target_space, target_tower) = match bindings.values().next() {
            Some(img) => (img.space.clone(), img.tower.clone()),
            None => (self.space.clone(), self.tower.clone()),
        };
        for img in bindings.values() {
            if img.space != target_space {
                return Err(PolyError::SpaceMismatch);
            }
        }
        let mut power_cache: HashMap<(usize, u16), MPoly> = HashMap::new();
        let mut out = MPoly::zero(&target_space, &target_tower);
        for (exps, coeff) in &self.terms {
            let mut acc = MPoly::constant(&target_space, coeff.embed(&target_tower)?);
            for (idx, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match power_cache.entry((idx, e)) {
                    std::collections::hash_map::Entry::Occupied(entry) => entry.get().clone(),
                    std::collections::hash_map::Entry::Vacant(entry) => {
                        let name = self.space.name(idx);
                        let base = match bindings.get(name) {
                            Some(img) => img.clone(),
                            None => MPoly::var_named(&target_space, &target_tower, name)?,
                        };
                        entry.insert(base.pow(e as usize)).clone()
                    }
                };
                acc = &acc * &factor;
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in a larger space and tower, matching
    /// variables by name.
    pub fn embed(
        &self,
        space: &Arc<VariableSpace>,
        tower: &Arc<TowerSpec>,
    ) -> Result<MPoly, PolyError> {
        let mut map = Vec::with_capacity(self.space.dim());
        for name in self.space.names() {
            map.push(space.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.clone()))?);
        }
        let mut out = MPoly::zero(space, tower);
        for (exps, c) in &self.terms {
            let mut new_exps = vec![0u16; space.dim()];
            for (src, &dst) in map.iter().enumerate() {
                new_exps[dst] = exps[src];
            }
            out.add_term(new_exps, c.embed(tower)?);
        }
        Ok(out)
    }

    /// The variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.space.dim()];
        for e in self.terms.keys() {
            for (idx, &x) in e.iter().enumerate() {
                if x > 0 {
                    used[idx] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.space, rhs.space, "space mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self + &(-rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MPoly { space: self.space.clone(), tower: self.tower.clone(), terms }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        debug_assert_eq!(self.space, rhs.space, "space mismatch");
        let mut out = MPoly::zero(&self.space, &self.tower);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}
