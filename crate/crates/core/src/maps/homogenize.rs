//! The absorption pipeline that exhibits affine homogeneity: translate a
//! base point to the origin, then remove the deviation from the original
//! equation by a fixed sequence of graph-preserving shears: absorb linear
//! terms into x0, absorb quadratic deviations into the paired variables,
//! kill the stray cubic monomials, and absorb the quadratic deviations the
//! kills reintroduce.

use crate::geometry::{FamilyTag, TubeBase};
use crate::poly::MPoly;
use crate::tower::TowerElement;

use super::affine::{apply_affine, AffineGraphMap};
use super::MapsError;

#[derive(Debug, Clone)]
pub struct NormalizationStep {
    pub label: String,
    pub map: AffineGraphMap,
    /// Extracted data: linear forms and constants, rendered canonically.
    pub extracted: Vec<(String, String)>,
}

#[derive(Debug, Clone, Default)]
pub struct NormalizationTrace {
    pub steps: Vec<NormalizationStep>,
}

impl NormalizationTrace {
    /// Recomposes the recorded steps; equals the returned map by
    /// construction.
    pub fn composite(&self) -> Option<AffineGraphMap> {
        let mut iter = self.steps.iter();
        let first = iter.next()?.map.clone();
        Some(iter.fold(first, |acc, s| acc.compose(&s.map)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Template {
    St,
    GenHyper,
}

fn template_of(base: &TubeBase) -> Option<Template> {
    match base.tag() {
        FamilyTag::St => Some(Template::St),
        FamilyTag::GenHyper => Some(Template::GenHyper),
        FamilyTag::Pt => {
            let k5 = base.params().iter().any(|(k, v)| k == "k" && v == "5");
            if k5 && base.n() == 7 {
                Some(Template::GenHyper)
            } else {
                None
            }
        }
        _ => None,
    }
}

fn quad_rules(template: Template) -> &'static [(usize, usize)] {
    match template {
        // Kill L(x)·x4 into x3, then ·x5 into x2, then ·x6 into x1.
        Template::St => &[(4, 3), (5, 2), (6, 1)],
        // Kill L(x)·x4 into x5 and L(x)·x6 into x7.
        Template::GenHyper => &[(4, 5), (6, 7)],
    }
}

/// Returns the maps realizing transitivity: an affine self-map of the base
/// carrying the given on-base point to the origin, plus the step trace.
pub fn homogenize_at(
    base: &TubeBase,
    point: &[TowerElement],
) -> Result<(AffineGraphMap, NormalizationTrace), MapsError> {
    let n = base.n();
    let template = template_of(base).ok_or_else(|| {
        MapsError::UnsupportedTemplate(format!("family {}", base.tag().name()))
    })?;
    if point.len() != n + 1 {
        return Err(MapsError::DimensionMismatch { expected: n + 1, got: point.len() });
    }
    let tower = base.tower().clone();
    let point: Vec<TowerElement> =
        point.iter().map(|v| v.embed(&tower)).collect::<Result<_, _>>()?;
    let value = base.defining().eval_tower(&point)?;
    if !(&value - &point[0]).is_zero() {
        return Err(MapsError::NotOnHypersurface);
    }

    let mut trace = NormalizationTrace::default();
    let mut composite = AffineGraphMap::identity(&tower, n);
    let mut current = base.clone();
    let push = |current: &mut TubeBase,
                    composite: &mut AffineGraphMap,
                    trace: &mut NormalizationTrace,
                    label: &str,
                    map: AffineGraphMap,
                    extracted: Vec<(String, String)>|
     -> Result<(), MapsError> {
        if map.is_identity() {
            return Ok(());
        }
        *current = apply_affine(current, &map)?;
        *composite = composite.compose(&map);
        trace.steps.push(NormalizationStep { label: label.into(), map, extracted });
        Ok(())
    };

    // Translation sending the point to the origin.
    let translation = AffineGraphMap::translation_to_origin(&point);
    push(&mut current, &mut composite, &mut trace, "translate", translation, vec![])?;

    // Absorb linear terms into x0.
    let vars: Vec<usize> = (1..=n).collect();
    let linear = current.defining().homogeneous_component_in(1, &vars);
    let mut m = AffineGraphMap::identity(&tower, n);
    let mut extracted = Vec::new();
    if !linear.is_zero() {
        for i in 1..=n {
            let mut exps = vec![0u16; n + 1];
            exps[i] = 1;
            m.ell[i - 1] = -&linear.coeff(&exps);
        }
        extracted.push(("L0".into(), linear.to_string()));
    }
    push(&mut current, &mut composite, &mut trace, "absorb linear into x0", m, extracted)?;

    let target_q2 = base.defining().homogeneous_component_in(2, &vars);
    let mut label_counter = 1usize;
    let absorb_quadratic = |current: &mut TubeBase,
                                composite: &mut AffineGraphMap,
                                trace: &mut NormalizationTrace,
                                label_counter: &mut usize|
     -> Result<(), MapsError> {
        for &(kill, into) in quad_rules(template) {
            let delta = &current.defining().homogeneous_component_in(2, &vars) - &target_q2;
            if delta.is_zero() {
                continue;
            }
            // L = (x_kill-divisible part of delta) / x_kill.
            let mut l = MPoly::zero(current.defining().space(), &tower);
            for (exps, coeff) in delta.terms() {
                if exps[kill] >= 1 {
                    let mut reduced = exps.clone();
                    reduced[kill] -= 1;
                    l.add_term(reduced, coeff.clone());
                }
            }
            if l.is_zero() {
                continue;
            }
            if l.total_degree() != Some(1) {
                return Err(MapsError::AbsorptionFailed(format!(
                    "deviation at x{} is not linear",
                    kill
                )));
            }
            let mut m = AffineGraphMap::identity(&tower, n);
            for i in 1..=n {
                let mut exps = vec![0u16; n + 1];
                exps[i] = 1;
                let li = l.coeff(&exps);
                if i == into && !li.is_zero() {
                    return Err(MapsError::AbsorptionFailed(format!(
                        "linear form for x{} involves its own target x{}",
                        kill, into
                    )));
                }
                if !li.is_zero() {
                    *m.c.at_mut(into - 1, i - 1) = li;
                }
            }
            let label = format!("absorb L{} into x{}", label_counter, into);
            *label_counter += 1;
            let extracted = vec![(format!("L{}", *label_counter - 1), l.to_string())];
            push(current, composite, trace, &label, m, extracted)?;
        }
        let residual_delta = &current.defining().homogeneous_component_in(2, &vars) - &target_q2;
        if !residual_delta.is_zero() {
            return Err(MapsError::AbsorptionFailed(
                "quadratic deviation outside the template's absorbable span".into(),
            ));
        }
        Ok(())
    };

    absorb_quadratic(&mut current, &mut composite, &mut trace, &mut label_counter)?;

    if template == Template::GenHyper {
        // Divisors are read off the current equation; they are the template
        // coefficients a, b, c and must be invertible.
        let coeff_of = |p: &TubeBase, pattern: &[(usize, u16)]| -> TowerElement {
            let mut exps = vec![0u16; n + 1];
            for &(v, e) in pattern {
                exps[v] += e;
            }
            p.defining().coeff(&exps)
        };
        // Replace x2 by x2 - (A/c) x4 - (B/b) x6.
        let a_coeff = coeff_of(&current, &[(4, 3)]);
        let b_cubic = coeff_of(&current, &[(6, 3)]);
        let c_div = coeff_of(&current, &[(2, 1), (4, 2)]);
        let b_div = coeff_of(&current, &[(2, 1), (6, 2)]);
        if !a_coeff.is_zero() || !b_cubic.is_zero() {
            let c_inv = c_div
                .inv()
                .map_err(|_| MapsError::AbsorptionFailed("coefficient c vanishes".into()))?;
            let b_inv = b_div
                .inv()
                .map_err(|_| MapsError::AbsorptionFailed("coefficient b vanishes".into()))?;
            let mut m = AffineGraphMap::identity(&tower, n);
            *m.c.at_mut(1, 3) = &a_coeff * &c_inv;
            *m.c.at_mut(1, 5) = &b_cubic * &b_inv;
            let extracted = vec![
                ("A".into(), a_coeff.to_string()),
                ("B".into(), b_cubic.to_string()),
            ];
            push(
                &mut current,
                &mut composite,
                &mut trace,
                "replace x2 by x2 - (A/c)x4 - (B/b)x6",
                m,
                extracted,
            )?;
        }
        // Replace x1 by x1 - (D'/a) x4 - (C'/a) x6.
        let d_prime = coeff_of(&current, &[(4, 2), (6, 1)]);
        let c_prime = coeff_of(&current, &[(4, 1), (6, 2)]);
        if !d_prime.is_zero() || !c_prime.is_zero() {
            let a_div = coeff_of(&current, &[(1, 1), (4, 1), (6, 1)]);
            let a_inv = a_div
                .inv()
                .map_err(|_| MapsError::AbsorptionFailed("coefficient a vanishes".into()))?;
            let mut m = AffineGraphMap::identity(&tower, n);
            *m.c.at_mut(0, 3) = &d_prime * &a_inv;
            *m.c.at_mut(0, 5) = &c_prime * &a_inv;
            let extracted = vec![
                ("D'".into(), d_prime.to_string()),
                ("C'".into(), c_prime.to_string()),
            ];
            push(
                &mut current,
                &mut composite,
                &mut trace,
                "replace x1 by x1 - (D'/a)x4 - (C'/a)x6",
                m,
                extracted,
            )?;
        }
        absorb_quadratic(&mut current, &mut composite, &mut trace, &mut label_counter)?;
    }

    if current.defining() != base.defining() {
        return Err(MapsError::NormalizationIncomplete);
    }
    Ok((composite, trace))
}
