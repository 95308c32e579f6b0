//! Residual-based verification that a map carries a tube base onto a
//! quadric, plus the reverse quadric-to-tube direction.

use std::collections::BTreeMap;

use crate::geometry::{GeometryError, HermitianQuadric, TubeBase};
use crate::poly::{ComplexExpr, MPoly, VariableSpace};

use super::{catalog::quadric_to_tube_map, MapsError, PolyAutomorphism};

/// Outcome of a residual check; the residual is reported in full for
/// diagnosis, never truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericityOutcome {
    pub verified: bool,
    pub residual: MPoly,
}

/// Forms `r = Im z*_0 - Σ H_jk z*_j conj(z*_k)`, splits into real
/// variables, substitutes `x0 = F(x)`, and reports whether the residual
/// vanishes identically over the tower.
pub fn verify_sphericity(
    base: &TubeBase,
    map: &PolyAutomorphism,
    quadric: &HermitianQuadric,
) -> Result<SphericityOutcome, MapsError> {
    let n = base.n();
    if map.n() != n {
        return Err(MapsError::DimensionMismatch { expected: n, got: map.n() });
    }
    if quadric.n() != n {
        return Err(MapsError::DimensionMismatch { expected: n, got: quadric.n() });
    }
    for (idx, c) in map.components().iter().enumerate() {
        if !c.is_holomorphic() {
            return Err(MapsError::NonHolomorphicComponent(idx));
        }
    }
    let tower = map.component(0).as_poly().tower().clone();

    // Hermitian form of the image: Σ H_jk z*_j conj(z*_k).
    let mut hermitian = ComplexExpr::zero(n, &tower);
    let conjugates: Vec<ComplexExpr> = (1..=n).map(|j| map.component(j).conjugate()).collect();
    for j in 1..=n {
        for k in 1..=n {
            let h = quadric.matrix().at(j - 1, k - 1);
            if h.is_zero() {
                continue;
            }
            let prod = map.component(j) * &conjugates[k - 1];
            hermitian = &hermitian + &prod.scale(h);
        }
    }
    let (_, im_z0) = map.component(0).split()?;
    let (herm_re, herm_im) = hermitian.split()?;
    debug_assert!(herm_im.is_zero(), "Hermitian form values are real");
    let residual_pre = &im_z0 - &herm_re;

    // Restrict to the tube: substitute x0 = F(x1..xn).
    let split_space = VariableSpace::tube_split(n);
    let f_embedded = base.defining().embed(&split_space, &tower)?;
    let mut bindings = BTreeMap::new();
    bindings.insert("x0".to_string(), f_embedded);
    let residual = residual_pre.substitute(&bindings)?;
    Ok(SphericityOutcome { verified: residual.is_zero(), residual })
}

/// Verifies that the map `z*_0 = -i z_0 + Σ_{j<=k} z_j^2 - Σ_{j>k} z_j^2`,
/// `z* = √2 z` carries `Q_{k,n-k}` onto the quadratic tube
/// `x0 = Σ_{j<=k} x_j^2 - Σ_{j>k} x_j^2`.
pub fn verify_quadric_to_tube(k: usize, n: usize) -> Result<SphericityOutcome, MapsError> {
    if n > 2 * k {
        return Err(MapsError::Geometry(GeometryError::ParameterOutOfDomain(format!(
            "the convention requires n <= 2k, got k={}, n={}",
            k, n
        ))));
    }
    if k > n {
        return Err(MapsError::Geometry(GeometryError::ParameterOutOfDomain(
            "k <= n required".into(),
        )));
    }
    let map = quadric_to_tube_map(k, n)?;
    let tower = map.component(0).as_poly().tower().clone();
    let split_space = VariableSpace::tube_split(n);

    // Real parts of the image components.
    let (re0, _) = map.component(0).split()?;
    let mut tube_rhs = MPoly::zero(&split_space, &tower);
    for j in 1..=n {
        let (re_j, _) = map.component(j).split()?;
        let sq = &re_j * &re_j;
        tube_rhs = if j <= k { &tube_rhs + &sq } else { &tube_rhs - &sq };
    }
    let residual_pre = &re0 - &tube_rhs;

    // On the quadric, y0 = Σ_{j<=k} (x_j^2+y_j^2) - Σ_{j>k} (x_j^2+y_j^2).
    let mut levi = MPoly::zero(&split_space, &tower);
    for j in 1..=n {
        let xj = MPoly::var_named(&split_space, &tower, &format!("x{}", j))?;
        let yj = MPoly::var_named(&split_space, &tower, &format!("y{}", j))?;
        let sq = &(&xj * &xj) + &(&yj * &yj);
        levi = if j <= k { &levi + &sq } else { &levi - &sq };
    }
    let mut bindings = BTreeMap::new();
    bindings.insert("y0".to_string(), levi);
    let residual = residual_pre.substitute(&bindings)?;
    Ok(SphericityOutcome { verified: residual.is_zero(), residual })
}
