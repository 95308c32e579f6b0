//! The catalog of explicit polynomial automorphisms together with the
//! quadrics they target.

use std::sync::Arc;

use crate::arith::{RatFunc, UniPoly};
use crate::geometry::{
    calpt_base, m1_base, m2_base, pt_base, st_base, FamilyTag, GeometryError, HermitianQuadric,
    ParamValue, TubeBase,
};
use crate::poly::ComplexExpr;
use crate::tower::{TowerElement, TowerSpec};

use super::{MapsError, PolyAutomorphism};

struct Cx {
    n: usize,
    tower: Arc<TowerSpec>,
}

impl Cx {
    fn z(&self, j: usize) -> ComplexExpr {
        ComplexExpr::z(self.n, &self.tower, j)
    }

    fn zero(&self) -> ComplexExpr {
        ComplexExpr::zero(self.n, &self.tower)
    }

    fn i(&self) -> TowerElement {
        TowerElement::imaginary(&self.tower).expect("catalog towers carry i")
    }

    fn rf(&self, r: RatFunc) -> TowerElement {
        TowerElement::from_ratfunc(&self.tower, r)
    }

    fn q(&self, num: i64, den: i64) -> TowerElement {
        self.rf(RatFunc::new(UniPoly::from_ints(&[num]), UniPoly::from_ints(&[den])))
    }

    fn sqrt(&self, r: &RatFunc) -> TowerElement {
        TowerElement::sqrt_of(&self.tower, r).expect("radicand declared in the tower")
    }

    /// 1/sqrt(2) as a tower element.
    fn inv_sqrt2(&self) -> TowerElement {
        let two = RatFunc::from_int(2);
        self.sqrt(&two).scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2])))
    }

    fn sum_squares(&self, js: impl Iterator<Item = usize>) -> ComplexExpr {
        let mut acc = self.zero();
        for j in js {
            acc = &acc + &self.z(j).pow(2);
        }
        acc
    }
}

fn sqrt2_gaussian_tower() -> Arc<TowerSpec> {
    TowerSpec::builder().sqrt(RatFunc::from_int(2)).imaginary().build().expect("valid tower")
}

/// The map carrying `M1` onto the standard `(n-1,1)` quadric.
pub fn phi1(n: usize) -> Result<PolyAutomorphism, MapsError> {
    let cx = Cx { n, tower: sqrt2_gaussian_tower() };
    let half = cx.q(1, 2);
    let inner = &(&cx.z(0) - &cx.sum_squares(1..n).scale(&half)) + &cx.z(n).pow(2).scale(&half);
    let mut components = vec![inner.scale(&cx.i())];
    for j in 1..=n {
        components.push(cx.z(j).scale(&cx.inv_sqrt2()));
    }
    PolyAutomorphism::new(n, components)
}

/// The map carrying `M2` onto the standard `(n-1,1)` quadric.
pub fn phi2(n: usize) -> Result<PolyAutomorphism, MapsError> {
    let cx = Cx { n, tower: sqrt2_gaussian_tower() };
    let half = cx.q(1, 2);
    let quarter = cx.q(1, 4);
    let inner = &(&(&cx.z(0) - &cx.sum_squares(1..=n - 2).scale(&half))
        - &(&cx.z(n - 1) * &cx.z(n)).scale(&half))
        - &cx.z(n).pow(3).scale(&quarter);
    let mut components = vec![inner.scale(&cx.i())];
    for j in 1..=n - 2 {
        components.push(cx.z(j).scale(&cx.inv_sqrt2()));
    }
    // w = z_n/4-interleaved pair mixing z_{n-1} and z_n^2.
    let w = &cx.z(n - 1).scale(&quarter) + &cx.z(n).pow(2).scale(&cx.q(3, 8));
    components.push((&cx.z(n) + &w).scale(&cx.inv_sqrt2()));
    components.push((&cx.z(n) - &w).scale(&cx.inv_sqrt2()));
    PolyAutomorphism::new(n, components)
}

/// The map transforming the standard quadric into the quadratic tube.
pub fn quadric_to_tube_map(k: usize, n: usize) -> Result<PolyAutomorphism, MapsError> {
    let cx = Cx { n, tower: sqrt2_gaussian_tower() };
    let minus_i = -&cx.i();
    let mut z0 = cx.z(0).scale(&minus_i);
    z0 = &z0 + &cx.sum_squares(1..=k);
    z0 = &z0 - &cx.sum_squares(k + 1..=n);
    let sqrt2 = cx.sqrt(&RatFunc::from_int(2));
    let mut components = vec![z0];
    for j in 1..=n {
        components.push(cx.z(j).scale(&sqrt2));
    }
    PolyAutomorphism::new(n, components)
}

fn pt_tower(t_rf: &RatFunc, negated: bool) -> Result<Arc<TowerSpec>, MapsError> {
    let one = RatFunc::one();
    let two = RatFunc::from_int(2);
    let r_a = &(&one + t_rf) * &two;
    let r_b = t_rf * &RatFunc::from_int(3);
    let num = if negated {
        // (t^2 - 34t + 1)
        &(&(t_rf * t_rf) - &(t_rf * &RatFunc::from_int(34))) + &one
    } else {
        // (-t^2 + 34t - 1)
        &(&(t_rf * &RatFunc::from_int(34)) - &(t_rf * t_rf)) - &one
    };
    let r_d = num.checked_div(&r_b).expect("t != 0 in the family domain");
    Ok(TowerSpec::builder().sqrt(two).sqrt(r_a).sqrt(r_b).sqrt(r_d).imaginary().build()?)
}

/// The automorphism `p_t` carrying `P_t` onto `Q_{k,n-k}`.
pub fn pt_map(k: usize, n: usize, t: &ParamValue) -> Result<PolyAutomorphism, MapsError> {
    if n < 7 || k < 5 || k + 2 > n {
        return Err(MapsError::Geometry(GeometryError::ParameterOutOfDomain(
            "pt_map needs 5 <= k <= n-2, n >= 7".into(),
        )));
    }
    let t_rf = match t {
        ParamValue::Symbolic => RatFunc::var(),
        ParamValue::Rational(q) => RatFunc::from_rational(q.clone()),
    };
    let one = RatFunc::one();
    let two = RatFunc::from_int(2);
    let tower = pt_tower(&t_rf, false)?;
    let cx = Cx { n, tower };
    let r_a = &(&one + &t_rf) * &two;
    let r_b = &t_rf * &RatFunc::from_int(3);
    let r_d = (&(&(&t_rf * &RatFunc::from_int(34)) - &(&t_rf * &t_rf)) - &one)
        .checked_div(&r_b)
        .expect("nonzero");
    let sqrt_a = cx.sqrt(&r_a);
    let sqrt_b = cx.sqrt(&r_b);
    let sqrt_d = cx.sqrt(&r_d);
    let half = cx.q(1, 2);
    let quarter = cx.q(1, 4);
    // (1+t)/sqrt(3t) and (1+t)/(4 sqrt(3t))
    let c_over = sqrt_b.scale(&(&one + &t_rf).checked_div(&r_b).expect("nonzero"));
    let c_over4 = c_over.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[4])));
    let one_plus_t_half = cx.rf((&one + &t_rf).checked_div(&two).expect("nonzero"));
    let t_el = cx.rf(t_rf.clone());

    // Quartic block (z_{k-1}^2 + z_{k+1}^2)(z_{k-1}^2 + t z_{k+1}^2).
    let zk1 = cx.z(k - 1);
    let zk3 = cx.z(k + 1);
    let quartic = &(&zk1.pow(2) + &zk3.pow(2)) * &(&zk1.pow(2) + &zk3.pow(2).scale(&t_el));

    let mut inner = cx.z(0).clone();
    inner = &inner - &cx.sum_squares(1..=k - 2).scale(&half);
    inner = &inner - &(&cx.z(k - 1) * &cx.z(k)).scale(&half);
    inner = &inner - &(&cx.z(k + 1) * &cx.z(k + 2)).scale(&half);
    inner = &inner + &cx.sum_squares(k + 3..=n).scale(&half);
    inner = &inner - &(&(&cx.z(k - 4) * &cx.z(k - 1)) * &cx.z(k + 1)).scale(&sqrt_a.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2]))));
    inner = &inner - &(&cx.z(k - 3) * &cx.z(k + 1).pow(2)).scale(&sqrt_b.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2]))));
    inner = &inner - &(&cx.z(k - 3) * &cx.z(k - 1).pow(2)).scale(&c_over4);
    inner = &inner - &(&cx.z(k - 2) * &cx.z(k - 1).pow(2)).scale(&sqrt_d.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[4]))));
    inner = &inner - &quartic.scale(&cx.q(1, 8));
    let z0 = inner.scale(&cx.i());

    // Shared cubic-correction blocks of the hyperbolic pairs.
    let s_block = &(&(&(&(&cx.z(k - 2) * &cx.z(k - 1)).scale(&sqrt_d)
        + &(&cx.z(k - 4) * &cx.z(k + 1)).scale(&sqrt_a))
        + &(&cx.z(k - 3) * &cx.z(k - 1)).scale(&c_over))
        + &cx.z(k - 1).pow(3))
        + &(&cx.z(k - 1) * &cx.z(k + 1).pow(2)).scale(&one_plus_t_half);
    let t_block = &(&(&(&cx.z(k - 4) * &cx.z(k - 1)).scale(&sqrt_a)
        + &(&cx.z(k - 3) * &cx.z(k + 1)).scale(&sqrt_b.scale(&two)))
        + &(&cx.z(k - 1).pow(2) * &cx.z(k + 1)).scale(&one_plus_t_half))
        + &cx.z(k + 1).pow(3).scale(&t_el);

    let minus_i_quarter = &(-&cx.i()) * &quarter;
    let two_el = cx.rf(two.clone());
    let pair = |lead: &ComplexExpr, tail: &ComplexExpr, block: &ComplexExpr, sign_neg: bool| {
        let lead2 = lead.scale(&two_el);
        let sum = if sign_neg { &(tail - &lead2) + block } else { &(tail + &lead2) + block };
        sum.scale(&minus_i_quarter)
    };

    let mut components = vec![z0];
    for j in 1..=n {
        let comp = if (1..=k.saturating_sub(5)).contains(&j) || (k + 3..=n).contains(&j) {
            cx.z(j).scale(&cx.inv_sqrt2())
        } else if j == k - 4 {
            (&cx.z(k - 4) + &(&cx.z(k - 1) * &cx.z(k + 1)).scale(&sqrt_a.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2])))))
                .scale(&cx.inv_sqrt2())
        } else if j == k - 3 {
            (&(&cx.z(k - 3) + &cx.z(k + 1).pow(2).scale(&sqrt_b.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2]))))) + &cx.z(k - 1).pow(2).scale(&c_over4))
                .scale(&cx.inv_sqrt2())
        } else if j == k - 2 {
            (&cx.z(k - 2) + &cx.z(k - 1).pow(2).scale(&sqrt_d.scale(&RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[4])))))
                .scale(&cx.inv_sqrt2())
        } else if j == k - 1 {
            pair(&cx.z(k - 1), &cx.z(k), &s_block, false)
        } else if j == k {
            pair(&cx.z(k + 1), &cx.z(k + 2), &t_block, false)
        } else if j == k + 1 {
            pair(&cx.z(k - 1), &cx.z(k), &s_block, true)
        } else {
            // j == k + 2
            pair(&cx.z(k + 1), &cx.z(k + 2), &t_block, true)
        };
        components.push(comp);
    }
    PolyAutomorphism::new(n, components)
}

/// The automorphism carrying `𝒫_t` onto `Q_{k,n-k}`.
pub fn calpt_map(k: usize, n: usize, t: &ParamValue) -> Result<PolyAutomorphism, MapsError> {
    if n < 7 || k < 4 || k + 3 > n {
        return Err(MapsError::Geometry(GeometryError::ParameterOutOfDomain(
            "calpt_map needs 4 <= k <= n-3, n >= 7".into(),
        )));
    }
    let t_rf = match t {
        ParamValue::Symbolic => RatFunc::var(),
        ParamValue::Rational(q) => RatFunc::from_rational(q.clone()),
    };
    let one = RatFunc::one();
    let two = RatFunc::from_int(2);
    let tower = pt_tower(&t_rf, true)?;
    let cx = Cx { n, tower };
    let r_a = &(&one + &t_rf) * &two;
    let r_b = &t_rf * &RatFunc::from_int(3);
    let r_d = (&(&(&t_rf * &t_rf) - &(&t_rf * &RatFunc::from_int(34))) + &one)
        .checked_div(&r_b)
        .expect("nonzero");
    let sqrt_a = cx.sqrt(&r_a);
    let sqrt_b = cx.sqrt(&r_b);
    let sqrt_d = cx.sqrt(&r_d);
    let half_rf = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[2]));
    let quarter_rf = RatFunc::new(UniPoly::one(), UniPoly::from_ints(&[4]));
    let half = cx.q(1, 2);
    let quarter = cx.q(1, 4);
    let c_over = sqrt_b.scale(&(&one + &t_rf).checked_div(&r_b).expect("nonzero"));
    let c_over4 = c_over.scale(&quarter_rf);
    let one_plus_t_half = cx.rf((&one + &t_rf).checked_div(&two).expect("nonzero"));
    let t_el = cx.rf(t_rf.clone());

    let zk = cx.z(k);
    let zk2 = cx.z(k + 2);
    let quartic = &(&zk.pow(2) + &zk2.pow(2)) * &(&zk.pow(2) + &zk2.pow(2).scale(&t_el));

    let mut inner = cx.z(0).clone();
    inner = &inner - &cx.sum_squares(1..=k - 2).scale(&half);
    inner = &inner + &cx.z(k - 1).pow(2).scale(&half);
    inner = &inner - &(&cx.z(k) * &cx.z(k + 1)).scale(&half);
    inner = &inner - &(&cx.z(k + 2) * &cx.z(k + 3)).scale(&half);
    inner = &inner + &cx.sum_squares(k + 4..=n).scale(&half);
    inner = &inner - &(&(&cx.z(k - 3) * &cx.z(k)) * &cx.z(k + 2)).scale(&sqrt_a.scale(&half_rf));
    inner = &inner - &(&cx.z(k - 2) * &cx.z(k + 2).pow(2)).scale(&sqrt_b.scale(&half_rf));
    inner = &inner - &(&cx.z(k - 2) * &cx.z(k).pow(2)).scale(&c_over4);
    inner = &inner - &(&cx.z(k - 1) * &cx.z(k).pow(2)).scale(&sqrt_d.scale(&quarter_rf));
    inner = &inner - &quartic.scale(&cx.q(1, 8));
    let z0 = inner.scale(&cx.i());

    let s_block = &(&(&(&(&cx.z(k - 1) * &cx.z(k)).scale(&sqrt_d)
        + &(&cx.z(k - 3) * &cx.z(k + 2)).scale(&sqrt_a))
        + &(&cx.z(k - 2) * &cx.z(k)).scale(&c_over))
        + &cx.z(k).pow(3))
        + &(&cx.z(k) * &cx.z(k + 2).pow(2)).scale(&one_plus_t_half);
    let t_block = &(&(&(&cx.z(k - 3) * &cx.z(k)).scale(&sqrt_a)
        + &(&cx.z(k - 2) * &cx.z(k + 2)).scale(&sqrt_b.scale(&two)))
        + &(&cx.z(k).pow(2) * &cx.z(k + 2)).scale(&one_plus_t_half))
        + &cx.z(k + 2).pow(3).scale(&t_el);

    let minus_i_quarter = &(-&cx.i()) * &quarter;
    let two_el = cx.rf(two.clone());
    let pair = |lead: &ComplexExpr, tail: &ComplexExpr, block: &ComplexExpr, sign_neg: bool| {
        let lead2 = lead.scale(&two_el);
        let sum = if sign_neg { &(tail - &lead2) + block } else { &(tail + &lead2) + block };
        sum.scale(&minus_i_quarter)
    };

    let mut components = vec![z0];
    for j in 1..=n {
        let comp = if (1..=k.saturating_sub(4)).contains(&j) || (k + 4..=n).contains(&j) {
            cx.z(j).scale(&cx.inv_sqrt2())
        } else if j == k - 3 {
            (&cx.z(k - 3) + &(&cx.z(k) * &cx.z(k + 2)).scale(&sqrt_a.scale(&half_rf)))
                .scale(&cx.inv_sqrt2())
        } else if j == k - 2 {
            (&(&cx.z(k - 2) + &cx.z(k + 2).pow(2).scale(&sqrt_b.scale(&half_rf)))
                + &cx.z(k).pow(2).scale(&c_over4))
                .scale(&cx.inv_sqrt2())
        } else if j == k - 1 {
            pair(&cx.z(k + 2), &cx.z(k + 3), &t_block, false)
        } else if j == k {
            pair(&cx.z(k), &cx.z(k + 1), &s_block, false)
        } else if j == k + 1 {
            (&cx.z(k - 1) - &cx.z(k).pow(2).scale(&sqrt_d.scale(&quarter_rf))).scale(&cx.inv_sqrt2())
        } else if j == k + 2 {
            pair(&cx.z(k), &cx.z(k + 1), &s_block, true)
        } else {
            // j == k + 3
            pair(&cx.z(k + 2), &cx.z(k + 3), &t_block, true)
        };
        components.push(comp);
    }
    PolyAutomorphism::new(n, components)
}

/// The automorphism carrying `S_t` onto `Q'_{3,3}`.
pub fn st_map(t: &ParamValue) -> Result<PolyAutomorphism, MapsError> {
    let t_rf = match t {
        ParamValue::Symbolic => RatFunc::var(),
        ParamValue::Rational(q) => RatFunc::from_rational(q.clone()),
    };
    let tower = TowerSpec::gaussian();
    let cx = Cx { n: 6, tower };
    let half = cx.q(1, 2);
    let quarter = cx.q(1, 4);
    let three_half = cx.q(3, 2);
    let t_half = cx.rf(t_rf.checked_div(&RatFunc::from_int(2)).expect("nonzero"));
    let t_el = cx.rf(t_rf.clone());

    let pairing = &(&(&cx.z(1) * &cx.z(6)) + &(&cx.z(2) * &cx.z(5))) + &(&cx.z(3) * &cx.z(4));
    let cubic = &(&(&cx.z(4).pow(3) + &cx.z(5).pow(3)) + &cx.z(6).pow(3))
        + &(&(&cx.z(4) * &cx.z(5)) * &cx.z(6)).scale(&t_el);
    let inner = &(&cx.z(0) - &pairing.scale(&half)) - &cubic.scale(&quarter);
    let z0 = inner.scale(&cx.i());

    let z1 = &(&cx.z(1) + &cx.z(6).pow(2).scale(&three_half)) + &(&cx.z(4) * &cx.z(5)).scale(&t_half);
    let z2 = &(&cx.z(2) + &cx.z(5).pow(2).scale(&three_half)) + &(&cx.z(4) * &cx.z(6)).scale(&t_half);
    let z3 = &(&cx.z(3) + &cx.z(4).pow(2).scale(&three_half)) + &(&cx.z(5) * &cx.z(6)).scale(&t_half);

    PolyAutomorphism::new(6, vec![z0, z1, z2, z3, cx.z(4), cx.z(5), cx.z(6)])
}

/// Packs the family base, its catalog automorphism, and the target quadric
/// for a sphericity verification.
pub fn sphericity_bundle(
    tag: FamilyTag,
    k: usize,
    n: usize,
    t: &ParamValue,
) -> Result<(TubeBase, PolyAutomorphism, HermitianQuadric), MapsError> {
    match tag {
        FamilyTag::M1 => {
            let map = phi1(n)?;
            let base = m1_base(n)?;
            let quadric = HermitianQuadric::standard(n - 1, n, map.component(0).as_poly().tower());
            Ok((base, map, quadric))
        }
        FamilyTag::M2 => {
            let map = phi2(n)?;
            let base = m2_base(n)?;
            let quadric = HermitianQuadric::standard(n - 1, n, map.component(0).as_poly().tower());
            Ok((base, map, quadric))
        }
        FamilyTag::Pt => {
            let map = pt_map(k, n, t)?;
            let base = pt_base(k, n, t)?;
            let quadric = HermitianQuadric::standard(k, n, map.component(0).as_poly().tower());
            Ok((base, map, quadric))
        }
        FamilyTag::CalPt => {
            let map = calpt_map(k, n, t)?;
            let base = calpt_base(k, n, t)?;
            let quadric = HermitianQuadric::standard(k, n, map.component(0).as_poly().tower());
            Ok((base, map, quadric))
        }
        FamilyTag::St => {
            let map = st_map(t)?;
            let base = st_base(t)?;
            let quadric = HermitianQuadric::prime_33(map.component(0).as_poly().tower());
            Ok((base, map, quadric))
        }
        _ => Err(MapsError::UnsupportedTemplate(format!(
            "no sphericity bundle for family {}",
            tag.name()
        ))),
    }
}
