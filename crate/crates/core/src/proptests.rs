//! Cross-module randomized properties.

use num_traits::One;
use proptest::prelude::*;

use crate::arith::{RatFunc, Rational, UniPoly};

pub fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| crate::arith::rat(n, d))
}

pub fn arb_unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    proptest::collection::vec(arb_rational(), 0..=max_deg + 1).prop_map(UniPoly::new)
}

pub fn arb_ratfunc() -> impl Strategy<Value = RatFunc> {
    (arb_unipoly(3), arb_unipoly(2)).prop_map(|(num, den)| {
        let den = if den.is_zero() { UniPoly::one() } else { den };
        RatFunc::new(num, den)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ratfunc_field_axioms((a, b, c) in (arb_ratfunc(), arb_ratfunc(), arb_ratfunc())) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn ratfunc_canonical_idempotent(a in arb_ratfunc()) {
        // Re-normalizing the stored pair must be the identity.
        let again = RatFunc::new(a.numer().clone(), a.denom().clone());
        prop_assert_eq!(&again, &a);
        prop_assert!(a.is_zero() || a.denom().leading_coeff().is_one());
    }

    #[test]
    fn squarefree_part_mod_squares((p, q) in (arb_unipoly(3), arb_unipoly(2))) {
        use crate::arith::squarefree_part;
        prop_assume!(!p.is_zero() && !q.is_zero());
        let pq2 = &p * &(&q * &q);
        let a = squarefree_part(&pq2).unwrap();
        let b = squarefree_part(&p).unwrap();
        // Equal up to a nonzero rational unit; with canonical normalization
        // the representatives agree exactly.
        prop_assert_eq!(a, b);
    }
}

mod parser_roundtrip {
    use super::*;
    use crate::poly::{MPoly, VariableSpace};
    use crate::tower::{TowerElement, TowerSpec};
    use std::sync::Arc;

    fn radical_tower() -> Arc<TowerSpec> {
        let three_t = RatFunc::new(UniPoly::from_ints(&[0, 3]), UniPoly::one());
        let two_two_t = RatFunc::new(UniPoly::from_ints(&[2, 2]), UniPoly::one());
        TowerSpec::builder().sqrt(three_t).sqrt(two_two_t).build().unwrap()
    }

    fn arb_tower_element(spec: Arc<TowerSpec>) -> impl Strategy<Value = TowerElement> {
        proptest::collection::vec((arb_ratfunc(), 0u8..4), 1..3).prop_map(move |parts| {
            let mut acc = TowerElement::zero(&spec);
            for (coeff, mask) in parts {
                let mut term = TowerElement::from_ratfunc(&spec, coeff);
                if mask & 1 != 0 {
                    term = &term * &TowerElement::generator(&spec, 0);
                }
                if mask & 2 != 0 {
                    term = &term * &TowerElement::generator(&spec, 1);
                }
                acc = &acc + &term;
            }
            acc
        })
    }

    fn arb_mpoly() -> impl Strategy<Value = MPoly> {
        let spec = radical_tower();
        let space = VariableSpace::tube(3);
        proptest::collection::vec(
            (proptest::collection::vec(0u16..3, 4), arb_tower_element(spec.clone())),
            0..6,
        )
        .prop_map(move |terms| {
            let mut p = MPoly::zero(&space, &spec);
            for (exps, coeff) in terms {
                p.add_term(exps, coeff);
            }
            p
        })
    }

    /// Low-degree variant keeping the substitution-homomorphism expansion
    /// bounded.
    fn arb_small_mpoly() -> impl Strategy<Value = MPoly> {
        let spec = radical_tower();
        let space = VariableSpace::tube(3);
        proptest::collection::vec(
            (proptest::collection::vec(0u16..2, 4), arb_tower_element(spec.clone())),
            0..4,
        )
        .prop_map(move |terms| {
            let mut p = MPoly::zero(&space, &spec);
            for (exps, coeff) in terms {
                p.add_term(exps, coeff);
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn parse_render_roundtrip(p in arb_mpoly()) {
            let rendered = p.to_string();
            let parsed = crate::parse::parse_expression_in(&rendered, p.space(), p.tower())
                .expect("canonical rendering re-parses");
            prop_assert_eq!(parsed, p);
        }

        #[test]
        fn tower_ring_axioms((a, b, c) in (
            arb_tower_element(radical_tower()),
            arb_tower_element(radical_tower()),
            arb_tower_element(radical_tower()),
        )) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn tower_inverse_roundtrip(a in arb_tower_element(radical_tower())) {
            prop_assume!(!a.is_zero());
            let inv = a.inv().expect("nonzero radical element inverts");
            prop_assert!((&a * &inv).is_one());
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn substitution_is_ring_homomorphism_random((p, q, img1, img2) in (
            arb_small_mpoly(), arb_small_mpoly(), arb_small_mpoly(), arb_small_mpoly(),
        )) {
            let mut bindings = std::collections::BTreeMap::new();
            bindings.insert("x1".to_string(), img1);
            bindings.insert("x3".to_string(), img2);
            let lhs = (&p * &q).substitute(&bindings).unwrap();
            let rhs = &p.substitute(&bindings).unwrap() * &q.substitute(&bindings).unwrap();
            prop_assert_eq!(lhs, rhs);
            let sum_lhs = (&p + &q).substitute(&bindings).unwrap();
            let sum_rhs = &p.substitute(&bindings).unwrap() + &q.substitute(&bindings).unwrap();
            prop_assert_eq!(sum_lhs, sum_rhs);
        }
    }

    #[test]
    fn generator_relations_vanish() {
        // g^e - radicand is identically zero for every declared generator.
        let spec = radical_tower();
        for (idx, g) in spec.generators().iter().enumerate() {
            let elem = TowerElement::generator(&spec, idx);
            let crate::tower::GenKind::Sqrt(radicand) = &g.kind else {
                panic!("test tower is quadratic");
            };
            let diff = &elem.pow(2) - &TowerElement::from_ratfunc(&spec, radicand.clone());
            assert!(crate::tower::tower_is_zero(&diff));
        }
    }
}
