use std::sync::OnceLock;

use cellred::coxeter::WeylGroup;
use cellred::klcells::{compute_kl, KLData};
use cellred::poly::{IntPoly, LaurentPoly};
use cellred::rootdata::{build_root_system, CartanType, Weight};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn b2() -> &'static KLData {
    static KL: OnceLock<KLData> = OnceLock::new();
    KL.get_or_init(|| compute_kl(&WeylGroup::generate("B2".parse().unwrap())).unwrap())
}

fn a3() -> &'static KLData {
    static KL: OnceLock<KLData> = OnceLock::new();
    KL.get_or_init(|| compute_kl(&WeylGroup::generate("A3".parse().unwrap())).unwrap())
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..6, -5i64..5), 0..5).prop_map(LaurentPoly::from_terms)
}

fn intpoly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..9, 0..5).prop_map(|c| IntPoly::from_ints(&c))
}

proptest! {
    #[test]
    fn group_multiplication_is_associative(x in 0usize..24, y in 0usize..24, z in 0usize..24) {
        let g = a3().group();
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
    }

    #[test]
    fn inverse_has_same_length(w in 0usize..24) {
        let g = a3().group();
        let inv = g.inverse(w);
        prop_assert_eq!(g.mul(w, inv), 0);
        prop_assert_eq!(g.length(w), g.length(inv));
    }

    #[test]
    fn kl_polys_have_unit_constant_term_and_bounded_degree(y in 0usize..24, w in 0usize..24) {
        let kl = a3();
        let g = kl.group();
        if kl.bruhat().leq(y, w) {
            let p = kl.kl_poly(y, w);
            prop_assert_eq!(p[0], 1);
            let deg = p.len() - 1;
            prop_assert!(y == w || 2 * deg < g.length(w) - g.length(y));
        }
    }

    #[test]
    fn kl_polys_invariant_under_inversion(y in 0usize..8, w in 0usize..8) {
        let kl = b2();
        let g = kl.group();
        if kl.bruhat().leq(y, w) {
            prop_assert_eq!(kl.kl_poly(y, w), kl.kl_poly(g.inverse(y), g.inverse(w)));
        }
    }

    #[test]
    fn structure_constants_are_bar_invariant(x in 0usize..24, y in 0usize..24, z in 0usize..24) {
        let h = a3().h(x, y, z);
        prop_assert_eq!(h.bar(), h.clone());
        prop_assert!(h.degree().is_none_or(|d| d as usize <= a3().a(z)));
    }

    #[test]
    fn a_function_is_constant_on_inverse_pairs(w in 0usize..8) {
        let kl = b2();
        prop_assert_eq!(kl.a(w), kl.a(kl.group().inverse(w)));
    }

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a * &b).at_one(), a.at_one() * b.at_one());
    }

    #[test]
    fn intpoly_product_evaluates_pointwise(a in intpoly(), b in intpoly(), x in -20i64..20) {
        prop_assert_eq!((&a * &b).eval_int(x), a.eval_int(x) * b.eval_int(x));
        prop_assert_eq!((&a + &b).eval_int(x), a.eval_int(x) + b.eval_int(x));
    }

    #[test]
    fn intpoly_display_round_trips(a in intpoly()) {
        let back: IntPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division_undoes_multiplication(a in intpoly(), b in intpoly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }

    #[test]
    fn weyl_dim_is_invariant_under_diagram_symmetry(a in 0i64..8, b in 0i64..8, c in 0i64..8) {
        let rs = build_root_system("A3".parse::<CartanType>().unwrap());
        prop_assert_eq!(rs.weyl_dim(&Weight(vec![a, b, c])).unwrap(), rs.weyl_dim(&Weight(vec![c, b, a])).unwrap());
    }

    #[test]
    fn weyl_dim_grows_along_dominant_directions(a in 0i64..10, b in 0i64..10) {
        for t in ["B2", "G2"] {
            let rs = build_root_system(t.parse::<CartanType>().unwrap());
            let base = rs.weyl_dim(&Weight(vec![a, b])).unwrap();
            prop_assert!(base > BigInt::from(0));
            prop_assert!(rs.weyl_dim(&Weight(vec![a + 1, b])).unwrap() > base);
            prop_assert!(rs.weyl_dim(&Weight(vec![a, b + 1])).unwrap() > base);
        }
    }
}

#[test]
fn weight_action_preserves_orbit_sizes() {
    let g = WeylGroup::generate("B2".parse().unwrap());
    let rho = Weight(vec![1, 1]);
    let orbit: std::collections::BTreeSet<Vec<i64>> =
        (0..g.order()).map(|w| g.act_on_weight(w, &rho).coords().to_vec()).collect();
    assert_eq!(orbit.len(), g.order());
}

#[test]
fn delta_reversal_is_an_involution() {
    let p = IntPoly::from_ints(&[0, 2, 0, 1]);
    let r = p.reverse_at(4).unwrap();
    assert_eq!(r.reverse_at(4).unwrap(), p);
    assert_eq!(r.eval_int(1), BigRational::from_integer(3.into()));
}
