mod common;

use common::{nonzero_poly, poly};
use ffheight::algebra::{poly_gcd, random_identity_check, rat, squarefree_decompose, MultiPoly, VarSpace};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gcd_keeps_common_factor(
        (f, g, h) in (2usize..=3).prop_flat_map(|n| {
            (nonzero_poly(n, 4, 4, 5), nonzero_poly(n, 4, 4, 5), nonzero_poly(n, 4, 4, 5))
        }),
    ) {
        let d = poly_gcd(&(&f * &h), &(&g * &h));
        prop_assert!(h.primitive().divides(&d), "gcd {} misses {}", d, h);
        prop_assert!(d.divides(&(&f * &h)) && d.divides(&(&g * &h)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn squarefree_reconstructs(
        factors in prop::collection::vec((nonzero_poly(2, 2, 3, 4), 1u32..=3), 1..=3),
        unit in prop_oneof![-5i64..=-1, 1i64..=5],
    ) {
        let mut f = MultiPoly::from_int(VarSpace::Affine(2), unit);
        for (p, e) in &factors {
            f = &f * &p.pow(*e);
        }
        let dec = squarefree_decompose(&f).unwrap();
        prop_assert_eq!(dec.reconstruct(), f);
        for w in dec.factors.windows(2) {
            prop_assert!(w[0].1 >= w[1].1);
        }
    }

    #[test]
    fn homogenize_round_trip(f in poly(3, 5, 6, 9), extra in 0u32..3) {
        let h = f.homogenize(f.degree() + extra).unwrap();
        prop_assert!(h.is_homogeneous());
        prop_assert_eq!(h.dehomogenize().unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn substitution_composes(
        f in poly(2, 3, 4, 5),
        theta in prop::collection::vec(poly(2, 2, 3, 3), 2),
        eta in prop::collection::vec(poly(2, 2, 3, 3), 2),
        seed in any::<u64>(),
    ) {
        let lhs = f.substitute(&theta).unwrap().substitute(&eta).unwrap();
        let composed: Vec<MultiPoly> = theta.iter().map(|t| t.substitute(&eta).unwrap()).collect();
        let rhs = f.substitute(&composed).unwrap();
        prop_assert!(random_identity_check(&lhs, &rhs, 10, seed).holds());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn identity_check_finds_witness(f in nonzero_poly(2, 3, 4, 5), seed in any::<u64>()) {
        let g = &f + &MultiPoly::from_int(VarSpace::Affine(2), 1);
        prop_assert!(!random_identity_check(&f, &g, 4, seed).holds());
        prop_assert!(random_identity_check(&f, &f.scale(&rat(1)), 4, seed).holds());
    }
}
