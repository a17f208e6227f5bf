mod common;

use common::{fixture_point, nonzero_poly, poly, T2};
use ffheight::algebra::{random_identity_check, MultiPoly, VarSpace};
use ffheight::{discriminant, FunctionFieldCurve};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discriminant_scales_by_u12(
        a0 in poly(2, 2, 3, 4),
        b0 in nonzero_poly(2, 2, 3, 4),
        u0 in nonzero_poly(2, 1, 2, 3),
    ) {
        let a = &a0 * &u0.pow(4);
        let b = &b0 * &u0.pow(6);
        let Ok(curve) = FunctionFieldCurve::new(2, a.clone(), b.clone()) else {
            return Err(TestCaseError::reject("singular"));
        };
        let (reduced, u) = curve.minimality_reduce().unwrap();
        prop_assert_eq!(&(reduced.a() * &u.pow(4)), &a);
        prop_assert_eq!(&(reduced.b() * &u.pow(6)), &b);
        let lhs = &discriminant(reduced.a(), reduced.b()).unwrap() * &u.pow(12);
        prop_assert_eq!(lhs, discriminant(&a, &b).unwrap());
        if !u0.is_constant() {
            prop_assert!(!u.is_constant());
        }
    }

    #[test]
    fn minimality_is_idempotent(a in poly(2, 5, 4, 4), b in nonzero_poly(2, 6, 4, 4)) {
        let Ok(curve) = FunctionFieldCurve::new(2, a, b) else {
            return Err(TestCaseError::reject("singular"));
        };
        let (once, _) = curve.minimality_reduce().unwrap();
        let (twice, u) = once.minimality_reduce().unwrap();
        prop_assert!(u.is_one());
        prop_assert_eq!(once.a(), twice.a());
        prop_assert_eq!(once.b(), twice.b());
    }

    #[test]
    fn constant_curves_have_trivial_infinity_model(a in -5i64..=5, b in -5i64..=5) {
        let Ok(curve) = FunctionFieldCurve::new(2, MultiPoly::from_int(T2, a), MultiPoly::from_int(T2, b)) else {
            return Err(TestCaseError::reject("singular"));
        };
        let inf = curve.infinity_model().unwrap();
        prop_assert_eq!(inf.k(), 0);
        let s = VarSpace::Projective(2);
        prop_assert_eq!(inf.model().a().num.clone(), MultiPoly::from_int(s, a));
        prop_assert_eq!(inf.model().b().num.clone(), MultiPoly::from_int(s, b));
        prop_assert!(inf.model().a().den.is_one() && inf.model().b().den.is_one());
    }

    #[test]
    fn transported_points_lie_on_the_infinity_model((curve, p) in fixture_point(), seed in any::<u64>()) {
        let inf = curve.infinity_model().unwrap();
        let q = inf.transport(&p).unwrap();
        let eq = inf.model().equation(q.x(), q.y(), q.z());
        let zero = MultiPoly::zero(eq.space());
        prop_assert!(random_identity_check(&eq, &zero, 20, seed).holds());
        prop_assert!(inf.model().contains(&q));
    }
}
