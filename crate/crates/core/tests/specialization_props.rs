mod common;

use common::{fixture, parse, two_points, S2, T2};
use ffheight::algebra::{rat, ratio, MultiPoly};
use ffheight::reduction::RationalHypersurface;
use ffheight::specialization::{
    classify_infinity, dl_check, injectivity_report, nonsingular_multiple, specialize_curve, specialize_point,
    FiberClass, InfinityCase, InjectivityOptions, QPoint, RationalPointPn, Specialization, Verdict,
};
use ffheight::FunctionFieldCurve;
use proptest::prelude::*;

fn t(c: &[i64]) -> RationalPointPn {
    RationalPointPn::from_i64(c).unwrap()
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

/// `A`, `B`, `x`, `y` with `T_i -> l_i T_i` applied.
fn scaled_family(a: &str, b: &str, x: &str, y: &str, l: [i64; 2]) -> (FunctionFieldCurve, ffheight::ProjPoint) {
    let images = [parse("T1", T2).scale(&rat(l[0])), parse("T2", T2).scale(&rat(l[1]))];
    let sub = |s: &str| parse(s, T2).substitute(&images).unwrap();
    let curve = FunctionFieldCurve::new(2, sub(a), sub(b)).unwrap();
    let p = curve.model().point(sub(x), sub(y), MultiPoly::one(T2)).unwrap();
    (curve, p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn specialization_is_a_homomorphism((curve, p, q) in two_points(), a in -5i64..=5, b in -5i64..=5) {
        let at = t(&[1, a, b]);
        let e = specialize_curve(&curve, &at).unwrap();
        prop_assume!(e.fiber_class == FiberClass::Nonsingular);
        let sum = curve.model().add(&p, &q).unwrap();
        let (Specialization::Point(sp), Specialization::Point(sq), Specialization::Point(ss)) = (
            specialize_point(&p, &at).unwrap(),
            specialize_point(&q, &at).unwrap(),
            specialize_point(&sum, &at).unwrap(),
        ) else {
            return Err(TestCaseError::reject("indeterminate"));
        };
        prop_assert!(e.contains_proj(&sp) && e.contains_proj(&sq) && e.contains_proj(&ss));
        prop_assert_eq!(e.add(&sp.to_point(), &sq.to_point()).to_proj(), ss);
    }

    #[test]
    fn doubling_commutes_with_specialization((curve, p, _q) in two_points(), a in -5i64..=5, b in -5i64..=5) {
        let at = t(&[1, a, b]);
        let e = specialize_curve(&curve, &at).unwrap();
        prop_assume!(e.fiber_class == FiberClass::Nonsingular);
        let rec = dl_check(&curve, &p, &at).unwrap();
        prop_assume!(rec.doubled_then_specialized != Specialization::Indeterminate);
        prop_assert!(rec.holds(), "{:?}", rec);
    }

    #[test]
    fn trichotomy_is_stable_under_scaling(l1 in nonzero(), l2 in nonzero()) {
        let cases = [
            ("T1", "T2^4 - T2^3 - T1*T2", "T2", "T2^2", [0, 1, 0], InfinityCase::B),
            ("0", "2*T2^6 + 1", "T2^4", "T2^6 + 1", [0, 1, 0], InfinityCase::A),
            (
                "T1^4 + T2^4 + 1",
                "-(T1*T2 - T1^2)^3 - (T1^4 + T2^4 + 1)*(T1*T2 - T1^2)",
                "T1*T2 - T1^2",
                "0",
                [0, 1, 1],
                InfinityCase::C,
            ),
        ];
        for (a, b, x, y, at, case) in cases {
            let (curve, p) = scaled_family(a, b, x, y, [l1, l2]);
            let moved = RationalPointPn::from_rationals(&[rat(0), ratio(at[1], l1), ratio(at[2], l2)]).unwrap();
            let r = classify_infinity(&curve, &p, &moved).unwrap();
            prop_assert_eq!(r.case, case);
            match r.case {
                InfinityCase::A => prop_assert_eq!(r.image, Specialization::Indeterminate),
                InfinityCase::B => {
                    let q = r.image.point().unwrap().to_point();
                    prop_assert_eq!(Some(q), r.fiber.singular_point());
                }
                InfinityCase::C => {
                    let q = r.image.point().unwrap();
                    prop_assert!(q.y == 0.into() && q.z != 0.into());
                    prop_assert_eq!(r.fiber.fiber_class, FiberClass::Nonsingular);
                }
            }
        }
    }

    #[test]
    fn nonsingular_multiple_is_nonsingular_on_fibers(c in nonzero(), s in -6i64..=6) {
        // h = T2 - c; y^2 = x^3 + (T1 h)^2 with P = (0, T1 h) is bad along T1 and h.
        let h = format!("(T2 - ({c}))");
        let curve = FunctionFieldCurve::parse(2, "0", &format!("T1^2*{h}^2")).unwrap();
        let p = curve
            .model()
            .point(MultiPoly::zero(T2), parse(&format!("T1*{h}"), T2), MultiPoly::one(T2))
            .unwrap();
        let divisors = [parse("T1", T2), parse(&h, T2)];
        let r = nonsingular_multiple(&curve, &p, &divisors, 12).unwrap();
        prop_assert_eq!(r.n, 3);
        // On the fiber over a point of T1 = 0, P lands on the cusp and [3]P does not.
        let at = t(&[1, 0, s]);
        let e = specialize_curve(&curve, &at).unwrap();
        prop_assert_eq!(e.fiber_class, FiberClass::Cusp);
        let sp = specialize_point(&p, &at).unwrap();
        prop_assert_eq!(Some(sp.point().unwrap().to_point()), e.singular_point());
        match specialize_point(&r.multiple, &at).unwrap() {
            Specialization::Point(q) => prop_assert!(!e.is_singular_point(&q.to_point()).unwrap()),
            Specialization::Indeterminate => prop_assert!(false, "indeterminate multiple"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn q_heights_are_quadratic(num in -20i64..=20, den in 1i64..=20) {
        let (curve, p) = fixture();
        let at = t(&[den, num, num + den]);
        let e = specialize_curve(&curve, &at).unwrap();
        prop_assume!(e.fiber_class == FiberClass::Nonsingular);
        let q = specialize_point(&p, &at).unwrap().point().unwrap().to_point();
        prop_assume!(e.torsion_order(&q, 12).is_none());
        let tol = 1e-3;
        let h1 = e.canonical_height(&q, tol, 12).unwrap().value;
        let h2 = e.canonical_height(&e.double(&q), tol, 12).unwrap().value;
        prop_assert!((h2 - 4.0 * h1).abs() <= 5.0 * tol, "{h1} {h2}");
        let ratio = h2 / h1;
        prop_assert!((4.0 - 4.0 * tol..=4.0 + 4.0 * tol).contains(&ratio), "{ratio}");
        prop_assert!(h1 > 0.0);
    }
}

#[test]
fn torsion_points_over_q_have_height_zero() {
    let e = ffheight::specialization::SpecializedCurve::new(rat(0), rat(1));
    let p = QPoint::Affine(rat(2), rat(3));
    assert_eq!(e.torsion_order(&p, 12), Some(6));
    assert_eq!(e.canonical_height(&p, 1e-6, 12).unwrap().value, 0.0);
}

#[test]
fn dependent_generators_are_reported_with_exact_relations() {
    let (curve, p) = fixture();
    let p2 = curve.model().double(&p).unwrap();
    let line = RationalHypersurface::hyperplane(&parse("S2 - S0 - S1", S2)).unwrap();
    let opts = InjectivityOptions { bound: 2, ..Default::default() };
    let report = injectivity_report(&curve, &[p.clone(), p2.clone()], &[], &line, &opts).unwrap();
    assert_eq!(report.summary.independent, 0);
    let mut dependent = 0;
    for row in &report.rows {
        if let Verdict::Dependent(rel) = &row.verdict {
            dependent += 1;
            let e = specialize_curve(&curve, &row.t).unwrap();
            let sp = specialize_point(&p, &row.t).unwrap().point().unwrap().to_point();
            let sp2 = specialize_point(&p2, &row.t).unwrap().point().unwrap().to_point();
            let combo = e.add(&e.multiply(rel[0], &sp), &e.multiply(rel[1], &sp2));
            assert_eq!(combo, QPoint::Infinity, "{} {:?}", row.t, rel);
            // the relation also holds over the function field
            let m = curve.model();
            let lifted =
                m.add(&m.scalar_multiply(rel[0], &p).unwrap(), &m.scalar_multiply(rel[1], &p2).unwrap()).unwrap();
            assert!(lifted.is_infinity());
        }
    }
    assert!(dependent > 0);
    assert_eq!(report.summary.dependent, dependent);
}
