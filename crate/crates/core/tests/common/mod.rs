#![allow(dead_code)]

use ffheight::algebra::{rat, MultiPoly, VarSpace};
use ffheight::{FunctionFieldCurve, ProjPoint};
use proptest::prelude::*;

pub const T2: VarSpace = VarSpace::Affine(2);
pub const S2: VarSpace = VarSpace::Projective(2);

pub fn parse(s: &str, space: VarSpace) -> MultiPoly {
    ffheight::algebra::parse_poly(s, space).unwrap()
}

/// Dense-ish random polynomial of total degree at most `max_deg`.
pub fn poly(nvars: usize, max_deg: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = MultiPoly> {
    let term = (prop::collection::vec(0..=max_deg, nvars), -coeff..=coeff);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        MultiPoly::from_terms(
            VarSpace::Affine(nvars),
            terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg).map(|(e, c)| (e, rat(c))),
        )
    })
}

pub fn nonzero_poly(nvars: usize, max_deg: u32, max_terms: usize, coeff: i64) -> impl Strategy<Value = MultiPoly> {
    poly(nvars, max_deg, max_terms, coeff).prop_filter("nonzero", |p| !p.is_zero())
}

/// A curve built around a chosen point: `B = y^2 - x^3 - A x`.
pub fn curve_with_point(x: &MultiPoly, y: &MultiPoly, a: &MultiPoly) -> Option<(FunctionFieldCurve, ProjPoint)> {
    let b = &(&(y * y) - &(&(x * x) * x)) - &(a * x);
    let curve = FunctionFieldCurve::new(2, a.clone(), b).ok()?;
    let one = MultiPoly::one(T2);
    let p = curve.model().point(x.clone(), y.clone(), one).ok()?;
    Some((curve, p))
}

pub fn fixture_point() -> impl Strategy<Value = (FunctionFieldCurve, ProjPoint)> {
    (poly(2, 2, 3, 3), poly(2, 2, 3, 3), poly(2, 2, 2, 3))
        .prop_filter_map("nonsingular curve", |(x, y, a)| curve_with_point(&x, &y, &a))
}

/// Two points with `x2 = x1 + c`, so that `A` comes out polynomial.
pub fn two_points() -> impl Strategy<Value = (FunctionFieldCurve, ProjPoint, ProjPoint)> {
    (poly(2, 1, 3, 2), poly(2, 2, 3, 3), poly(2, 2, 3, 3), prop_oneof![-3i64..=-1, 1i64..=3]).prop_filter_map(
        "nonsingular curve with two points",
        |(x1, y1, y2, c)| {
            let x2 = &x1 + &MultiPoly::from_int(T2, c);
            let f = |x: &MultiPoly, y: &MultiPoly| &(y * y) - &(&(x * x) * x);
            let diff = &f(&x1, &y1) - &f(&x2, &y2);
            let a = diff.scale(&rat(-1)).scale(&ffheight::algebra::ratio(1, c));
            let (curve, p) = curve_with_point(&x1, &y1, &a)?;
            let one = MultiPoly::one(T2);
            let q = curve.model().point(x2, y2, one).ok()?;
            Some((curve, p, q))
        },
    )
}

pub fn fixture() -> (FunctionFieldCurve, ProjPoint) {
    let c = FunctionFieldCurve::parse(2, "T1", "T2^4 - T2^3 - T1*T2").unwrap();
    let p = c.model().point(parse("T2", T2), parse("T2^2", T2), MultiPoly::one(T2)).unwrap();
    (c, p)
}

/// Sparser points for tests that iterate doubling.
pub fn small_fixture_point() -> impl Strategy<Value = (FunctionFieldCurve, ProjPoint)> {
    (poly(2, 1, 2, 2), poly(2, 2, 2, 2), poly(2, 1, 2, 2))
        .prop_filter_map("nonsingular curve", |(x, y, a)| curve_with_point(&x, &y, &a))
}
