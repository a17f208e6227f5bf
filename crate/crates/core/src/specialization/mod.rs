//! Specialization `σ_t` at rational points `t ∈ P^n(Q)`: points, fibers,
//! nonsingular multiples, the trichotomy at `H∞`, and an injectivity survey
//! along a rational curve in the base.

pub mod qcurve;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{MultiPoly, Rational, VarSpace};
use crate::curve::{FunctionFieldCurve, WeierstrassModel};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::point::ProjPoint;
use crate::reduction::RationalHypersurface;

pub use qcurve::{FiberClass, QHeightEstimate, QPoint, QProjPoint, SpecializedCurve};

/// Largest order of a rational torsion point on an elliptic curve over `Q`.
pub const Q_TORSION_CAP: u32 = 12;

/// Default search cap for `nonsingular_multiple`.
pub const DEFAULT_MULTIPLE_CAP: u32 = 12;

/// A point of `P^n(Q)`: coprime integers, first nonzero coordinate positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPointPn {
    coords: Vec<BigInt>,
}

impl RationalPointPn {
    pub fn new(coords: Vec<BigInt>) -> Result<Self> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let lead = coords.iter().find(|c| !c.is_zero()).unwrap();
        let g = if lead.is_negative() { -g } else { g };
        Ok(RationalPointPn { coords: coords.into_iter().map(|c| c / &g).collect() })
    }

    pub fn from_i64(coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        let den = coords.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        Self::new(coords.iter().map(|c| c.numer() * (&den / c.denom())).collect())
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn rationals(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| Rational::from_integer(c.clone())).collect()
    }

    pub fn is_at_infinity(&self) -> bool {
        self.coords[0].is_zero()
    }

    pub fn naive_height(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Affine coordinates `(t1/t0, ..., tn/t0)`.
    pub fn affine(&self) -> Result<Vec<Rational>> {
        if self.is_at_infinity() {
            return Err(Error::AtInfinity);
        }
        let t0 = &self.coords[0];
        Ok(self.coords[1..].iter().map(|c| Rational::new(c.clone(), t0.clone())).collect())
    }
}

impl fmt::Display for RationalPointPn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl FromStr for RationalPointPn {
    type Err = Error;

    /// Accepts `[a:b:c]` or `a:b:c` with rational entries.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = inner
            .split(':')
            .map(|c| crate::algebra::parse_rational(c.trim()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition(format!("not a projective point: {s}")))?;
        if coords.len() < 2 {
            return Err(Error::Precondition(format!("not a projective point: {s}")));
        }
        Self::from_rationals(&coords)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Specialization {
    Point(QProjPoint),
    /// Every coordinate form vanishes at `t`.
    Indeterminate,
}

impl Specialization {
    pub fn point(&self) -> Option<&QProjPoint> {
        match self {
            Specialization::Point(p) => Some(p),
            Specialization::Indeterminate => None,
        }
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Specialization::Point(p) => p.fmt(f),
            Specialization::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

fn check_arity(space: VarSpace, t: &RationalPointPn) -> Result<()> {
    if space.nvars() != t.len() {
        return Err(Error::ArityMismatch { expected: space.nvars(), got: t.len() });
    }
    Ok(())
}

/// Evaluates the coordinate forms of `P` at `t`.
pub fn specialize_point(p: &ProjPoint, t: &RationalPointPn) -> Result<Specialization> {
    check_arity(p.space(), t)?;
    let tv = t.rationals();
    let [x, y, z] = p.coords().map(|c| c.eval(&tv));
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return Ok(Specialization::Indeterminate);
    }
    Ok(Specialization::Point(QProjPoint::from_rationals(&x, &y, &z)?))
}

/// `E_t : y^2 = x^3 + A(t) x + B(t)` for `t` off `H∞`.
pub fn specialize_curve(curve: &FunctionFieldCurve, t: &RationalPointPn) -> Result<SpecializedCurve> {
    check_arity(curve.projective_space(), t)?;
    let affine = t.affine()?;
    Ok(SpecializedCurve::new(curve.a().eval(&affine), curve.b().eval(&affine)))
}

/// Specializes a model whose coefficients are rational forms; fails where a
/// denominator vanishes.
pub fn specialize_model(model: &WeierstrassModel, t: &RationalPointPn) -> Result<SpecializedCurve> {
    check_arity(model.space(), t)?;
    let (a, b) = model
        .eval_coefficients(&t.rationals())
        .ok_or_else(|| Error::Precondition(format!("a coefficient has a pole at {t}")))?;
    Ok(SpecializedCurve::new(a, b))
}

pub fn is_singular_specialized_point(e: &SpecializedCurve, p: &QProjPoint) -> Result<bool> {
    if !e.contains_proj(p) {
        return Err(Error::NotOnCurve);
    }
    e.is_singular_point(&p.to_point())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublingRecord {
    pub t: RationalPointPn,
    pub specialized: QProjPoint,
    /// `σ_t([2]P)`.
    pub doubled_then_specialized: Specialization,
    /// `[2]σ_t(P)` on `E_t`.
    pub specialized_then_doubled: QProjPoint,
}

impl DoublingRecord {
    pub fn holds(&self) -> bool {
        self.doubled_then_specialized.point() == Some(&self.specialized_then_doubled)
    }
}

/// Compares `σ_t([2]P)` with `[2]σ_t(P)`; requires `σ_t(P)` to be a
/// nonsingular point of `E_t`.
pub fn dl_check(curve: &FunctionFieldCurve, p: &ProjPoint, t: &RationalPointPn) -> Result<DoublingRecord> {
    let model = curve.model();
    if !model.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let e = specialize_curve(curve, t)?;
    let pt = match specialize_point(p, t)? {
        Specialization::Point(q) => q,
        Specialization::Indeterminate => {
            return Err(Error::Precondition(format!("P is indeterminate at {t}")));
        }
    };
    if is_singular_specialized_point(&e, &pt)? {
        return Err(Error::Precondition(format!("P specializes to the singular point at {t}")));
    }
    let doubled = model.double(p)?;
    Ok(DoublingRecord {
        t: t.clone(),
        doubled_then_specialized: specialize_point(&doubled, t)?,
        specialized_then_doubled: e.double(&pt.to_point()).to_proj(),
        specialized: pt,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonsingularMultiple {
    /// `lcm` of the per-divisor multiples.
    pub n: u64,
    /// For each divisor (affine, primitive): the least `n_i` with `[n_i]P`
    /// nonsingular on the reduction.
    pub per_divisor: Vec<(MultiPoly, u32)>,
    /// `[n]P`.
    pub multiple: ProjPoint,
}

/// The least `N` such that `[N]P` reduces to a nonsingular point modulo each
/// prime divisor of `Δ` in `divisors`.
///
/// The list is validated against `Δ`; each entry is assumed irreducible over
/// `Q̄`, which is not checked. The curve must be minimal.
pub fn nonsingular_multiple(
    curve: &FunctionFieldCurve,
    p: &ProjPoint,
    divisors: &[MultiPoly],
    cap: u32,
) -> Result<NonsingularMultiple> {
    let model = curve.model();
    if !model.contains(p) {
        return Err(Error::NotOnCurve);
    }
    let (_, u) = curve.minimality_reduce()?;
    if !u.is_constant() {
        return Err(Error::Precondition(format!("the model is not minimal: u = {u}")));
    }
    let validated = curve.validate_divisor_list(divisors)?;
    let space = curve.projective_space();
    let da = curve.a().degree();
    let a_h = if curve.a().is_zero() { MultiPoly::zero(space) } else { curve.a().homogenize(da)? };
    let s0_da = MultiPoly::var_pow(space, 0, if curve.a().is_zero() { 0 } else { da });

    let singular_mod = |q: &ProjPoint, ph: &MultiPoly| -> bool {
        if !ph.divides(q.y()) {
            return false;
        }
        let z2 = q.z() * q.z();
        let dx = &(&(q.x() * q.x()).scale(&Rational::from_integer(3.into())) * &s0_da) + &(&a_h * &z2);
        ph.divides(&dx)
    };

    let mut multiples = vec![p.clone()];
    let mut per_divisor = Vec::new();
    let mut n: u64 = 1;
    for (factor, _) in &validated {
        let ph = factor.homogenize(factor.degree())?;
        let mut found = None;
        for k in 1..=cap as usize {
            if multiples.len() < k {
                let next = model.add_unchecked(&multiples[k - 2], p)?;
                multiples.push(next);
            }
            if !singular_mod(&multiples[k - 1], &ph) {
                found = Some(k as u32);
                break;
            }
        }
        let k = found.ok_or_else(|| Error::MultipleCapExceeded { divisor: factor.to_string(), cap })?;
        n = n.lcm(&(k as u64));
        per_divisor.push((factor.clone(), k));
    }
    let multiple = model.scalar_multiply_unchecked(n as i64, p)?;
    Ok(NonsingularMultiple { n, per_divisor, multiple })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InfinityCase {
    /// `P'` is itself indeterminate at `t`.
    A,
    /// `P'_t` is the singular point of a singular `E'_t`.
    B,
    /// `P'_t` is a nonsingular point of order two.
    C,
}

impl fmt::Display for InfinityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InfinityCase::A => "a",
            InfinityCase::B => "b",
            InfinityCase::C => "c",
        })
    }
}

#[derive(Clone, Debug)]
pub struct InfinityClassification {
    pub case: InfinityCase,
    pub transported: ProjPoint,
    pub image: Specialization,
    pub fiber: SpecializedCurve,
}

/// For `t ∈ H∞ \ H'∞` where `P` is indeterminate, decides which of the three
/// cases holds for the transported point on `E'`.
pub fn classify_infinity(
    curve: &FunctionFieldCurve,
    p: &ProjPoint,
    t: &RationalPointPn,
) -> Result<InfinityClassification> {
    check_arity(curve.projective_space(), t)?;
    if !t.is_at_infinity() {
        return Err(Error::Precondition(format!("{t} is not on H∞")));
    }
    if t.coords()[1].is_zero() {
        return Err(Error::Precondition(format!("{t} lies on S1 = 0")));
    }
    if !curve.model().contains(p) {
        return Err(Error::NotOnCurve);
    }
    if specialize_point(p, t)? != Specialization::Indeterminate {
        return Err(Error::Precondition(format!("P is defined at {t}")));
    }
    let inf = curve.infinity_model()?;
    let transported = inf.transport(p)?;
    let fiber = specialize_model(inf.model(), t)?;
    let image = specialize_point(&transported, t)?;
    let case = match &image {
        Specialization::Indeterminate => InfinityCase::A,
        Specialization::Point(q) => {
            if is_singular_specialized_point(&fiber, q)? {
                InfinityCase::B
            } else if q.y.is_zero() && !q.z.is_zero() {
                InfinityCase::C
            } else {
                return Err(Error::Internal(format!("transported point {q} fits no case at {t}")));
            }
        }
    };
    Ok(InfinityClassification { case, transported, image, fiber })
}

#[derive(Clone, Debug)]
pub struct InjectivityOptions {
    /// Parameters `s = p/q` with `max(|p|, q) <= bound`.
    pub bound: i64,
    pub tol: f64,
    pub max_level: u32,
    /// Coefficient box for the explicit relation search.
    pub relation_bound: i64,
}

impl Default for InjectivityOptions {
    fn default() -> Self {
        InjectivityOptions { bound: 10, tol: 1e-3, max_level: 10, relation_bound: 3 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkipReason {
    Infinity,
    BadFiber,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Independent,
    TorsionCollision(String),
    Dependent(Vec<i64>),
    Inconclusive(String),
    Skipped(SkipReason),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Independent => f.write_str("independent"),
            Verdict::TorsionCollision(_) => f.write_str("torsion-collision"),
            Verdict::Dependent(_) => f.write_str("dependent"),
            Verdict::Inconclusive(_) => f.write_str("inconclusive"),
            Verdict::Skipped(SkipReason::Infinity) => f.write_str("skipped-infinity"),
            Verdict::Skipped(SkipReason::BadFiber) => f.write_str("skipped-bad-fiber"),
            Verdict::Skipped(SkipReason::Indeterminate) => f.write_str("skipped-indeterminate"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InjectivityRow {
    pub parameter: Rational,
    pub t: RationalPointPn,
    pub fiber_class: Option<FiberClass>,
    /// One entry per generator, when computed.
    pub heights: Vec<QHeightEstimate>,
    pub det: Option<(f64, f64)>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InjectivitySummary {
    pub processed: usize,
    pub independent: usize,
    pub torsion_collisions: usize,
    pub inconclusive: usize,
    pub skipped: usize,
    pub dependent: usize,
}

#[derive(Clone, Debug)]
pub struct InjectivityReport {
    pub rows: Vec<InjectivityRow>,
    pub summary: InjectivitySummary,
}

/// Parameters `s = p/q` in lowest terms with `max(|p|, q) <= bound`, mapped
/// to `t = θ(q, p)` and ordered by naive height of `t`, then lexicographically.
pub fn curve_parameters(line: &RationalHypersurface, bound: i64) -> Result<Vec<(Rational, RationalPointPn)>> {
    if line.param_space() != VarSpace::Param(2) {
        return Err(Error::Precondition("the base curve must be parametrized by P^1".into()));
    }
    let mut out = Vec::new();
    for q in 1..=bound.max(1) {
        for p in -bound..=bound {
            if p.gcd(&q) != 1 && !(p == 0 && q == 1) {
                continue;
            }
            let uv = [Rational::from_integer(q.into()), Rational::from_integer(p.into())];
            let t: Vec<Rational> = line.theta().iter().map(|f| f.eval(&uv)).collect();
            out.push((Rational::new(p.into(), q.into()), RationalPointPn::from_rationals(&t)?));
        }
    }
    out.sort_by(|a, b| (a.1.naive_height(), &a.1).cmp(&(b.1.naive_height(), &b.1)));
    out.dedup_by(|a, b| a.1 == b.1);
    Ok(out)
}

/// Surveys `σ_t` on the subgroup generated by `generators` and `torsion`
/// for `t` on a rational curve in the base, one row per parameter.
pub fn injectivity_report(
    curve: &FunctionFieldCurve,
    generators: &[ProjPoint],
    torsion: &[ProjPoint],
    line: &RationalHypersurface,
    opts: &InjectivityOptions,
) -> Result<InjectivityReport> {
    let model = curve.model();
    for g in generators.iter().chain(torsion) {
        if !model.contains(g) {
            return Err(Error::NotOnCurve);
        }
    }
    for tp in torsion {
        let order = (1..=Q_TORSION_CAP as i64)
            .map(|k| model.scalar_multiply_unchecked(k, tp))
            .position(|r| r.map(|q| q.is_infinity()).unwrap_or(false));
        if order.is_none() {
            return Err(Error::Precondition("a claimed torsion point has no verified order".into()));
        }
    }
    let params = curve_parameters(line, opts.bound)?;
    let rows: Vec<InjectivityRow> = params
        .into_par_iter()
        .map(|(s, t)| survey_fiber(curve, generators, torsion, s, t, opts))
        .collect::<Result<_>>()?;
    let mut summary = InjectivitySummary::default();
    for row in &rows {
        match row.verdict {
            Verdict::Skipped(_) => summary.skipped += 1,
            Verdict::Independent => summary.independent += 1,
            Verdict::TorsionCollision(_) => summary.torsion_collisions += 1,
            Verdict::Dependent(_) => summary.dependent += 1,
            Verdict::Inconclusive(_) => summary.inconclusive += 1,
        }
    }
    summary.processed = rows.len() - summary.skipped;
    Ok(InjectivityReport { rows, summary })
}

fn survey_fiber(
    curve: &FunctionFieldCurve,
    generators: &[ProjPoint],
    torsion: &[ProjPoint],
    parameter: Rational,
    t: RationalPointPn,
    opts: &InjectivityOptions,
) -> Result<InjectivityRow> {
    let mut row = InjectivityRow {
        parameter,
        t,
        fiber_class: None,
        heights: Vec::new(),
        det: None,
        verdict: Verdict::Independent,
    };
    if row.t.is_at_infinity() {
        row.verdict = Verdict::Skipped(SkipReason::Infinity);
        return Ok(row);
    }
    let e = specialize_curve(curve, &row.t)?;
    row.fiber_class = Some(e.fiber_class);
    if e.fiber_class != FiberClass::Nonsingular {
        row.verdict = Verdict::Skipped(SkipReason::BadFiber);
        return Ok(row);
    }
    let mut gens = Vec::new();
    let mut tors = Vec::new();
    for (list, out) in [(generators, &mut gens), (torsion, &mut tors)] {
        for g in list {
            match specialize_point(g, &row.t)? {
                Specialization::Point(q) => out.push(q.to_point()),
                Specialization::Indeterminate => {
                    row.verdict = Verdict::Skipped(SkipReason::Indeterminate);
                    return Ok(row);
                }
            }
        }
    }
    for (i, (tp, tq)) in torsion.iter().zip(&tors).enumerate() {
        if !tp.is_infinity() && tq.is_infinity() {
            row.verdict = Verdict::TorsionCollision(format!("T{} -> O", i + 1));
            return Ok(row);
        }
    }
    for (i, g) in gens.iter().enumerate() {
        if let Some(k) = e.torsion_order(g, Q_TORSION_CAP) {
            row.verdict = Verdict::TorsionCollision(format!("[{k}]P{} = O", i + 1));
            return Ok(row);
        }
    }
    if gens.is_empty() {
        row.det = Some((1.0, 0.0));
        return Ok(row);
    }
    let height = |q: &QPoint| e.canonical_height(q, opts.tol, opts.max_level);
    for g in &gens {
        match height(g) {
            Ok(h) => row.heights.push(h),
            Err(Error::NoConvergence { levels }) => {
                row.verdict = Verdict::Inconclusive(format!("no convergence by level {levels}"));
                return Ok(row);
            }
            Err(err) => return Err(err),
        }
    }
    let r = gens.len();
    let tol = Rational::from_float(opts.tol).unwrap_or_else(Rational::zero);
    let exact = |v: f64| Rational::from_float(v).unwrap_or_else(Rational::zero);
    let mut matrix = vec![vec![Interval::exact(Rational::zero()); r]; r];
    for i in 0..r {
        matrix[i][i] = Interval::new(exact(row.heights[i].value), tol.clone());
        for j in i + 1..r {
            let sum = e.add(&gens[i], &gens[j]);
            let hs = match height(&sum) {
                Ok(h) => h.value,
                Err(Error::NoConvergence { levels }) => {
                    row.verdict = Verdict::Inconclusive(format!("no convergence by level {levels}"));
                    return Ok(row);
                }
                Err(err) => return Err(err),
            };
            let mid = exact((hs - row.heights[i].value - row.heights[j].value) / 2.0);
            let entry = Interval::new(mid, &tol * Rational::new(3.into(), 2.into()));
            matrix[i][j] = entry.clone();
            matrix[j][i] = entry;
        }
    }
    let det = Interval::determinant(&matrix);
    let (mid, rad) = (det.mid.to_f64().unwrap_or(f64::NAN), det.radius.to_f64().unwrap_or(f64::NAN));
    row.det = Some((mid, rad));
    if det.mid > Rational::from_integer(2.into()) * &det.radius {
        return Ok(row);
    }
    row.verdict = match find_relation(&e, &gens, opts.relation_bound) {
        Some(c) => Verdict::Dependent(c),
        None => Verdict::Inconclusive(format!("det {mid:.6} ± {rad:.6}")),
    };
    Ok(row)
}

/// A primitive integer vector `c` with `Σ c_i P_i` torsion, verified exactly.
fn find_relation(e: &SpecializedCurve, gens: &[QPoint], bound: i64) -> Option<Vec<i64>> {
    let r = gens.len();
    let side = (2 * bound + 1) as usize;
    let total = side.checked_pow(r as u32)?;
    for idx in 0..total {
        let mut c = Vec::with_capacity(r);
        let mut rem = idx;
        for _ in 0..r {
            c.push((rem % side) as i64 - bound);
            rem /= side;
        }
        match c.iter().find(|&&x| x != 0) {
            Some(&first) if first > 0 => {}
            _ => continue,
        }
        if c.iter().fold(0i64, |g, &x| g.gcd(&x)) != 1 {
            continue;
        }
        let sum = c.iter().zip(gens).fold(QPoint::Infinity, |acc, (&ci, g)| e.add(&acc, &e.multiply(ci, g)));
        if e.torsion_order(&sum, Q_TORSION_CAP).is_some() {
            return Some(c);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, rat};

    const S: VarSpace = VarSpace::Projective(2);

    fn fixture() -> (FunctionFieldCurve, ProjPoint) {
        let c = FunctionFieldCurve::parse(2, "T1", "T2^4 - T2^3 - T1*T2").unwrap();
        let s = |x: &str| parse_poly(x, S).unwrap();
        let p = c.model().point(s("S0*S2"), s("S2^2"), s("S0^2")).unwrap();
        (c, p)
    }

    fn t(c: &[i64]) -> RationalPointPn {
        RationalPointPn::from_i64(c).unwrap()
    }

    #[test]
    fn point_normalization_and_parsing() {
        assert_eq!(t(&[-2, 4, 6]).to_string(), "[1:-2:-3]");
        assert_eq!("[1/2:1:3/2]".parse::<RationalPointPn>().unwrap(), t(&[1, 2, 3]));
        assert_eq!(RationalPointPn::from_i64(&[0, 0]), Err(Error::ZeroPoint));
    }

    #[test]
    fn fixture_specializations() {
        let (c, p) = fixture();
        let e = specialize_curve(&c, &t(&[1, 2, 3])).unwrap();
        assert_eq!((e.a.clone(), e.b.clone()), (rat(2), rat(48)));
        assert_eq!(e.delta, rat(-995840));
        let pt = specialize_point(&p, &t(&[1, 2, 3])).unwrap();
        assert_eq!(pt.point().unwrap().to_point(), QPoint::Affine(rat(3), rat(9)));
        assert_eq!(specialize_point(&p, &t(&[0, 1, 0])).unwrap(), Specialization::Indeterminate);
        assert_eq!(specialize_curve(&c, &t(&[0, 1, 0])), Err(Error::AtInfinity));
        assert!(dl_check(&c, &p, &t(&[1, 2, 3])).unwrap().holds());
    }

    #[test]
    fn nonsingular_multiple_of_cusp_point() {
        let c = FunctionFieldCurve::parse(2, "0", "T1^2").unwrap();
        let s = |x: &str| parse_poly(x, S).unwrap();
        let p = c.model().point(s("0"), s("S1"), s("S0")).unwrap();
        let r = nonsingular_multiple(&c, &p, &[parse_poly("T1", VarSpace::Affine(2)).unwrap()], 12).unwrap();
        assert_eq!(r.n, 3);
        assert!(r.multiple.is_infinity());
        let err = nonsingular_multiple(&c, &p, &[parse_poly("T1", VarSpace::Affine(2)).unwrap()], 2);
        assert!(matches!(err, Err(Error::MultipleCapExceeded { .. })));
    }

    #[test]
    fn infinity_trichotomy() {
        let (c, p) = fixture();
        let r = classify_infinity(&c, &p, &t(&[0, 1, 0])).unwrap();
        assert_eq!(r.case, InfinityCase::B);
        assert!(classify_infinity(&c, &p, &t(&[1, 2, 3])).is_err());

        let s = |x: &str| parse_poly(x, S).unwrap();
        let c = FunctionFieldCurve::parse(2, "0", "2*T2^6 + 1").unwrap();
        let p = c.model().point(s("S2^4*S0^2"), s("S2^6 + S0^6"), s("S0^6")).unwrap();
        assert_eq!(classify_infinity(&c, &p, &t(&[0, 1, 0])).unwrap().case, InfinityCase::A);

        let c = FunctionFieldCurve::parse(2, "T1^4 + T2^4 + 1", "-(T1*T2 - T1^2)^3 - (T1^4 + T2^4 + 1)*(T1*T2 - T1^2)")
            .unwrap();
        let p = c.model().point(s("S1*S2 - S1^2"), s("0"), s("S0^2")).unwrap();
        assert_eq!(classify_infinity(&c, &p, &t(&[0, 1, 1])).unwrap().case, InfinityCase::C);
    }

    #[test]
    fn survey_on_a_line() {
        let (c, p) = fixture();
        let line = RationalHypersurface::hyperplane(&parse_poly("S2 - S0 - S1", S).unwrap()).unwrap();
        let opts = InjectivityOptions { bound: 3, ..Default::default() };
        let report = injectivity_report(&c, &[p], &[], &line, &opts).unwrap();
        let minus_one = report.rows.iter().find(|r| r.parameter == rat(-1)).unwrap();
        assert_eq!(minus_one.t, t(&[1, -1, 0]));
        assert!(matches!(minus_one.verdict, Verdict::TorsionCollision(_)));
        let sm = &report.summary;
        assert_eq!(sm.processed + sm.skipped, report.rows.len());
        assert_eq!(sm.dependent, 0);
        assert_eq!(sm.inconclusive, 0);
    }
}
