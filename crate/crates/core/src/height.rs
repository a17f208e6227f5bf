//! Weil heights as degrees, the canonical height by iterated doubling, and
//! the height pairing with its regulator.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{poly_gcd_many, MultiPoly, Rational, VarSpace};
use crate::curve::WeierstrassModel;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::point::ProjPoint;

pub const DEFAULT_DEGREE_CEILING: u32 = 2000;
pub const DEFAULT_MIN_LEVEL: u32 = 2;
pub const DEFAULT_MAX_LEVEL: u32 = 8;

/// Height of a point of projective space over the function field: the common
/// degree of its normalized coordinate forms.
pub fn weil_height(p: &ProjPoint) -> u32 {
    p.degree()
}

/// `Σ_Γ max_i(-ord_Γ f_i) deg Γ` over the given prime divisors plus `H∞`.
///
/// Coordinates are fractions `(num, den)` in `T` coordinates; zero coordinates
/// are ignored. Primes may be written in `S` coordinates, where `S0` names
/// `H∞` (always included implicitly). The list must cover every factor of the
/// denominators and every common factor of the numerators.
pub fn weil_height_divisor_sum(coords: &[(MultiPoly, MultiPoly)], primes: &[MultiPoly]) -> Result<i64> {
    let nonzero: Vec<&(MultiPoly, MultiPoly)> = coords.iter().filter(|(n, _)| !n.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(Error::ZeroPoint);
    }
    let space = nonzero[0].0.space();
    let mut finite = Vec::new();
    for p in primes {
        let q = match p.space() {
            VarSpace::Projective(_) => {
                let d = p.dehomogenize()?;
                if d.is_constant() {
                    continue;
                }
                d
            }
            _ => p.clone(),
        };
        if q.space() != space {
            return Err(Error::SpaceMismatch(space.to_string(), q.space().to_string()));
        }
        if q.is_constant() {
            return Err(Error::InvalidFactor(q.to_string()));
        }
        finite.push(q.primitive());
    }
    let mut total: i64 = 0;
    let mut numerators: Vec<MultiPoly> = Vec::new();
    let mut denominators: Vec<MultiPoly> = Vec::new();
    let mut orders: Vec<Vec<i64>> = vec![Vec::new(); finite.len()];
    for (num, den) in &nonzero {
        if den.is_zero() {
            return Err(Error::Precondition("zero denominator".into()));
        }
        let mut n = num.clone();
        let mut d = den.clone();
        for (k, prime) in finite.iter().enumerate() {
            let on = strip(&mut n, prime);
            let od = strip(&mut d, prime);
            orders[k].push(on - od);
        }
        numerators.push(n);
        denominators.push(d);
    }
    if let Some(r) = denominators.iter().find(|r| !r.is_constant()) {
        return Err(Error::UncoveredSupport(r.to_string()));
    }
    // an unlisted prime then contributes zero unless it divides every numerator
    let common = poly_gcd_many(space, &numerators);
    if !common.is_constant() {
        return Err(Error::UncoveredSupport(common.to_string()));
    }
    for (k, prime) in finite.iter().enumerate() {
        let worst = orders[k].iter().map(|o| -o).max().unwrap();
        total += worst * prime.degree() as i64;
    }
    let at_infinity = nonzero.iter().map(|(n, d)| n.degree() as i64 - d.degree() as i64).max().unwrap();
    Ok(total + at_infinity)
}

fn strip(f: &mut MultiPoly, p: &MultiPoly) -> i64 {
    let mut k = 0;
    while let Some(q) = f.div_exact(p) {
        *f = q;
        k += 1;
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightOptions {
    pub target_error: Rational,
    /// Levels computed before the observed constant is trusted.
    pub min_level: u32,
    pub max_level: u32,
    pub degree_ceiling: u32,
}

impl HeightOptions {
    pub fn new(target_error: Rational) -> Self {
        HeightOptions {
            target_error,
            min_level: DEFAULT_MIN_LEVEL,
            max_level: DEFAULT_MAX_LEVEL,
            degree_ceiling: DEFAULT_DEGREE_CEILING,
        }
    }

    /// Compute exactly levels `0..=m`.
    pub fn fixed_level(m: u32) -> Self {
        HeightOptions {
            target_error: Rational::zero(),
            min_level: m,
            max_level: m,
            degree_ceiling: DEFAULT_DEGREE_CEILING,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightEstimate {
    pub level: u32,
    /// `h([2^level]P) / (3 * 4^level)`, or exactly 0 once torsion is detected.
    pub value: Rational,
    pub error_bound: Rational,
    /// Constant used for `error_bound = C / (9 * 4^level)`.
    pub constant_c: Rational,
    /// `2 deg Δ`, reported alongside the observed constant.
    pub apriori_c: Rational,
    /// Whether every observed quadrupling defect stayed within `apriori_c`.
    pub apriori_holds: bool,
    /// `h([2^m]P)` for `m = 0..=level`.
    pub heights: Vec<u32>,
    pub torsion: bool,
    pub target_met: bool,
}

impl HeightEstimate {
    pub fn interval(&self) -> Interval {
        Interval::new(self.value.clone(), self.error_bound.clone())
    }

    /// Estimate at an earlier level, with the same constant.
    pub fn at_level(&self, m: u32) -> HeightEstimate {
        assert!(m <= self.level);
        let mut out = self.clone();
        out.level = m;
        out.heights.truncate(m as usize + 1);
        if !self.torsion {
            out.value = level_value(self.heights[m as usize], m);
            out.error_bound = level_error(&self.constant_c, m);
        }
        out
    }

    /// Largest `|h([2^{m+1}]P) - 4 h([2^m]P)|` over consecutive computed levels.
    pub fn observed_defect(&self) -> u64 {
        max_defect(&self.heights)
    }
}

fn pow4(m: u32) -> BigInt {
    BigInt::one() << (2 * m as usize)
}

fn level_value(h: u32, m: u32) -> Rational {
    Rational::new(BigInt::from(h), pow4(m) * 3)
}

fn level_error(c: &Rational, m: u32) -> Rational {
    c / Rational::from_integer(pow4(m) * 9)
}

fn max_defect(heights: &[u32]) -> u64 {
    heights.windows(2).map(|w| (w[1] as i64 - 4 * w[0] as i64).unsigned_abs()).max().unwrap_or(0)
}

impl WeierstrassModel {
    /// Degree of the discriminant in the affine chart of the first variable.
    pub fn discriminant_degree(&self) -> u32 {
        let d = self.discriminant_numerator();
        match d.dehomogenize() {
            Ok(a) => a.degree(),
            Err(_) => d.degree(),
        }
    }

    /// Canonical height estimate from `h([2^m]P) / (3 * 4^m)`.
    ///
    /// Levels are added until `m >= min_level` and `C / (9 * 4^m)` is at most
    /// the target, or `max_level` is reached. `C` starts at `2 deg Δ` and is
    /// replaced by the largest observed defect once two levels exist; the final
    /// `C` is used for every level so the intervals nest.
    pub fn canonical_height(&self, p: &ProjPoint, opts: &HeightOptions) -> Result<HeightEstimate> {
        let orbit = self.doubling_orbit(p, 0)?;
        self.canonical_height_from(orbit, opts)
    }

    pub(crate) fn canonical_height_from(
        &self,
        mut orbit: Vec<ProjPoint>,
        opts: &HeightOptions,
    ) -> Result<HeightEstimate> {
        let apriori = Rational::from_integer(BigInt::from(2 * self.discriminant_degree()));
        let torsion_estimate = |heights: Vec<u32>, level: u32| HeightEstimate {
            level,
            value: Rational::zero(),
            error_bound: Rational::zero(),
            constant_c: Rational::zero(),
            apriori_c: apriori.clone(),
            apriori_holds: true,
            heights,
            torsion: true,
            target_met: true,
        };
        let mut heights: Vec<u32> = Vec::new();
        let mut m = 0u32;
        loop {
            if orbit.len() <= m as usize {
                let next = self.double_unchecked(orbit.last().unwrap())?;
                orbit.push(next);
            }
            let q = &orbit[m as usize];
            let h = weil_height(q);
            if h > opts.degree_ceiling {
                return Err(Error::DegreeExplosion { level: m, degree: h, ceiling: opts.degree_ceiling });
            }
            heights.push(h);
            if q.is_infinity() {
                return Ok(torsion_estimate(heights, m));
            }
            let neg = q.negate();
            if orbit[..m as usize].iter().any(|r| *r == *q || *r == neg) {
                return Ok(torsion_estimate(heights, m));
            }
            let c =
                if heights.len() >= 2 { Rational::from_integer(max_defect(&heights).into()) } else { apriori.clone() };
            let err = level_error(&c, m);
            let done = m >= opts.min_level && err <= opts.target_error;
            if done || m >= opts.max_level {
                let apriori_holds = Rational::from_integer(max_defect(&heights).into()) <= apriori;
                return Ok(HeightEstimate {
                    level: m,
                    value: level_value(h, m),
                    error_bound: err,
                    constant_c: c,
                    apriori_c: apriori,
                    apriori_holds,
                    heights,
                    torsion: false,
                    target_met: done,
                });
            }
            m += 1;
        }
    }

    /// `<P, Q> = (ĥ(P+Q) - ĥ(P) - ĥ(Q)) / 2` as an interval of radius at most
    /// three halves of the target error.
    pub fn height_pairing(&self, p: &ProjPoint, q: &ProjPoint, opts: &HeightOptions) -> Result<Interval> {
        let hp = self.canonical_height(p, opts)?.interval();
        let hq = self.canonical_height(q, opts)?.interval();
        let s = self.add(p, q)?;
        let hs = self.canonical_height(&s, opts)?.interval();
        Ok(hs.sub(&hp).sub(&hq).scale(&Rational::new(1.into(), 2.into())))
    }

    /// Gram matrix of the pairing.
    pub fn pairing_matrix(&self, points: &[ProjPoint], opts: &HeightOptions) -> Result<Vec<Vec<Interval>>> {
        let half = Rational::new(1.into(), 2.into());
        let singles: Vec<Interval> =
            points.iter().map(|p| self.canonical_height(p, opts).map(|e| e.interval())).collect::<Result<_>>()?;
        let r = points.len();
        let mut m = vec![vec![Interval::exact(Rational::zero()); r]; r];
        for i in 0..r {
            m[i][i] = singles[i].clone();
            for j in i + 1..r {
                let s = self.add(&points[i], &points[j])?;
                let hs = self.canonical_height(&s, opts)?.interval();
                let v = hs.sub(&singles[i]).sub(&singles[j]).scale(&half);
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        Ok(m)
    }

    pub fn regulator_interval(&self, points: &[ProjPoint], opts: &HeightOptions) -> Result<Interval> {
        Ok(Interval::determinant(&self.pairing_matrix(points, opts)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_poly, ratio};
    use crate::curve::FunctionFieldCurve;

    const T: VarSpace = VarSpace::Affine(2);

    fn t(s: &str) -> MultiPoly {
        parse_poly(s, T).unwrap()
    }

    fn one() -> MultiPoly {
        t("1")
    }

    #[test]
    fn divisor_sum_examples() {
        let t1 = VarSpace::Affine(1);
        let x = parse_poly("T1", t1).unwrap();
        let c = MultiPoly::one(t1);
        assert_eq!(weil_height_divisor_sum(&[(x.clone(), c.clone()), (c.clone(), c.clone())], &[x]).unwrap(), 1);
        let seven = MultiPoly::from_int(t1, 7);
        assert_eq!(weil_height_divisor_sum(&[(seven, c.clone()), (c.clone(), c)], &[]).unwrap(), 0);
        let s = VarSpace::Projective(2);
        let primes = [parse_poly("S0", s).unwrap(), parse_poly("S2", s).unwrap()];
        let coords = [(t("T2"), one()), (t("T2^2"), one()), (one(), one())];
        assert_eq!(weil_height_divisor_sum(&coords, &primes).unwrap(), 2);
        assert_eq!(weil_height_divisor_sum(&coords, &primes[..1]).unwrap(), 2);
        // [T2 : T2^2] shares T2 in both numerators
        let shared = [(t("T2"), one()), (t("T2^2"), one())];
        assert!(matches!(weil_height_divisor_sum(&shared, &primes[..1]), Err(Error::UncoveredSupport(_))));
        assert_eq!(weil_height_divisor_sum(&shared, &primes).unwrap(), 1);
        let pole = [(one(), t("T2")), (one(), one())];
        assert!(matches!(weil_height_divisor_sum(&pole, &[]), Err(Error::UncoveredSupport(_))));
    }

    #[test]
    fn divisor_sum_with_denominators() {
        // [1/T1 : 1] = [1 : T1]
        let coords = [(one(), t("T1")), (one(), one())];
        assert_eq!(weil_height_divisor_sum(&coords, &[t("T1")]).unwrap(), 1);
    }

    #[test]
    fn fixture_sequence_starts_two_eight() {
        let c = FunctionFieldCurve::parse(2, "T1", "T2^4 - T2^3 - T1*T2").unwrap();
        let m = c.model();
        let p = m.point(t("T2"), t("T2^2"), one()).unwrap();
        let e = m.canonical_height(&p, &HeightOptions::fixed_level(1)).unwrap();
        assert_eq!(e.heights, vec![2, 8]);
        assert_eq!(e.value, ratio(2, 3));
        assert_eq!(e.at_level(0).value, ratio(2, 3));
    }

    #[test]
    fn infinity_and_two_torsion() {
        let c = FunctionFieldCurve::parse(2, "-T1^2", "0").unwrap();
        let m = c.model();
        let o = ProjPoint::infinity(VarSpace::Projective(2));
        let e = m.canonical_height(&o, &HeightOptions::new(ratio(1, 100))).unwrap();
        assert!(e.torsion && e.value.is_zero() && e.error_bound.is_zero());
        let p = m.point(t("T1"), t("0"), one()).unwrap();
        let e = m.canonical_height(&p, &HeightOptions::new(ratio(1, 100))).unwrap();
        assert_eq!((e.level, e.torsion), (1, true));
    }

    #[test]
    fn order_three_is_detected_by_the_orbit() {
        let c = FunctionFieldCurve::parse(2, "0", "T1^2").unwrap();
        let m = c.model();
        let p = m.point(t("0"), t("T1"), one()).unwrap();
        let e = m.canonical_height(&p, &HeightOptions::new(ratio(1, 100))).unwrap();
        assert!(e.torsion);
        assert_eq!(e.level, 1);
    }
}
