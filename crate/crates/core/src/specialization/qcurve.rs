//! Cubics `y^2 = x^3 + a x + b` over `Q`, possibly singular, with the
//! chord-tangent law on their nonsingular points and a naive-height
//! estimator of the canonical height.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::rational::ln_abs;
use crate::algebra::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberClass {
    Nonsingular,
    Node,
    Cusp,
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberClass::Nonsingular => "nonsingular",
            FiberClass::Node => "node",
            FiberClass::Cusp => "cusp",
        })
    }
}

/// A point of `P^2(Q)` as coprime integers; the first nonzero of `y`, `x`, `z` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QProjPoint {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl QProjPoint {
    pub fn new(x: BigInt, y: BigInt, z: BigInt) -> Result<Self> {
        let g = x.gcd(&y).gcd(&z);
        if g.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let lead = [&y, &x, &z].into_iter().find(|c| !c.is_zero()).unwrap();
        let g = if lead.is_negative() { -g } else { g };
        Ok(QProjPoint { x: x / &g, y: y / &g, z: z / &g })
    }

    pub fn from_rationals(x: &Rational, y: &Rational, z: &Rational) -> Result<Self> {
        let den = x.denom().lcm(y.denom()).lcm(z.denom());
        let scale = |r: &Rational| r.numer() * (&den / r.denom());
        Self::new(scale(x), scale(y), scale(z))
    }

    pub fn infinity() -> Self {
        QProjPoint { x: BigInt::zero(), y: BigInt::one(), z: BigInt::zero() }
    }

    pub fn to_point(&self) -> QPoint {
        if self.z.is_zero() {
            QPoint::Infinity
        } else {
            QPoint::Affine(Rational::new(self.x.clone(), self.z.clone()), Rational::new(self.y.clone(), self.z.clone()))
        }
    }
}

impl fmt::Display for QProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.x, self.y, self.z)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QPoint {
    Infinity,
    Affine(Rational, Rational),
}

impl QPoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, QPoint::Infinity)
    }

    pub fn to_proj(&self) -> QProjPoint {
        match self {
            QPoint::Infinity => QProjPoint::infinity(),
            QPoint::Affine(x, y) => {
                QProjPoint::from_rationals(x, y, &Rational::one()).expect("affine point is nonzero")
            }
        }
    }

    pub fn negate(&self) -> QPoint {
        match self {
            QPoint::Infinity => QPoint::Infinity,
            QPoint::Affine(x, y) => QPoint::Affine(x.clone(), -y),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedCurve {
    pub a: Rational,
    pub b: Rational,
    pub delta: Rational,
    pub fiber_class: FiberClass,
}

impl SpecializedCurve {
    pub fn new(a: Rational, b: Rational) -> Self {
        let four = Rational::from_integer(4.into());
        let delta =
            Rational::from_integer((-16).into()) * (&four * &a * &a * &a + Rational::from_integer(27.into()) * &b * &b);
        let fiber_class = if !delta.is_zero() {
            FiberClass::Nonsingular
        } else if a.is_zero() {
            FiberClass::Cusp
        } else {
            FiberClass::Node
        };
        SpecializedCurve { a, b, delta, fiber_class }
    }

    /// The node or cusp, if the cubic is singular.
    pub fn singular_point(&self) -> Option<QPoint> {
        match self.fiber_class {
            FiberClass::Nonsingular => None,
            FiberClass::Cusp => Some(QPoint::Affine(Rational::zero(), Rational::zero())),
            FiberClass::Node => {
                let x0 = Rational::from_integer((-3).into()) * &self.b / (Rational::from_integer(2.into()) * &self.a);
                Some(QPoint::Affine(x0, Rational::zero()))
            }
        }
    }

    pub fn contains(&self, p: &QPoint) -> bool {
        match p {
            QPoint::Infinity => true,
            QPoint::Affine(x, y) => y * y == x * x * x + &self.a * x + &self.b,
        }
    }

    pub fn contains_proj(&self, p: &QProjPoint) -> bool {
        let (x, y, z) = (&p.x, &p.y, &p.z);
        let a = &self.a;
        let b = &self.b;
        let lhs = Rational::from_integer(y * y * z - x * x * x);
        let rhs = a * Rational::from_integer(x * z * z) + b * Rational::from_integer(z * z * z);
        lhs == rhs
    }

    pub fn is_singular_point(&self, p: &QPoint) -> Result<bool> {
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        Ok(self.singular_point().as_ref() == Some(p))
    }

    /// Chord-tangent addition; both points must be nonsingular.
    pub fn add(&self, p: &QPoint, q: &QPoint) -> QPoint {
        let (x1, y1) = match p {
            QPoint::Infinity => return q.clone(),
            QPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            QPoint::Infinity => return p.clone(),
            QPoint::Affine(x, y) => (x, y),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return QPoint::Infinity;
            }
            (Rational::from_integer(3.into()) * x1 * x1 + &self.a) / (Rational::from_integer(2.into()) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - x1 - x2;
        let y3 = &lambda * (x1 - &x3) - y1;
        QPoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &QPoint) -> QPoint {
        self.add(p, p)
    }

    pub fn multiply(&self, m: i64, p: &QPoint) -> QPoint {
        let base = if m < 0 { p.negate() } else { p.clone() };
        let k = m.unsigned_abs();
        let mut acc = QPoint::Infinity;
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = self.double(&acc);
            if (k >> bit) & 1 == 1 {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    /// Least `k <= cap` with `[k]P = O`, found by exact multiplication.
    pub fn torsion_order(&self, p: &QPoint, cap: u32) -> Option<u32> {
        let mut acc = p.clone();
        for k in 1..=cap {
            if acc.is_infinity() {
                return Some(k);
            }
            acc = self.add(&acc, p);
        }
        None
    }

    /// `u` with `u^4 a, u^6 b` integral, and the scaled coefficients.
    fn integral_model(&self) -> (BigInt, BigInt, BigInt) {
        let u = self.a.denom().lcm(self.b.denom());
        let ai = (Rational::from_integer(u.pow(4)) * &self.a).to_integer();
        let bi = (Rational::from_integer(u.pow(6)) * &self.b).to_integer();
        (u, ai, bi)
    }

    /// `lim ln max(|p_m|, |q_m|) / (2 * 4^m)` for `x([2^m]P) = p_m / q_m`, by
    /// exact x-only doubling on an integral model.
    ///
    /// Stops at the first level where consecutive estimates differ by less
    /// than `tol / 2` and the difference bound `B / 4^m` is at most `tol / 2`,
    /// where `|h(x)/2 - ĥ| <= B` with `B = h(j)/8 + h(Δ)/12 + 1.07` (Silverman,
    /// for an integral model with `b2 = 0`). Without the second condition a
    /// plateau in the sequence can stop it early.
    pub fn canonical_height(&self, p: &QPoint, tol: f64, max_level: u32) -> Result<QHeightEstimate> {
        if self.fiber_class != FiberClass::Nonsingular {
            return Err(Error::Precondition("canonical height needs a nonsingular fiber".into()));
        }
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let (x, _) = match p {
            QPoint::Infinity => return Ok(QHeightEstimate::torsion(0, vec![])),
            QPoint::Affine(x, y) => (x, y),
        };
        let (u, a, b) = self.integral_model();
        let x = Rational::from_integer(u.pow(2)) * x;
        let mut num = x.numer().clone();
        let mut den = x.denom().clone();
        let mut seen: Vec<(BigInt, BigInt)> = vec![(num.clone(), den.clone())];
        let mut estimates = vec![naive(&num, &den) / 2.0];
        let a2 = &a * &a;
        let disc = BigInt::from(4) * &a2 * &a + BigInt::from(27) * &b * &b;
        let res = BigInt::from(256) * &disc * &disc;
        let bound = difference_bound(&a, &disc);
        for m in 1..=max_level {
            // x(2P) = (x^4 - 2a x^2 - 8b x + a^2) / (4 (x^3 + a x + b))
            let p2 = &num * &num;
            let q2 = &den * &den;
            let n = &p2 * &p2 - BigInt::from(2) * &a * &p2 * &q2 - BigInt::from(8) * &b * &num * &q2 * &den
                + &a2 * &q2 * &q2;
            let d = BigInt::from(4) * &den * (&p2 * &num + &a * &num * &q2 + &b * &q2 * &den);
            if d.is_zero() {
                return Ok(QHeightEstimate::torsion(m, estimates));
            }
            // for coprime p/q, gcd(N, D) divides the resultant of the two forms
            let g1 = (&n % &res).gcd(&res);
            let g = (&d % &g1).gcd(&g1);
            let (mut n, mut d) = (n / &g, d / &g);
            if d.is_negative() {
                n = -n;
                d = -d;
            }
            num = n;
            den = d;
            if seen.iter().any(|(sp, sq)| *sp == num && *sq == den) {
                return Ok(QHeightEstimate::torsion(m, estimates));
            }
            seen.push((num.clone(), den.clone()));
            let est = naive(&num, &den) / (2.0 * 4f64.powi(m as i32));
            let prev = *estimates.last().unwrap();
            estimates.push(est);
            let radius = bound / 4f64.powi(m as i32);
            if (est - prev).abs() < tol / 2.0 && radius <= tol / 2.0 && m >= 2 {
                return Ok(QHeightEstimate { value: est, level: m, estimates, torsion: false, tol, radius });
            }
        }
        Err(Error::NoConvergence { levels: max_level })
    }
}

/// `h(j)/8 + h(Δ)/12 + 1.07` for `y^2 = x^3 + a x + b` with `disc = 4a^3 + 27b^2`.
fn difference_bound(a: &BigInt, disc: &BigInt) -> f64 {
    let j = Rational::new(BigInt::from(6912) * a * a * a, disc.clone());
    let delta = BigInt::from(16) * disc;
    naive(j.numer(), j.denom()) / 8.0 + ln_abs(&delta) / 12.0 + 1.07
}

fn naive(p: &BigInt, q: &BigInt) -> f64 {
    ln_abs(p).max(ln_abs(q))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QHeightEstimate {
    pub value: f64,
    pub level: u32,
    /// Estimate at every level computed; the last two certify the stop.
    pub estimates: Vec<f64>,
    pub torsion: bool,
    pub tol: f64,
    /// Proven `|value - ĥ|` from the difference bound; 0 for torsion.
    pub radius: f64,
}

impl QHeightEstimate {
    fn torsion(level: u32, estimates: Vec<f64>) -> Self {
        QHeightEstimate { value: 0.0, level, estimates, torsion: true, tol: 0.0, radius: 0.0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn pt(x: i64, y: i64) -> QPoint {
        QPoint::Affine(rat(x), rat(y))
    }

    #[test]
    fn classification() {
        let e = SpecializedCurve::new(rat(2), rat(48));
        assert_eq!(e.delta, rat(-995840));
        assert_eq!(e.fiber_class, FiberClass::Nonsingular);
        assert!(!e.is_singular_point(&pt(3, 9)).unwrap());
        let cusp = SpecializedCurve::new(rat(0), rat(0));
        assert!(cusp.is_singular_point(&pt(0, 0)).unwrap());
        let node = SpecializedCurve::new(rat(-3), rat(2));
        assert_eq!(node.fiber_class, FiberClass::Node);
        assert_eq!(node.singular_point(), Some(pt(1, 0)));
        assert!(node.is_singular_point(&pt(1, 0)).unwrap());
        assert_eq!(node.is_singular_point(&pt(1, 1)), Err(Error::NotOnCurve));
    }

    #[test]
    fn group_law_over_q() {
        let e = SpecializedCurve::new(rat(2), rat(48));
        let p = pt(3, 9);
        let d = e.double(&p);
        assert!(e.contains(&d));
        assert_eq!(e.add(&p, &p.negate()), QPoint::Infinity);
        assert_eq!(e.multiply(3, &p), e.add(&d, &p));
        let t = SpecializedCurve::new(rat(-1), rat(0));
        assert_eq!(t.torsion_order(&pt(0, 0), 12), Some(2));
    }

    #[test]
    fn projective_normalization() {
        let q = QProjPoint::new((-6).into(), (-9).into(), (-3).into()).unwrap();
        assert_eq!((q.x, q.y, q.z), (2.into(), 3.into(), 1.into()));
        let r = QProjPoint::from_rationals(&ratio(1, 2), &ratio(-1, 3), &rat(1)).unwrap();
        assert_eq!(r.to_string(), "[-3:2:-6]");
        assert_eq!(r.to_point(), QPoint::Affine(ratio(1, 2), ratio(-1, 3)));
    }

    #[test]
    fn canonical_height_is_quadratic() {
        let e = SpecializedCurve::new(rat(2), rat(48));
        let p = pt(3, 9);
        let tol = 1e-3;
        let h1 = e.canonical_height(&p, tol, 12).unwrap();
        let h2 = e.canonical_height(&e.double(&p), tol, 12).unwrap();
        assert!(h1.value > 0.0);
        assert!((h2.value - 4.0 * h1.value).abs() <= 5.0 * tol, "{} vs {}", h2.value, h1.value);
        let n = h1.estimates.len();
        assert!((h1.estimates[n - 1] - h1.estimates[n - 2]).abs() < tol / 2.0);
    }

    #[test]
    fn torsion_has_zero_height() {
        let e = SpecializedCurve::new(rat(-1), rat(0));
        let h = e.canonical_height(&pt(0, 0), 1e-3, 8).unwrap();
        assert!(h.torsion && h.value == 0.0);
        // y^2 = x^3 + 1 has (2, 3) of order 6
        let e = SpecializedCurve::new(rat(0), rat(1));
        let h = e.canonical_height(&pt(2, 3), 1e-3, 8).unwrap();
        assert!(h.torsion);
        let e = SpecializedCurve::new(ratio(3, 4), ratio(-1, 2));
        assert!(e.canonical_height(&QPoint::Affine(ratio(1, 2), rat(0)), 1e-3, 8).unwrap().torsion);
    }
}
