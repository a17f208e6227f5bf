//! Points `[x : y : z]` given by coprime forms of a common degree, and the
//! group law on a [`WeierstrassModel`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{poly_gcd_many, rational::lcm_denominators, MultiPoly, Rational, VarSpace};
use crate::curve::WeierstrassModel;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    x: MultiPoly,
    y: MultiPoly,
    z: MultiPoly,
}

impl ProjPoint {
    /// `O = [0 : 1 : 0]`.
    pub fn infinity(space: VarSpace) -> Self {
        let space = space.projective_closure().unwrap_or(space);
        ProjPoint { x: MultiPoly::zero(space), y: MultiPoly::one(space), z: MultiPoly::zero(space) }
    }

    /// Canonical representative of `[x : y : z]`.
    ///
    /// Affine input is homogenized to the largest degree; homogeneous input of
    /// unequal degrees is padded with powers of the first variable. The common
    /// factor is removed, the coefficients are scaled to coprime integers, and
    /// the graded-lex leading coefficient of `y` (else `x`, else `z`) is made
    /// positive.
    pub fn normalize(x: MultiPoly, y: MultiPoly, z: MultiPoly) -> Result<Self> {
        let space = x.space();
        for c in [&y, &z] {
            if c.space() != space {
                return Err(Error::SpaceMismatch(space.to_string(), c.space().to_string()));
            }
        }
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Err(Error::ZeroPoint);
        }
        let d = [&x, &y, &z].iter().filter(|c| !c.is_zero()).map(|c| c.degree()).max().unwrap();
        let [x, y, z] = if space.is_homogeneous() {
            let mut out = Vec::with_capacity(3);
            for c in [x, y, z] {
                if !c.is_homogeneous() {
                    return Err(Error::NotHomogeneous(c.to_string()));
                }
                out.push(if c.is_zero() { c } else { c.shift(0, d - c.degree()) });
            }
            <[MultiPoly; 3]>::try_from(out).unwrap()
        } else {
            if space.projective_closure().is_none() {
                return Err(Error::SpaceMismatch("a coordinate space".into(), space.to_string()));
            }
            [x.homogenize(d)?, y.homogenize(d)?, z.homogenize(d)?]
        };
        Ok(Self::reduce(x, y, z))
    }

    /// Removes the common factor of a homogeneous triple of equal degree.
    pub(crate) fn reduce(x: MultiPoly, y: MultiPoly, z: MultiPoly) -> Self {
        let space = x.space();
        let g = poly_gcd_many(space, [&x, &y, &z].into_iter().filter(|c| !c.is_zero()));
        let (x, y, z) = if g.is_constant() {
            (x, y, z)
        } else {
            let q = |c: &MultiPoly| c.div_exact(&g).expect("gcd divides each coordinate");
            (q(&x), q(&y), q(&z))
        };
        let scale = joint_content(&[&x, &y, &z]);
        ProjPoint { x: x.scale(&scale), y: y.scale(&scale), z: z.scale(&scale) }
    }

    pub fn x(&self) -> &MultiPoly {
        &self.x
    }

    pub fn y(&self) -> &MultiPoly {
        &self.y
    }

    pub fn z(&self) -> &MultiPoly {
        &self.z
    }

    pub fn coords(&self) -> [&MultiPoly; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn space(&self) -> VarSpace {
        self.x.space()
    }

    pub fn is_infinity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Common degree `δ` of the coordinates.
    pub fn degree(&self) -> u32 {
        self.coords().iter().filter(|c| !c.is_zero()).map(|c| c.degree()).max().unwrap_or(0)
    }

    pub fn negate(&self) -> ProjPoint {
        if self.is_infinity() {
            return self.clone();
        }
        let (x, y, z) = (self.x.clone(), -&self.y, self.z.clone());
        let scale = joint_content(&[&x, &y, &z]);
        ProjPoint { x: x.scale(&scale), y: y.scale(&scale), z: z.scale(&scale) }
    }

    /// Substitutes the coordinate forms and renormalizes; `None` if all three vanish.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Option<ProjPoint>> {
        let x = self.x.substitute(images)?;
        let y = self.y.substitute(images)?;
        let z = self.z.substitute(images)?;
        if x.is_zero() && y.is_zero() && z.is_zero() {
            return Ok(None);
        }
        ProjPoint::normalize(x, y, z).map(Some)
    }
}

/// The scalar making all coefficients coprime integers with the sign rule applied.
fn joint_content(coords: &[&MultiPoly; 3]) -> Rational {
    let den = lcm_denominators(coords.iter().flat_map(|c| c.terms().map(|(_, v)| v)));
    let num = coords
        .iter()
        .flat_map(|c| c.terms().map(|(_, v)| v))
        .fold(BigInt::zero(), |g, v| g.gcd(&(v.numer() * (&den / v.denom()))));
    let lead = [coords[1], coords[0], coords[2]]
        .into_iter()
        .find(|c| !c.is_zero())
        .map(|c| c.leading_coeff())
        .expect("nonzero point");
    let s = Rational::new(den, num);
    if lead.is_negative() {
        -s
    } else {
        s
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {} : {}]", self.x, self.y, self.z)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.space())
    }
}

/// Fraction of two forms.
#[derive(Clone, Debug)]
struct Fr {
    num: MultiPoly,
    den: MultiPoly,
}

impl Fr {
    fn new(num: MultiPoly, den: MultiPoly) -> Fr {
        debug_assert!(!den.is_zero());
        Fr { num, den }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, o: &Fr) -> Fr {
        if self.den == o.den {
            return Fr::new(&self.num + &o.num, self.den.clone());
        }
        Fr::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    fn neg(&self) -> Fr {
        Fr::new(-&self.num, self.den.clone())
    }

    fn sub(&self, o: &Fr) -> Fr {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Fr) -> Fr {
        Fr::new(&self.num * &o.num, &self.den * &o.den)
    }

    fn div(&self, o: &Fr) -> Fr {
        Fr::new(&self.num * &o.den, &self.den * &o.num)
    }

    fn scale(&self, c: i64) -> Fr {
        Fr::new(self.num.scale(&Rational::from_integer(c.into())), self.den.clone())
    }

    fn reduced(&self) -> Fr {
        if self.num.is_zero() {
            return Fr::new(self.num.clone(), MultiPoly::one(self.den.space()));
        }
        let g = crate::algebra::poly_gcd(&self.num, &self.den);
        let num = self.num.div_exact(&g).expect("gcd divides");
        let den = self.den.div_exact(&g).expect("gcd divides");
        let c = den.leading_coeff();
        Fr::new(num.scale(&c.recip()), den.scale(&c.recip()))
    }

    fn same(&self, o: &Fr) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl WeierstrassModel {
    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.space() == self.space() && self.equation(p.x(), p.y(), p.z()).is_zero()
    }

    fn check(&self, p: &ProjPoint) -> Result<()> {
        if p.space() != self.space() {
            return Err(Error::SpaceMismatch(self.space().to_string(), p.space().to_string()));
        }
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        Ok(())
    }

    /// Builds a point from affine or homogeneous coordinates and checks it lies on the curve.
    pub fn point(&self, x: MultiPoly, y: MultiPoly, z: MultiPoly) -> Result<ProjPoint> {
        let p = ProjPoint::normalize(x, y, z)?;
        self.check(&p)?;
        Ok(p)
    }

    /// Chord-tangent addition in affine slopes over the fraction field.
    pub fn add(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
        self.check(p)?;
        self.check(q)?;
        self.add_unchecked(p, q)
    }

    pub(crate) fn add_unchecked(&self, p: &ProjPoint, q: &ProjPoint) -> Result<ProjPoint> {
        if p.is_infinity() {
            return Ok(q.clone());
        }
        if q.is_infinity() {
            return Ok(p.clone());
        }
        let x1 = Fr::new(p.x.clone(), p.z.clone());
        let y1 = Fr::new(p.y.clone(), p.z.clone());
        let x2 = Fr::new(q.x.clone(), q.z.clone());
        let y2 = Fr::new(q.y.clone(), q.z.clone());
        let lambda = if x1.same(&x2) {
            if y1.add(&y2).is_zero() {
                return Ok(ProjPoint::infinity(self.space()));
            }
            let a = Fr::new(self.a().num.clone(), self.a().den.clone());
            x1.mul(&x1).scale(3).add(&a).div(&y1.scale(2))
        } else {
            y2.sub(&y1).div(&x2.sub(&x1))
        }
        .reduced();
        let x3 = lambda.mul(&lambda).sub(&x1).sub(&x2).reduced();
        let y3 = lambda.mul(&x1.sub(&x3)).sub(&y1).reduced();
        let x = &x3.num * &y3.den;
        let y = &y3.num * &x3.den;
        let z = &x3.den * &y3.den;
        Ok(ProjPoint::reduce(x, y, z))
    }

    pub fn negate(&self, p: &ProjPoint) -> ProjPoint {
        p.negate()
    }

    /// `[2]P` by the first projective doubling formula, cross-checked against the
    /// second (derived using the curve equation) after normalization.
    pub fn double(&self, p: &ProjPoint) -> Result<ProjPoint> {
        self.check(p)?;
        self.double_unchecked(p)
    }

    pub(crate) fn double_unchecked(&self, p: &ProjPoint) -> Result<ProjPoint> {
        if p.is_infinity() {
            return Ok(p.clone());
        }
        let d1 = self.double_first_formula(p)?;
        let d2 = self.double_second_formula(p)?;
        if d1 != d2 {
            return Err(Error::DoublingMismatch);
        }
        Ok(d1)
    }

    /// `[2yz((3x^2+Az^2)^2 - 2xz(2y)^2) : -(3x^2+Az^2)^3 + z(2y)^2(8x^3+2Axz^2-Bz^3-y^2z) : 8y^3z^3]`.
    pub fn double_first_formula(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let (x, y, z) = (&p.x, &p.y, &p.z);
        let (an, ad) = (&self.a().num, &self.a().den);
        let (bn, bd) = (&self.b().num, &self.b().den);
        let c = |k: i64| Rational::from_integer(k.into());
        let x2 = x * x;
        let y2 = y * y;
        let z2 = z * z;
        let ad2 = ad * ad;
        let adbd = ad * bd;
        // ad * (3x^2 + A z^2)
        let l = &(&x2 * ad).scale(&c(3)) + &(an * &z2);
        let l2 = &l * &l;
        let xzy2 = &(x * z) * &y2;
        let first = &(&(y * z).scale(&c(2)) * &(&l2 - (&(&xzy2 * &ad2).scale(&c(8))))) * &adbd;
        let inner = &(&(&(&(&x2 * x).scale(&c(8)) - &(&y2 * z)) * &adbd) + &(&(&(an * bd) * x) * &z2).scale(&c(2)))
            - &(&(&(bn * ad) * &z2) * z);
        let second = &(&(-&(&l2 * &l)) * bd) + (&(&(&(z * &y2) * &ad2) * &inner).scale(&c(4)));
        let third = (&(&(&y2 * y) * &(&z2 * z)) * &(&ad2 * &adbd)).scale(&c(8));
        ProjPoint::normalize(first, second, third)
    }

    /// The second formula, valid on the curve:
    /// `[2y(xy^2 - 3Ax^2z - 9Bxz^2 + A^2z^3) : 4y^2(7y^2 - 6Axz - 9Bz^2)
    ///   - (27(y^2 - Axz - Bz^2)^2 + 27Ax^4 + 9A^2x^2z^2 + A^3z^4) : 8y^3z]`.
    pub fn double_second_formula(&self, p: &ProjPoint) -> Result<ProjPoint> {
        let (x, y, z) = (&p.x, &p.y, &p.z);
        let (an, ad) = (&self.a().num, &self.a().den);
        let (bn, bd) = (&self.b().num, &self.b().den);
        let c = |k: i64| Rational::from_integer(k.into());
        let x2 = x * x;
        let y2 = y * y;
        let z2 = z * z;
        let ad2 = ad * ad;
        let ad3 = &ad2 * ad;
        let bd2 = bd * bd;
        let adbd = ad * bd;
        let xz = x * z;
        // First coordinate times ad^2 bd.
        let f_inner = &(&(&(&(x * &y2) * &(&ad2 * bd)) - &(&(&(an * &adbd) * &x2) * z).scale(&c(3)))
            - &(&(&(bn * &ad2) * x) * &z2).scale(&c(9)))
            + &(&(&(an * an) * bd) * &(&z2 * z));
        let first = &(y * &f_inner).scale(&c(2)) * &adbd;
        // Second coordinate times ad^3 bd^2.
        let s1 = &(&(&(&y2 * &ad3) * &bd2).scale(&c(7)) - &(&(&(an * &ad2) * &bd2) * &xz).scale(&c(6)))
            - &(&(&(bn * &ad3) * bd) * &z2).scale(&c(9));
        let s1 = &(&y2 * &s1).scale(&c(4));
        let sq = &(&(&y2 * &adbd) - &(&(an * bd) * &xz)) - &(&(bn * ad) * &z2);
        let s2 = &(&(&sq * &sq) * ad).scale(&c(27));
        let s3 = &(&(&(an * &ad2) * &bd2) * &(&x2 * &x2)).scale(&c(27));
        let s4 = &(&(&(&(an * an) * ad) * &bd2) * &(&x2 * &z2)).scale(&c(9));
        let s5 = &(&(&(an * an) * an) * &bd2) * &(&z2 * &z2);
        let second = &(&(&(s1 - s2) - s3) - s4) - &s5;
        let third = (&(&(&y2 * y) * z) * &(&ad3 * &bd2)).scale(&c(8));
        ProjPoint::normalize(first, second, third)
    }

    /// `[m]P` by double-and-add; negative `m` negates.
    pub fn scalar_multiply(&self, m: i64, p: &ProjPoint) -> Result<ProjPoint> {
        self.check(p)?;
        self.scalar_multiply_unchecked(m, p)
    }

    pub(crate) fn scalar_multiply_unchecked(&self, m: i64, p: &ProjPoint) -> Result<ProjPoint> {
        let mut acc = ProjPoint::infinity(self.space());
        let base = if m < 0 { p.negate() } else { p.clone() };
        let k = m.unsigned_abs();
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = self.double_unchecked(&acc)?;
            if (k >> bit) & 1 == 1 {
                acc = self.add_unchecked(&acc, &base)?;
            }
        }
        Ok(acc)
    }

    /// `[2^m]P` for `m = 0..=levels`, stopping early at `O`.
    pub fn doubling_orbit(&self, p: &ProjPoint, levels: u32) -> Result<Vec<ProjPoint>> {
        self.check(p)?;
        let mut out = vec![p.clone()];
        for _ in 0..levels {
            let last = out.last().unwrap();
            if last.is_infinity() {
                break;
            }
            out.push(self.double_unchecked(last)?);
        }
        Ok(out)
    }
}
