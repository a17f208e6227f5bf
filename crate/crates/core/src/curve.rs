//! Weierstrass curves `Y^2 Z = X^3 + A X Z^2 + B Z^3` over `Q(T1, ..., Tn)`.

use crate::algebra::{poly_gcd, squarefree_decompose, MultiPoly, Rational, SquarefreeDecomposition, VarSpace};
use crate::error::{Error, Result};

/// `-16 (4 A^3 + 27 B^2)`; an identically zero result means the cubic is singular.
pub fn discriminant(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    let four_a3 = a.pow(3).scale(&Rational::from_integer(4.into()));
    let b2 = b.pow(2).scale(&Rational::from_integer(27.into()));
    let d = (&four_a3 + &b2).scale(&Rational::from_integer((-16).into()));
    if d.is_zero() {
        return Err(Error::SingularCurve);
    }
    Ok(d)
}

/// Squarefree data showing that no `p` has `p^4 | A` and `p^6 | B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    /// `None` when `A = 0`, i.e. `ord(A)` is infinite everywhere.
    pub a: Option<SquarefreeDecomposition>,
    pub b: Option<SquarefreeDecomposition>,
}

#[derive(Clone, Debug)]
pub struct FunctionFieldCurve {
    n: usize,
    a: MultiPoly,
    b: MultiPoly,
    delta: MultiPoly,
    certificate: Option<MinimalityCertificate>,
    model: WeierstrassModel,
}

impl FunctionFieldCurve {
    pub fn new(n: usize, a: MultiPoly, b: MultiPoly) -> Result<Self> {
        if n < 1 {
            return Err(Error::Precondition("the base needs at least one variable".into()));
        }
        let space = VarSpace::Affine(n);
        for p in [&a, &b] {
            if p.space() != space {
                return Err(Error::SpaceMismatch(space.to_string(), p.space().to_string()));
            }
        }
        let delta = discriminant(&a, &b)?;
        let model = WeierstrassModel::over_base(&a, &b)?;
        Ok(FunctionFieldCurve { n, a, b, delta, certificate: None, model })
    }

    pub fn parse(n: usize, a: &str, b: &str) -> Result<Self> {
        let space = VarSpace::Affine(n);
        let a = crate::algebra::parse_poly(a, space)?;
        let b = crate::algebra::parse_poly(b, space)?;
        Self::new(n, a, b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &MultiPoly {
        &self.a
    }

    pub fn b(&self) -> &MultiPoly {
        &self.b
    }

    pub fn discriminant(&self) -> &MultiPoly {
        &self.delta
    }

    pub fn certificate(&self) -> Option<&MinimalityCertificate> {
        self.certificate.as_ref()
    }

    /// The projective model over `Q[S0..Sn]` used for points.
    pub fn model(&self) -> &WeierstrassModel {
        &self.model
    }

    pub fn affine_space(&self) -> VarSpace {
        VarSpace::Affine(self.n)
    }

    pub fn projective_space(&self) -> VarSpace {
        VarSpace::Projective(self.n)
    }

    /// Divides out `u^4, u^6` until the model is minimal away from `H∞`.
    ///
    /// Returns the reduced curve (carrying its certificate) and the accumulated
    /// primitive `u`.
    pub fn minimality_reduce(&self) -> Result<(FunctionFieldCurve, MultiPoly)> {
        let space = self.affine_space();
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        let mut u = MultiPoly::one(space);
        loop {
            let sa = if a.is_zero() { None } else { Some(squarefree_decompose(&a)?) };
            let sb = if b.is_zero() { None } else { Some(squarefree_decompose(&b)?) };
            let ra = high_radical(&sa, 4);
            let rb = high_radical(&sb, 6);
            let common = match (ra, rb) {
                (Radical::Everything, Radical::Everything) => return Err(Error::SingularCurve),
                (Radical::Everything, Radical::Poly(p)) | (Radical::Poly(p), Radical::Everything) => p,
                (Radical::Poly(p), Radical::Poly(q)) => poly_gcd(&p, &q),
            };
            if common.is_constant() {
                let mut curve = FunctionFieldCurve::new(self.n, a, b)?;
                curve.certificate = Some(MinimalityCertificate { a: sa, b: sb });
                return Ok((curve, u.primitive()));
            }
            a = a.div_exact(&common.pow(4)).ok_or_else(|| internal("u^4 divides A"))?;
            b = b.div_exact(&common.pow(6)).ok_or_else(|| internal("u^6 divides B"))?;
            u = &u * &common;
        }
    }

    /// The isomorphic model with poles moved from `H∞` to `S1 = 0`.
    pub fn infinity_model(&self) -> Result<InfinityModel> {
        InfinityModel::new(self)
    }

    /// Checks a user factorization of `Δ` and recovers multiplicities.
    ///
    /// Factors may be given in `T` or `S` coordinates (forms are dehomogenized).
    pub fn validate_divisor_list(&self, factors: &[MultiPoly]) -> Result<Vec<(MultiPoly, u32)>> {
        let mut residual = self.delta.clone();
        let mut out = Vec::with_capacity(factors.len());
        for f in factors {
            let f = self.to_affine_factor(f)?;
            let mut m = 0u32;
            while let Some(q) = residual.div_exact(&f) {
                residual = q;
                m += 1;
            }
            if m == 0 {
                return Err(Error::FactorListRejected {
                    residual: format!("{f} does not divide the remaining quotient {residual}"),
                });
            }
            out.push((f, m));
        }
        if !residual.is_constant() {
            return Err(Error::FactorListRejected { residual: residual.to_string() });
        }
        Ok(out)
    }

    pub(crate) fn to_affine_factor(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let f = match f.space() {
            VarSpace::Projective(n) if n == self.n => f.dehomogenize()?,
            VarSpace::Affine(n) if n == self.n => f.clone(),
            other => return Err(Error::SpaceMismatch(self.affine_space().to_string(), other.to_string())),
        };
        if f.is_constant() {
            return Err(Error::InvalidFactor(f.to_string()));
        }
        Ok(f.primitive())
    }
}

enum Radical {
    Everything,
    Poly(MultiPoly),
}

fn high_radical(d: &Option<SquarefreeDecomposition>, m: u32) -> Radical {
    match d {
        None => Radical::Everything,
        Some(d) => Radical::Poly(d.radical_at_least(m).unwrap_or_else(|| MultiPoly::one(d.space))),
    }
}

fn internal(what: &str) -> Error {
    Error::Internal(what.to_string())
}

/// `⌈d / q⌉` for nonnegative `d`.
fn ceil_div(d: u32, q: u32) -> u32 {
    d.div_ceil(q)
}

/// Degree-0 rational function `num / den` given by two forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatForm {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatForm {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn substitute(&self, images: &[MultiPoly]) -> Result<RatForm> {
        Ok(RatForm { num: self.num.substitute(images)?, den: self.den.substitute(images)? })
    }

    fn from_affine(p: &MultiPoly, hom_degree: u32) -> Result<RatForm> {
        let num = p.homogenize(hom_degree)?;
        let den = MultiPoly::var_pow(num.space(), 0, hom_degree);
        Ok(RatForm { num, den })
    }
}

/// A Weierstrass cubic whose coefficients are degree-0 rational functions in a
/// homogeneous polynomial ring. Over `K` this is `A = Ã / S0^deg A`; the same
/// shape carries the infinity model and reductions along hypersurfaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassModel {
    space: VarSpace,
    a: RatForm,
    b: RatForm,
}

impl WeierstrassModel {
    pub fn new(a: RatForm, b: RatForm) -> Result<Self> {
        let space = a.num.space();
        if !space.is_homogeneous() {
            return Err(Error::SpaceMismatch("a homogeneous space".into(), space.to_string()));
        }
        for p in [&a.num, &a.den, &b.num, &b.den] {
            if p.space() != space {
                return Err(Error::SpaceMismatch(space.to_string(), p.space().to_string()));
            }
            if !p.is_homogeneous() {
                return Err(Error::NotHomogeneous(p.to_string()));
            }
        }
        if a.den.is_zero() || b.den.is_zero() {
            return Err(Error::PoleAtGamma);
        }
        for r in [&a, &b] {
            if !r.num.is_zero() && r.num.degree() != r.den.degree() {
                return Err(Error::Internal("coefficient is not of degree zero".into()));
            }
        }
        Ok(WeierstrassModel { space, a, b })
    }

    pub fn over_base(a: &MultiPoly, b: &MultiPoly) -> Result<Self> {
        Self::new(RatForm::from_affine(a, a.degree())?, RatForm::from_affine(b, b.degree())?)
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn a(&self) -> &RatForm {
        &self.a
    }

    pub fn b(&self) -> &RatForm {
        &self.b
    }

    /// Numerator of `Δ = -16 (4a^3 + 27b^2)` over the denominator `ad^3 bd^2`.
    pub fn discriminant_numerator(&self) -> MultiPoly {
        let RatForm { num: an, den: ad } = &self.a;
        let RatForm { num: bn, den: bd } = &self.b;
        let t1 = (&an.pow(3) * &bd.pow(2)).scale(&Rational::from_integer(4.into()));
        let t2 = (&bn.pow(2) * &ad.pow(3)).scale(&Rational::from_integer(27.into()));
        (&t1 + &t2).scale(&Rational::from_integer((-16).into()))
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant_numerator().is_zero()
    }

    /// `ad bd (y^2 z - x^3) - an bd x z^2 - bn ad z^3`, zero iff the triple lies on the curve.
    pub fn equation(&self, x: &MultiPoly, y: &MultiPoly, z: &MultiPoly) -> MultiPoly {
        let RatForm { num: an, den: ad } = &self.a;
        let RatForm { num: bn, den: bd } = &self.b;
        let z2 = z * z;
        let lhs = &(&(y * y) * z) - &(&(x * x) * x);
        let lhs = &lhs * &(ad * bd);
        let ax = &(&(an * bd) * x) * &z2;
        let bz = &(&(bn * ad) * &z2) * z;
        &(&lhs - &ax) - &bz
    }

    /// Specializes the coefficients at a point of the ambient space.
    pub fn eval_coefficients(&self, t: &[Rational]) -> Option<(Rational, Rational)> {
        let ad = self.a.den.eval(t);
        let bd = self.b.den.eval(t);
        if num_traits::Zero::is_zero(&ad) || num_traits::Zero::is_zero(&bd) {
            return None;
        }
        Some((self.a.num.eval(t) / ad, self.b.num.eval(t) / bd))
    }
}

/// The curve `E'` with `A' = (S0/S1)^{4k} A`, `B' = (S0/S1)^{6k} B`.
#[derive(Clone, Debug)]
pub struct InfinityModel {
    k: u32,
    base: FunctionFieldCurve,
    model: WeierstrassModel,
}

impl InfinityModel {
    fn new(curve: &FunctionFieldCurve) -> Result<Self> {
        if curve.n < 1 {
            return Err(Error::Precondition("no S1 coordinate".into()));
        }
        let da = curve.a.degree();
        let db = curve.b.degree();
        let k = ceil_div(da, 4).max(ceil_div(db, 6));
        let space = curve.projective_space();
        let s0 = |e: u32| MultiPoly::var_pow(space, 0, e);
        let s1 = |e: u32| MultiPoly::var_pow(space, 1, e);
        let a = RatForm { num: &curve.a.homogenize(da)? * &s0(4 * k - da), den: s1(4 * k) };
        let b = RatForm { num: &curve.b.homogenize(db)? * &s0(6 * k - db), den: s1(6 * k) };
        let model = WeierstrassModel::new(a, b)?;
        Ok(InfinityModel { k, base: curve.clone(), model })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn base(&self) -> &FunctionFieldCurve {
        &self.base
    }

    pub fn model(&self) -> &WeierstrassModel {
        &self.model
    }

    /// Numerator form of `A'`; its denominator is `S1^{4k}`.
    pub fn a_numerator(&self) -> &MultiPoly {
        &self.model.a.num
    }

    pub fn b_numerator(&self) -> &MultiPoly {
        &self.model.b.num
    }

    /// Exponents of `S1` in the denominators of `A'` and `B'`.
    pub fn denominator_exponents(&self) -> (u32, u32) {
        (4 * self.k, 6 * self.k)
    }

    /// Exponents `(2k, 3k)` of `S0/S1` applied to `x` and `y`.
    pub fn transport_exponents(&self) -> (u32, u32) {
        (2 * self.k, 3 * self.k)
    }

    /// `P' = [S0^{2k} S1^k x : S0^{3k} y : S1^{3k} z]`, normalized.
    pub fn transport(&self, p: &crate::point::ProjPoint) -> Result<crate::point::ProjPoint> {
        let space = self.base.projective_space();
        let k = self.k;
        let s0 = |e: u32| MultiPoly::var_pow(space, 0, e);
        let s1 = |e: u32| MultiPoly::var_pow(space, 1, e);
        let x = &(&s0(2 * k) * &s1(k)) * p.x();
        let y = &s0(3 * k) * p.y();
        let z = &s1(3 * k) * p.z();
        crate::point::ProjPoint::normalize(x, y, z)
    }
}
