//! Reduction modulo hypersurfaces `Γ ⊂ P^n` with a rational parametrization
//! (hyperplanes, smooth plane conics), and the degree identities it satisfies.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::{rational::lcm_denominators, MultiPoly, Rational, VarSpace};
use crate::curve::{FunctionFieldCurve, RatForm, WeierstrassModel};
use crate::error::{Error, Result};
use crate::height::{weil_height, HeightEstimate, HeightOptions};
use crate::interval::Interval;
use crate::point::ProjPoint;

/// Default box searched for a rational point on a conic.
pub const CONIC_SEARCH_BOUND: i64 = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypersurfaceKind {
    Hyperplane,
    Conic,
}

/// `Γ = {F = 0}` with `θ : P^{m-1} -> Γ` given by forms in `U0..U(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalHypersurface {
    form: MultiPoly,
    theta: Vec<MultiPoly>,
    kind: HypersurfaceKind,
}

impl RationalHypersurface {
    /// Solves `F = 0` for the highest-index variable with a nonzero coefficient.
    pub fn hyperplane(form: &MultiPoly) -> Result<Self> {
        let VarSpace::Projective(n) = form.space() else {
            return Err(Error::SpaceMismatch("Q[S0..Sn]".into(), form.space().to_string()));
        };
        if form.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if form.degree() != 1 || !form.is_homogeneous() {
            return Err(Error::InvalidHypersurface(format!("{form} is not a linear form")));
        }
        let coeff = |i: usize| form.coeff(&crate::algebra::Monomial::var(n + 1, i, 1));
        let pivot = (0..=n).rev().find(|&i| !coeff(i).is_zero()).unwrap();
        let params = VarSpace::Param(n);
        let mut theta = vec![MultiPoly::zero(params); n + 1];
        let mut next = 0;
        for (i, slot) in theta.iter_mut().enumerate() {
            if i != pivot {
                *slot = MultiPoly::var(params, next);
                next += 1;
            }
        }
        let cp = coeff(pivot);
        let mut solved = MultiPoly::zero(params);
        for i in (0..=n).filter(|&i| i != pivot) {
            solved = &solved - &theta[i].scale(&(coeff(i) / &cp));
        }
        theta[pivot] = solved;
        let theta = primitive_tuple(theta);
        Self::checked(form.clone(), theta, HypersurfaceKind::Hyperplane)
    }

    /// Parametrizes a smooth conic in `P^2` by lines through a rational point.
    ///
    /// The point is searched for in a box of half-width [`CONIC_SEARCH_BOUND`]
    /// when not supplied.
    pub fn conic(form: &MultiPoly, point: Option<[BigInt; 3]>) -> Result<Self> {
        Self::conic_with_bound(form, point, CONIC_SEARCH_BOUND)
    }

    pub fn conic_with_bound(form: &MultiPoly, point: Option<[BigInt; 3]>, bound: i64) -> Result<Self> {
        if form.space() != VarSpace::Projective(2) {
            return Err(Error::SpaceMismatch("Q[S0..S2]".into(), form.space().to_string()));
        }
        if form.degree() != 2 || !form.is_homogeneous() {
            return Err(Error::InvalidHypersurface(format!("{form} is not a quadratic form")));
        }
        let m = symmetric_matrix(form);
        if det3(&m).is_zero() {
            return Err(Error::SingularConic);
        }
        let p: [Rational; 3] = match point {
            Some(p) => {
                let p = p.map(Rational::from_integer);
                if p.iter().all(Zero::is_zero) || !form.eval(&p).is_zero() {
                    return Err(Error::InvalidHypersurface("supplied point is not on the conic".into()));
                }
                p
            }
            None => find_point(form, bound).ok_or(Error::NoRationalPoint(bound))?,
        };
        let i = (0..3).find(|&i| !p[i].is_zero()).unwrap();
        let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
        let params = VarSpace::Param(2);
        // q = u e_a + v e_b
        let mut q = vec![MultiPoly::zero(params); 3];
        q[others[0]] = MultiPoly::var(params, 0);
        q[others[1]] = MultiPoly::var(params, 1);
        let fq = quadratic(&m, &q, &q);
        let pp: Vec<MultiPoly> = p.iter().map(|c| MultiPoly::constant(params, c.clone())).collect();
        let bpq = quadratic(&m, &pp, &q).scale(&Rational::from_integer(2.into()));
        let theta: Vec<MultiPoly> = (0..3).map(|j| &pp[j] * &fq - &bpq * &q[j]).collect();
        let theta = primitive_tuple(theta);
        Self::checked(form.clone(), theta, HypersurfaceKind::Conic)
    }

    fn checked(form: MultiPoly, theta: Vec<MultiPoly>, kind: HypersurfaceKind) -> Result<Self> {
        if !form.substitute(&theta)?.is_zero() {
            return Err(Error::Internal("parametrization does not lie on the hypersurface".into()));
        }
        Ok(RationalHypersurface { form, theta, kind })
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn theta(&self) -> &[MultiPoly] {
        &self.theta
    }

    pub fn kind(&self) -> HypersurfaceKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn param_space(&self) -> VarSpace {
        self.theta[0].space()
    }

    pub fn is_infinity(&self) -> bool {
        self.theta[0].is_zero()
    }
}

/// Scales a tuple of forms to coprime integer coefficients, first nonzero leading coefficient positive.
fn primitive_tuple(theta: Vec<MultiPoly>) -> Vec<MultiPoly> {
    let den = lcm_denominators(theta.iter().flat_map(|t| t.terms().map(|(_, c)| c)));
    let num = theta
        .iter()
        .flat_map(|t| t.terms().map(|(_, c)| c))
        .fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&den / c.denom()))));
    let negative = theta.iter().find(|t| !t.is_zero()).is_some_and(|t| t.leading_coeff().is_negative());
    let mut s = Rational::new(den, num);
    if negative {
        s = -s;
    }
    theta.iter().map(|t| t.scale(&s)).collect()
}

fn symmetric_matrix(form: &MultiPoly) -> [[Rational; 3]; 3] {
    let mut m: [[Rational; 3]; 3] = Default::default();
    for (mono, c) in form.terms() {
        let e = mono.exps();
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            let half = c / Rational::from_integer(2.into());
            m[i][j] = half.clone();
            m[j][i] = half;
        }
    }
    m
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// `aᵀ M b` for vectors of forms.
fn quadratic(m: &[[Rational; 3]; 3], a: &[MultiPoly], b: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero(a[0].space());
    for i in 0..3 {
        for j in 0..3 {
            if !m[i][j].is_zero() {
                acc = &acc + &(&a[i] * &b[j]).scale(&m[i][j]);
            }
        }
    }
    acc
}

fn find_point(form: &MultiPoly, bound: i64) -> Option<[Rational; 3]> {
    // Increasing max-norm shells so the smallest point is found first.
    for h in 1..=bound {
        for a in 0..=h {
            for b in -h..=h {
                for c in -h..=h {
                    if a.abs().max(b.abs()).max(c.abs()) != h {
                        continue;
                    }
                    if a == 0 && (b < 0 || (b == 0 && c <= 0)) {
                        continue;
                    }
                    if a.gcd(&b).gcd(&c) != 1 {
                        continue;
                    }
                    let p = [a, b, c].map(|v| Rational::from_integer(v.into()));
                    if form.eval(&p).is_zero() {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

/// `E_Γ : y^2 z = x^3 + A(θ) x z^2 + B(θ) z^3` over the parameter field.
#[derive(Clone, Debug)]
pub struct ReducedCurve {
    gamma: RationalHypersurface,
    model: WeierstrassModel,
}

impl ReducedCurve {
    pub fn gamma(&self) -> &RationalHypersurface {
        &self.gamma
    }

    pub fn model(&self) -> &WeierstrassModel {
        &self.model
    }
}

pub fn reduce_curve(curve: &FunctionFieldCurve, gamma: &RationalHypersurface) -> Result<ReducedCurve> {
    if gamma.theta.len() != curve.n() + 1 {
        return Err(Error::ArityMismatch { expected: curve.n() + 1, got: gamma.theta.len() });
    }
    if gamma.is_infinity() {
        return Err(Error::PoleAtGamma);
    }
    let a = reduce_coefficient(&curve.model().a().num, &curve.model().a().den, &gamma.theta)?;
    let b = reduce_coefficient(&curve.model().b().num, &curve.model().b().den, &gamma.theta)?;
    let model = WeierstrassModel::new(a, b)?;
    if model.is_singular() {
        return Err(Error::SingularReduction);
    }
    Ok(ReducedCurve { gamma: gamma.clone(), model })
}

fn reduce_coefficient(num: &MultiPoly, den: &MultiPoly, theta: &[MultiPoly]) -> Result<RatForm> {
    RatForm { num: num.clone(), den: den.clone() }.substitute(theta)
}

/// `P_Γ`: coordinates pulled back along `θ` and renormalized.
pub fn reduce_point(p: &ProjPoint, gamma: &RationalHypersurface) -> Result<ProjPoint> {
    match p.substitute(&gamma.theta)? {
        Some(q) => Ok(q),
        None => Err(Error::Internal(format!("all coordinates of {p} vanish on {}; they are not coprime", gamma.form))),
    }
}

pub fn gamma_weil_height(p: &ProjPoint) -> u32 {
    weil_height(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LehRecord {
    /// Height of `P_Γ` over the parameter field.
    pub lhs: u32,
    /// `deg Γ * h(P)`.
    pub rhs: u32,
    pub defect: i64,
}

pub fn leh_defect(curve: &FunctionFieldCurve, p: &ProjPoint, gamma: &RationalHypersurface) -> Result<LehRecord> {
    reduce_curve(curve, gamma)?;
    leh_defect_unchecked(p, gamma)
}

fn leh_defect_unchecked(p: &ProjPoint, gamma: &RationalHypersurface) -> Result<LehRecord> {
    let lhs = gamma_weil_height(&reduce_point(p, gamma)?);
    let rhs = gamma.degree() * weil_height(p);
    Ok(LehRecord { lhs, rhs, defect: rhs as i64 - lhs as i64 })
}

#[derive(Clone, Debug)]
pub struct TheoremAReport {
    /// `leh_defect` for `[2^m]P`, `m = 0..=max_level` (shorter if the orbit reaches `O`).
    pub levels: Vec<LehRecord>,
    pub base: HeightEstimate,
    pub gamma: HeightEstimate,
    /// `ĥ_Γ(P_Γ) / deg Γ`.
    pub gamma_scaled: Interval,
    pub overlap: bool,
}

impl TheoremAReport {
    pub fn all_defects_zero(&self) -> bool {
        self.levels.iter().all(|r| r.defect == 0)
    }

    pub fn combined_radius(&self) -> Rational {
        &self.base.error_bound + &self.gamma_scaled.radius
    }

    pub fn verdict(&self) -> String {
        match self.levels.iter().position(|r| r.defect != 0) {
            None => "no obstruction observed".into(),
            Some(m) => format!("defect {} at m={m}", self.levels[m].defect),
        }
    }
}

/// Finite-level degree identities for `[2^m]P` and the comparison of
/// canonical heights on both sides, each computed to `max_level`.
pub fn theorem_a_report(
    curve: &FunctionFieldCurve,
    p: &ProjPoint,
    gamma: &RationalHypersurface,
    max_level: u32,
    degree_ceiling: u32,
) -> Result<TheoremAReport> {
    let reduced = reduce_curve(curve, gamma)?;
    let model = curve.model();
    let orbit = model.doubling_orbit(p, max_level)?;
    let mut levels = Vec::with_capacity(orbit.len());
    for q in &orbit {
        if weil_height(q) > degree_ceiling {
            return Err(Error::DegreeExplosion {
                level: levels.len() as u32,
                degree: weil_height(q),
                ceiling: degree_ceiling,
            });
        }
        levels.push(leh_defect_unchecked(q, gamma)?);
    }
    let mut opts = HeightOptions::fixed_level(max_level);
    opts.degree_ceiling = degree_ceiling;
    let base = model.canonical_height_from(orbit, &opts)?;
    let pg = reduce_point(p, gamma)?;
    let gamma_est = reduced.model().canonical_height(&pg, &opts)?;
    let deg = Rational::from_integer(BigInt::from(gamma.degree()));
    let gamma_scaled = gamma_est.interval().scale(&deg.recip());
    let overlap = base.interval().overlaps(&gamma_scaled);
    Ok(TheoremAReport { levels, base, gamma: gamma_est, gamma_scaled, overlap })
}
