//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose derived ordering is
//! graded lexicographic: total degree first, then the exponent vector compared
//! lexicographically with the first variable most significant. The leading
//! term is therefore the last map entry.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_denominators, Rational};
use crate::error::{Error, Result};

/// Which ring a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarSpace {
    /// `T1..Tn`, affine coordinates of the base.
    Affine(usize),
    /// `S0..Sn`, homogeneous coordinates with `Ti = Si/S0`.
    Projective(usize),
    /// `U0..U(m-1)`, homogeneous parameters of a hypersurface parametrization.
    Param(usize),
    /// `U1..U(m-1)`, the chart `U0 = 1` of `Param(m)`.
    ParamAffine(usize),
}

impl VarSpace {
    pub fn nvars(self) -> usize {
        match self {
            VarSpace::Affine(n) => n,
            VarSpace::Projective(n) => n + 1,
            VarSpace::Param(m) => m,
            VarSpace::ParamAffine(m) => m.saturating_sub(1),
        }
    }

    pub fn var_name(self, i: usize) -> String {
        match self {
            VarSpace::Affine(_) => format!("T{}", i + 1),
            VarSpace::Projective(_) => format!("S{i}"),
            VarSpace::Param(_) => format!("U{i}"),
            VarSpace::ParamAffine(_) => format!("U{}", i + 1),
        }
    }

    pub fn is_homogeneous(self) -> bool {
        matches!(self, VarSpace::Projective(_) | VarSpace::Param(_))
    }

    pub fn affine_chart(self) -> Option<VarSpace> {
        match self {
            VarSpace::Projective(n) => Some(VarSpace::Affine(n)),
            VarSpace::Param(m) => Some(VarSpace::ParamAffine(m)),
            _ => None,
        }
    }

    pub fn projective_closure(self) -> Option<VarSpace> {
        match self {
            VarSpace::Affine(n) => Some(VarSpace::Projective(n)),
            VarSpace::ParamAffine(m) => Some(VarSpace::Param(m)),
            _ => None,
        }
    }

    /// Index of the variable written `prefix` `number`, if it belongs to this space.
    pub fn resolve(self, prefix: char, number: usize) -> Option<usize> {
        let (p, first) = match self {
            VarSpace::Affine(_) => ('T', 1),
            VarSpace::Projective(_) => ('S', 0),
            VarSpace::Param(_) => ('U', 0),
            VarSpace::ParamAffine(_) => ('U', 1),
        };
        if prefix != p || number < first {
            return None;
        }
        let idx = number - first;
        (idx < self.nvars()).then_some(idx)
    }
}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarSpace::Affine(n) => write!(f, "Q[T1..T{n}]"),
            VarSpace::Projective(n) => write!(f, "Q[S0..S{n}]"),
            VarSpace::Param(m) => write!(f, "Q[U0..U{}]", m - 1),
            VarSpace::ParamAffine(m) => write!(f, "Q[U1..U{}]", m - 1),
        }
    }
}

/// Exponent vector with its cached total degree; the derived `Ord` is graded lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { degree, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = power;
        Monomial { degree: power, exps }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps }
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { degree: self.degree - other.degree, exps })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    space: VarSpace,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(space: VarSpace) -> Self {
        MultiPoly { space, terms: BTreeMap::new() }
    }

    pub fn one(space: VarSpace) -> Self {
        Self::constant(space, Rational::one())
    }

    pub fn constant(space: VarSpace, c: Rational) -> Self {
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(space.nvars()), c);
        }
        p
    }

    pub fn from_int(space: VarSpace, c: i64) -> Self {
        Self::constant(space, Rational::from_integer(BigInt::from(c)))
    }

    /// The variable with index `i` (0-based within `space`).
    pub fn var(space: VarSpace, i: usize) -> Self {
        Self::monomial(space, Monomial::var(space.nvars(), i, 1), Rational::one())
    }

    pub fn var_pow(space: VarSpace, i: usize, power: u32) -> Self {
        Self::monomial(space, Monomial::var(space.nvars(), i, power), Rational::one())
    }

    pub fn monomial(space: VarSpace, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.exps.len(), space.nvars());
        let mut p = Self::zero(space);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(space: VarSpace, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = Self::zero(space);
        for (e, c) in terms {
            assert_eq!(e.len(), space.nvars(), "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn nvars(&self) -> usize {
        self.space.nvars()
    }

    /// Reinterprets the exponent vectors in another space with the same number of variables.
    pub fn with_space(mut self, space: VarSpace) -> Self {
        assert_eq!(space.nvars(), self.space.nvars());
        self.space = space;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree == 0)
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// Value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[var]).max().unwrap_or(0)
    }

    /// Largest power of `var` dividing every term (0 for the zero polynomial).
    pub fn order_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exps[var]).min().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading_term().map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Variables that actually occur.
    pub fn used_vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.nvars()];
        for m in self.terms.keys() {
            for (u, e) in used.iter_mut().zip(&m.exps) {
                *u |= *e > 0;
            }
        }
        used
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.space);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        MultiPoly { space: self.space, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect();
        MultiPoly { space: self.space, terms }
    }

    /// Multiplies by `var^power`.
    pub fn shift(&self, var: usize, power: u32) -> Self {
        if power == 0 {
            return self.clone();
        }
        self.mul_monomial(&Monomial::var(self.nvars(), var, power))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.space);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.space);
        for (m, c) in &self.terms {
            let e = m.exps[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[var] -= 1;
            out.terms.insert(Monomial::new(exps), c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars());
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; point.len()];
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &point[i];
                    pw.push(next);
                }
                t *= &pw[e as usize];
            }
            acc += t;
        }
        acc
    }

    /// Ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars() {
            return Err(Error::ArityMismatch { expected: self.nvars(), got: images.len() });
        }
        let Some(first) = images.first() else {
            return Err(Error::ArityMismatch { expected: 1, got: 0 });
        };
        let target = first.space;
        if let Some(bad) = images.iter().find(|p| p.space != target) {
            return Err(Error::SpaceMismatch(target.to_string(), bad.space.to_string()));
        }
        let terms: Vec<(&[u32], &Rational)> = self.terms.iter().map(|(m, c)| (m.exps.as_slice(), c)).collect();
        let mut powers: Vec<Vec<MultiPoly>> = images.iter().map(|p| vec![MultiPoly::one(target), p.clone()]).collect();
        Ok(horner(&terms, self.nvars(), images, &mut powers, target))
    }

    /// Homogenizes an affine polynomial to a form of degree `target`.
    pub fn homogenize(&self, target: u32) -> Result<MultiPoly> {
        let space = self
            .space
            .projective_closure()
            .ok_or_else(|| Error::SpaceMismatch("an affine space".into(), self.space.to_string()))?;
        let d = self.degree();
        if !self.is_zero() && target < d {
            return Err(Error::DegreeTooLow { target, degree: d });
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = Vec::with_capacity(m.exps.len() + 1);
                exps.push(target - m.degree);
                exps.extend_from_slice(&m.exps);
                (Monomial { degree: target, exps }, c.clone())
            })
            .collect();
        Ok(MultiPoly { space, terms })
    }

    /// Sets the first homogeneous variable to one.
    pub fn dehomogenize(&self) -> Result<MultiPoly> {
        let space = self
            .space
            .affine_chart()
            .ok_or_else(|| Error::SpaceMismatch("a homogeneous space".into(), self.space.to_string()))?;
        let mut out = MultiPoly::zero(space);
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.exps[1..].to_vec()), c.clone());
        }
        Ok(out)
    }

    /// `c` such that `self / c` has coprime integer coefficients and a positive leading coefficient.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let den = lcm_denominators(self.terms.values());
        let num = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&den / c.denom()))));
        let c = Rational::new(num, den);
        if self.leading_coeff().is_negative() {
            -c
        } else {
            c
        }
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn primitive(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        if c.is_one() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(self.space); self.degree_in(var) as usize + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m.exps[var];
            let mut exps = m.exps.clone();
            exps[var] = 0;
            let mono = Monomial { degree: m.degree - k, exps };
            out[k as usize].terms.insert(mono, c.clone());
        }
        out
    }

    pub fn from_coefficients_in(space: VarSpace, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(space);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, v) in &c.terms {
                let mut exps = m.exps.clone();
                exps[var] += k as u32;
                out.add_term(Monomial::new(exps), v.clone());
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.space, divisor.space, "div_exact across spaces");
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        // Gauss: a primitive integer divisor divides an integer dividend over Z iff over Q.
        let cf = self.content();
        let cg = divisor.content();
        let f = IntPoly::from_primitive(&self.scale(&cf.recip()));
        let g = IntPoly::from_primitive(&divisor.scale(&cg.recip()));
        let q = f.div_exact(&g)?;
        Some(q.to_poly(self.space).scale(&(cf / cg)))
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.div_exact(self).is_some()
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.space, other.space, "multiplying across spaces");
        let space = self.space;
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(space);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms.iter().next().unwrap();
            return self.mul_monomial(m).scale(c);
        }
        let (da, a) = integer_image(self);
        let (db, b) = integer_image(other);
        let den = da * db;
        let nv = space.nvars();
        let fits = nv <= 8 && (0..nv).all(|i| self.degree_in(i) as u64 + other.degree_in(i) as u64 <= 0xffff);
        let mut out = MultiPoly::zero(space);
        let finish = |c: BigInt| -> Rational {
            if den.is_one() {
                Rational::from_integer(c)
            } else {
                Rational::new(c, den.clone())
            }
        };
        if fits {
            let pack = |m: &Monomial| -> u128 {
                m.exps.iter().enumerate().fold(0u128, |k, (i, &e)| k | ((e as u128) << (16 * i)))
            };
            let pb: Vec<(u128, &BigInt)> = b.iter().map(|(m, c)| (pack(m), c)).collect();
            let mut acc: HashMap<u128, BigInt> = HashMap::with_capacity(a.len() * 2);
            for (ma, ca) in &a {
                let ka = pack(ma);
                for (kb, cb) in &pb {
                    let prod = ca * *cb;
                    match acc.entry(ka + kb) {
                        std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += prod,
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(prod);
                        }
                    }
                }
            }
            for (k, c) in acc {
                if c.is_zero() {
                    continue;
                }
                let exps = (0..nv).map(|i| ((k >> (16 * i)) & 0xffff) as u32).collect();
                out.terms.insert(Monomial::new(exps), finish(c));
            }
        } else {
            let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
            for (ma, ca) in &a {
                for (mb, cb) in &b {
                    *acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
            for (m, c) in acc {
                if !c.is_zero() {
                    out.terms.insert(m, finish(c));
                }
            }
        }
        out
    }

    fn add_impl(&self, other: &MultiPoly, negate: bool) -> MultiPoly {
        assert_eq!(self.space, other.space, "adding across spaces");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), if negate { -c } else { c.clone() });
        }
        out
    }
}

/// Common denominator and integer numerators.
fn integer_image(p: &MultiPoly) -> (BigInt, Vec<(&Monomial, BigInt)>) {
    let den = lcm_denominators(p.terms.values());
    let terms = p
        .terms
        .iter()
        .map(|(m, c)| {
            let n = if den.is_one() { c.numer().clone() } else { c.numer() * (&den / c.denom()) };
            (m, n)
        })
        .collect();
    (den, terms)
}

fn horner(
    terms: &[(&[u32], &Rational)],
    remaining: usize,
    images: &[MultiPoly],
    powers: &mut [Vec<MultiPoly>],
    target: crate::algebra::VarSpace,
) -> MultiPoly {
    if terms.is_empty() {
        return MultiPoly::zero(target);
    }
    if remaining == 0 {
        let c: Rational = terms.iter().map(|(_, c)| (*c).clone()).sum();
        return MultiPoly::constant(target, c);
    }
    let var = remaining - 1;
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Rational)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(*t);
    }
    let mut acc = MultiPoly::zero(target);
    let mut prev: Option<u32> = None;
    for (&e, group) in groups.iter().rev() {
        if let Some(pe) = prev {
            acc = &acc * &power_of(powers, images, var, pe - e);
        }
        acc += &horner(group, var, images, powers, target);
        prev = Some(e);
    }
    if let Some(pe) = prev {
        if pe > 0 {
            acc = &acc * &power_of(powers, images, var, pe);
        }
    }
    acc
}

fn power_of(powers: &mut [Vec<MultiPoly>], images: &[MultiPoly], var: usize, e: u32) -> MultiPoly {
    let pw = &mut powers[var];
    while pw.len() <= e as usize {
        let next = pw.last().unwrap() * &images[var];
        pw.push(next);
    }
    pw[e as usize].clone()
}

/// Integer-coefficient polynomial used for exact division.
struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    fn from_primitive(p: &MultiPoly) -> IntPoly {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(c.denom().is_one());
                (m.clone(), c.numer().clone())
            })
            .collect();
        IntPoly { terms }
    }

    fn div_exact(&self, g: &IntPoly) -> Option<IntPoly> {
        let (lm, lc) = g.terms.iter().next_back()?;
        let mut rem = self.terms.clone();
        let mut q = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.div(lm)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (gm, gc) in &g.terms {
                let key = gm.mul(&qm);
                let delta = gc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            q.insert(qm, qc);
        }
        Some(IntPoly { terms: q })
    }

    fn to_poly(&self, space: VarSpace) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))).collect();
        MultiPoly { space, terms }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        assert_eq!(self.space, rhs.space, "adding across spaces");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        MultiPoly { space: self.space, terms }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::format_poly(self))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", super::parse::format_poly(self), self.space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;
    use crate::algebra::rational::rat;

    const T2: VarSpace = VarSpace::Affine(2);
    const S2: VarSpace = VarSpace::Projective(2);

    fn p(s: &str, space: VarSpace) -> MultiPoly {
        parse_poly(s, space).unwrap()
    }

    #[test]
    fn graded_lex_leading_term() {
        let f = p("T1^2 + T1*T2^2 + T2^3", T2);
        let (m, _) = f.leading_term().unwrap();
        assert_eq!(m.exps(), &[1, 2]);
    }

    #[test]
    fn substitution_examples() {
        let u = VarSpace::Param(2);
        let f = p("S2*S0", S2);
        let th = [p("U0", u), p("U1", u), p("U0 + U1", u)];
        assert_eq!(f.substitute(&th).unwrap(), p("U0^2 + U0*U1", u));
        let g = p("T1", T2);
        let consts = [MultiPoly::from_int(u, 2), MultiPoly::from_int(u, 3)];
        assert_eq!(g.substitute(&consts).unwrap(), MultiPoly::from_int(u, 2));
        let conic = p("S0*S2 - S1^2", S2);
        let th = [p("U0^2", u), p("U0*U1", u), p("U1^2", u)];
        assert!(conic.substitute(&th).unwrap().is_zero());
        assert!(matches!(conic.substitute(&th[..2]), Err(Error::ArityMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn homogenize_examples() {
        assert_eq!(p("T2", T2).homogenize(2).unwrap(), p("S2*S0", S2));
        assert_eq!(p("1", T2).homogenize(0).unwrap(), p("1", S2));
        let f = p("T2^4 - T2^3 - T1*T2", T2);
        let h = f.homogenize(4).unwrap();
        assert_eq!(h, p("S2^4 - S2^3*S0 - S1*S2*S0^2", S2));
        assert_eq!(h.dehomogenize().unwrap(), f);
        assert!(matches!(f.homogenize(3), Err(Error::DegreeTooLow { .. })));
    }

    #[test]
    fn exact_division() {
        let f = p("T1^2 - T2^2", T2);
        let g = p("T1 + T2", T2);
        assert_eq!(f.div_exact(&g).unwrap(), p("T1 - T2", T2));
        assert!(f.div_exact(&p("T1 + 1", T2)).is_none());
        let h = p("1/2*T1^2 - 1/2", T2);
        assert_eq!(h.div_exact(&p("3*T1 - 3", T2)).unwrap(), p("1/6*T1 + 1/6", T2));
    }

    #[test]
    fn content_and_primitive() {
        let f = p("-4/3*T1 + 2/9", T2);
        assert_eq!(f.primitive(), p("6*T1 - 1", T2));
        assert_eq!(f.content(), Rational::new((-2).into(), 9.into()));
    }

    #[test]
    fn pow_and_eval() {
        let f = p("T1 + T2", T2).pow(3);
        assert_eq!(f.eval(&[rat(1), rat(2)]), rat(27));
        assert_eq!(f.degree(), 3);
        assert!(f.is_homogeneous());
    }
}
