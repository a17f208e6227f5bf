//! Squarefree decomposition by Yun's algorithm in the main variable, recursing
//! on the content.

use std::collections::BTreeMap;

use super::gcd::{content_in, poly_gcd};
use super::poly::{MultiPoly, VarSpace};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Pairwise coprime, squarefree, primitive factors with positive leading
    /// coefficient, ordered by decreasing multiplicity.
    pub factors: Vec<(MultiPoly, u32)>,
    pub unit: Rational,
    pub space: VarSpace,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.space, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Product of the factors whose multiplicity is at least `m`.
    pub fn radical_at_least(&self, m: u32) -> Option<MultiPoly> {
        self.factors.iter().filter(|(_, k)| *k >= m).map(|(f, _)| f.clone()).reduce(|a, b| &a * &b)
    }

    /// Multiplicity with which `p` (squarefree, primitive) divides the input.
    pub fn multiplicity_of(&self, p: &MultiPoly) -> u32 {
        self.factors.iter().filter(|(f, _)| !poly_gcd(f, p).is_constant()).map(|(_, k)| *k).max().unwrap_or(0)
    }
}

pub fn squarefree_decompose(f: &MultiPoly) -> Result<SquarefreeDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut by_mult: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    collect(&f.primitive(), &mut by_mult);
    let mut factors: Vec<(MultiPoly, u32)> = by_mult.into_iter().rev().map(|(m, p)| (p.primitive(), m)).collect();
    factors.retain(|(p, _)| !p.is_constant());
    let mut product = MultiPoly::one(f.space());
    for (p, m) in &factors {
        product = &product * &p.pow(*m);
    }
    let unit = f.div_exact(&product).and_then(|q| q.constant_value()).expect("squarefree factors reproduce the input");
    Ok(SquarefreeDecomposition { factors, unit, space: f.space() })
}

fn collect(f: &MultiPoly, out: &mut BTreeMap<u32, MultiPoly>) {
    if f.is_constant() {
        return;
    }
    let used = f.used_vars();
    let v = (0..f.nvars()).rev().find(|&i| used[i]).expect("non-constant");
    let c = content_in(f, v);
    let pp = f.div_exact(&c).expect("content divides");
    yun(&pp, v, out);
    collect(&c, out);
}

fn yun(f: &MultiPoly, v: usize, out: &mut BTreeMap<u32, MultiPoly>) {
    let df = f.derivative(v);
    let g = poly_gcd(f, &df);
    let mut c = f.div_exact(&g).expect("gcd divides");
    let mut d = &df.div_exact(&g).expect("gcd divides derivative") - &c.derivative(v);
    let mut i = 1;
    while c.degree_in(v) > 0 {
        let a = poly_gcd(&c, &d);
        c = c.div_exact(&a).expect("gcd divides");
        d = &d.div_exact(&a).expect("gcd divides") - &c.derivative(v);
        if !a.is_constant() {
            merge(out, i, a);
        }
        i += 1;
    }
}

fn merge(out: &mut BTreeMap<u32, MultiPoly>, m: u32, p: MultiPoly) {
    match out.remove(&m) {
        Some(q) => out.insert(m, &q * &p),
        None => out.insert(m, p),
    };
}
