//! Multivariate polynomial GCD.
//!
//! Small inputs go through the subresultant pseudo-remainder sequence in the
//! highest-index variable, with contents handled recursively. Above
//! [`SUBRESULTANT_MAX_DEGREE`] the coefficient swell of the PRS dominates, so
//! the dense modular algorithm in [`super::modular`] takes over. Both paths
//! return the same normalized result and are cross-checked in tests.

use super::modular::gcd_modular;
use super::poly::{MultiPoly, VarSpace};

pub const SUBRESULTANT_MAX_DEGREE: u32 = 8;

/// Primitive GCD with positive graded-lex leading coefficient; `gcd(0, 0) = 0`.
pub fn poly_gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.space(), g.space(), "gcd across spaces");
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.space());
    }
    if f.space().is_homogeneous() && f.is_homogeneous() && g.is_homogeneous() {
        return gcd_forms(f, g);
    }
    gcd_affine(f, g)
}

/// GCD of a list, folding left and stopping early at 1.
pub fn poly_gcd_many<'a>(space: VarSpace, polys: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut acc = MultiPoly::zero(space);
    for p in polys {
        acc = poly_gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// Forms: peel off the power of the first variable, take the GCD in the affine
/// chart, and homogenize back.
fn gcd_forms(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    let shared = f.order_in(0).min(g.order_in(0));
    let fd = f.dehomogenize().expect("homogeneous space");
    let gd = g.dehomogenize().expect("homogeneous space");
    let h = if fd.is_constant() || gd.is_constant() { MultiPoly::one(fd.space()) } else { gcd_affine(&fd, &gd) };
    let d = h.degree();
    h.homogenize(d).expect("affine chart").shift(0, shared).primitive()
}

fn gcd_affine(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.degree().max(g.degree()) <= SUBRESULTANT_MAX_DEGREE {
        gcd_subresultant(f, g)
    } else {
        gcd_modular(f, g)
    }
}

/// Recursive content/primitive-part GCD driven by subresultant PRS.
pub fn gcd_subresultant(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(f.space());
    }
    let v = main_var(f, g);
    if f.degree_in(v) == 0 {
        return gcd_subresultant(f, &content_in(g, v));
    }
    if g.degree_in(v) == 0 {
        return gcd_subresultant(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_subresultant(&cf, &cg);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let h = subresultant_prs(pf, pg, v);
    (&c * &h).primitive()
}

/// Highest-index variable with positive degree in either input.
fn main_var(f: &MultiPoly, g: &MultiPoly) -> usize {
    let uf = f.used_vars();
    let ug = g.used_vars();
    (0..f.nvars()).rev().find(|&i| uf[i] || ug[i]).expect("non-constant input")
}

/// GCD of the coefficients of `f` viewed in `var`.
pub fn content_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(f.space());
    for c in f.coefficients_in(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_subresultant(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn primitive_part_in(f: &MultiPoly, var: usize) -> MultiPoly {
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides").primitive()
}

fn leading_coeff_in(f: &MultiPoly, var: usize) -> MultiPoly {
    f.coefficients_in(var).pop().unwrap_or_else(|| MultiPoly::zero(f.space()))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` in `var`.
fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let mut r = a.coefficients_in(var);
    let bc = b.coefficients_in(var);
    let db = bc.len() - 1;
    let lb = &bc[db];
    let da = r.len() - 1;
    for k in (db..=da).rev() {
        let lead = r[k].clone();
        for c in r.iter_mut().take(k) {
            *c = &*c * lb;
        }
        for (j, bj) in bc.iter().enumerate().take(db) {
            let idx = j + k - db;
            r[idx] = &r[idx] - &(&lead * bj);
        }
        r.truncate(k);
    }
    MultiPoly::from_coefficients_in(a.space(), var, &r)
}

fn subresultant_prs(a: MultiPoly, b: MultiPoly, var: usize) -> MultiPoly {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    let space = a.space();
    let mut g = MultiPoly::one(space);
    let mut h = MultiPoly::one(space);
    loop {
        let delta = a.degree_in(var) - b.degree_in(var);
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            break;
        }
        if r.degree_in(var) == 0 {
            return MultiPoly::one(space);
        }
        let divisor = &g * &h.pow(delta);
        let next = r.div_exact(&divisor).expect("subresultant quotient is exact");
        a = b;
        b = next;
        g = leading_coeff_in(&a, var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta).div_exact(&h.pow(delta - 1)).expect("subresultant scaling is exact"),
        };
    }
    primitive_part_in(&b, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str, space: VarSpace) -> MultiPoly {
        parse_poly(s, space).unwrap()
    }

    #[test]
    fn documented_examples() {
        let s = VarSpace::Projective(2);
        assert_eq!(poly_gcd(&p("S2*S0", s), &p("S2^2", s)), p("S2", s));
        let u = VarSpace::Param(2);
        assert_eq!(poly_gcd(&p("U0^2*(U0 + U1)", u), &p("U0^3", u)), p("U0^2", u));
        let all = [p("S2*S0", s), p("S2^2", s), p("S0^2", s)];
        assert!(poly_gcd_many(s, &all).is_one());
    }

    #[test]
    fn zero_conventions() {
        let t = VarSpace::Affine(2);
        assert!(poly_gcd(&MultiPoly::zero(t), &MultiPoly::zero(t)).is_zero());
        assert_eq!(poly_gcd(&MultiPoly::zero(t), &p("-2*T1 + 4", t)), p("T1 - 2", t));
    }

    #[test]
    fn no_form_of_degree_two_divides_the_triple() {
        // Exhaustive oracle: every monic-leading form of degree 1 or 2 with
        // coefficients in {-1, 0, 1} fails to divide one of the three inputs.
        let s = VarSpace::Projective(2);
        let all = [p("S2*S0", s), p("S2^2", s), p("S0^2", s)];
        let monos: Vec<Vec<u32>> = (1..=2u32)
            .flat_map(|d| {
                let mut v = Vec::new();
                for a in 0..=d {
                    for b in 0..=(d - a) {
                        v.push(vec![a, b, d - a - b]);
                    }
                }
                v
            })
            .collect();
        for d in 1..=2u32 {
            let ms: Vec<&Vec<u32>> = monos.iter().filter(|m| m.iter().sum::<u32>() == d).collect();
            let count = 3usize.pow(ms.len() as u32);
            for code in 0..count {
                let mut c = code;
                let terms = ms.iter().map(|m| {
                    let coeff = (c % 3) as i64 - 1;
                    c /= 3;
                    ((*m).clone(), crate::algebra::rational::rat(coeff))
                });
                let cand = MultiPoly::from_terms(s, terms);
                if cand.is_zero() {
                    continue;
                }
                assert!(!all.iter().all(|f| cand.divides(f)), "{cand} divides all");
            }
        }
    }

    #[test]
    fn subresultant_and_modular_agree() {
        let t = VarSpace::Affine(3);
        let h = p("T1*T2 - T3^2 + 3", t);
        let f = &h * &p("T1^2 + T2 - 7*T3", t);
        let g = &h * &p("T2^3 - T1*T3 + 1", t);
        assert_eq!(gcd_subresultant(&f, &g), h);
        assert_eq!(gcd_modular(&f, &g), h);
    }
}
