//! Dense modular GCD (Brown's algorithm) over Z, lifted by CRT.
//!
//! Inputs are made primitive in Z[x]; images modulo 62-bit primes are computed
//! by recursive evaluation/interpolation down to univariate Euclid, scaled so
//! that their lex-leading coefficient is the gcd of the inputs' lex-leading
//! coefficients, and combined until the CRT image stabilizes and divides both
//! inputs exactly. Unlucky primes and evaluation points are detected by
//! comparing lex-leading monomials.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::MultiPoly;
use super::rational::Rational;

type Exps = Vec<u32>;
type PPoly = HashMap<Exps, u64>;
type Uni = Vec<u64>;

pub fn gcd_modular(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    assert_eq!(f.space(), g.space());
    let space = f.space();
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    if f.is_constant() || g.is_constant() {
        return MultiPoly::one(space);
    }
    let uf = f.used_vars();
    let ug = g.used_vars();
    let mut vars: Vec<usize> = (0..f.nvars()).filter(|&i| uf[i] || ug[i]).collect();
    // Highest-degree variable becomes the univariate base of the recursion.
    vars.sort_by_key(|&i| std::cmp::Reverse(f.degree_in(i).max(g.degree_in(i))));
    let compact = |p: &MultiPoly| -> Vec<(Exps, BigInt)> {
        let prim = p.primitive();
        prim.terms().map(|(m, c)| (vars.iter().map(|&i| m.exps()[i]).collect(), c.numer().clone())).collect()
    };
    let fz = compact(f);
    let gz = compact(g);
    let k = vars.len();
    let lcf = lex_lead(&fz);
    let lcg = lex_lead(&gz);
    let gamma = lcf.gcd(&lcg);
    let expand = |terms: &BTreeMap<Exps, BigInt>| -> MultiPoly {
        MultiPoly::from_terms(
            space,
            terms.iter().map(|(e, c)| {
                let mut full = vec![0u32; space.nvars()];
                for (j, &i) in vars.iter().enumerate() {
                    full[i] = e[j];
                }
                (full, Rational::from_integer(c.clone()))
            }),
        )
        .primitive()
    };

    let mut acc: Option<(Exps, BTreeMap<Exps, BigInt>, BigInt)> = None;
    let mut previous: Option<BTreeMap<Exps, BigInt>> = None;
    for p in PrimeStream::new() {
        let pb = BigInt::from(p);
        if (&lcf % &pb).is_zero() || (&lcg % &pb).is_zero() {
            continue;
        }
        let fp = reduce(&fz, p);
        let gp = reduce(&gz, p);
        let image = gcd_mod_p(&fp, &gp, k, p);
        if is_constant(&image) {
            return MultiPoly::one(space);
        }
        let gm = mod_big(&gamma, p);
        let image: PPoly = image.into_iter().map(|(e, c)| (e, mulmod(c, gm, p))).collect();
        let lm = lex_max(&image).clone();
        let (acc_lm, coeffs, modulus) = match acc.take() {
            None => {
                let coeffs = image.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect();
                acc = Some((lm, coeffs, pb));
                previous = None;
                continue;
            }
            Some(state) => state,
        };
        if lm < acc_lm {
            let coeffs = image.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect();
            acc = Some((lm, coeffs, pb));
            previous = None;
            continue;
        }
        if lm > acc_lm {
            acc = Some((acc_lm, coeffs, modulus));
            continue;
        }
        let combined = crt_combine(coeffs, &modulus, &image, p);
        let new_modulus = &modulus * &pb;
        let symmetric: BTreeMap<Exps, BigInt> = combined
            .iter()
            .map(|(e, c)| (e.clone(), symmetric_rep(c, &new_modulus)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if previous.as_ref() == Some(&symmetric) {
            let candidate = expand(&symmetric);
            if candidate.divides(f) && candidate.divides(g) {
                return candidate;
            }
        }
        previous = Some(symmetric);
        acc = Some((acc_lm, combined, new_modulus));
    }
    unreachable!("prime stream is infinite")
}

fn lex_lead(terms: &[(Exps, BigInt)]) -> BigInt {
    terms.iter().max_by(|a, b| a.0.cmp(&b.0)).map(|t| t.1.clone()).expect("nonzero")
}

fn lex_max(p: &PPoly) -> &Exps {
    p.keys().max().expect("nonzero")
}

fn is_constant(p: &PPoly) -> bool {
    p.len() == 1 && p.keys().next().unwrap().iter().all(|&e| e == 0)
}

fn mod_big(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

fn reduce(terms: &[(Exps, BigInt)], p: u64) -> PPoly {
    terms
        .iter()
        .filter_map(|(e, c)| {
            let r = mod_big(c, p);
            (r != 0).then(|| (e.clone(), r))
        })
        .collect()
}

fn crt_combine(mut acc: BTreeMap<Exps, BigInt>, modulus: &BigInt, image: &PPoly, p: u64) -> BTreeMap<Exps, BigInt> {
    let m_mod_p = mod_big(modulus, p);
    let inv = invmod(m_mod_p, p);
    let keys: Vec<Exps> = acc.keys().cloned().chain(image.keys().cloned()).collect();
    for e in keys {
        let old = acc.get(&e).cloned().unwrap_or_else(BigInt::zero);
        let target = image.get(&e).copied().unwrap_or(0);
        let old_mod = mod_big(&old, p);
        let t = mulmod(submod(target, old_mod, p), inv, p);
        let value = old + modulus * BigInt::from(t);
        acc.insert(e, value);
    }
    acc
}

fn symmetric_rep(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

// ---- arithmetic mod p ------------------------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes descending from 2^62.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 1 }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while !is_prime(self.next) {
            self.next -= 2;
        }
        let p = self.next;
        self.next -= 2;
        Some(p)
    }
}

// ---- dense univariate polynomials mod p -----------------------------------

fn trim(a: &mut Uni) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn uni_eval(a: &Uni, x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
}

fn uni_mul(a: &Uni, b: &Uni, p: u64) -> Uni {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

fn uni_divrem(a: &Uni, b: &Uni, p: u64) -> (Uni, Uni) {
    let mut r = a.clone();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv = invmod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = mulmod(r[k], inv, p);
        q[k - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k - db + j] = submod(r[k - db + j], mulmod(c, bj, p), p);
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn uni_monic(a: &Uni, p: u64) -> Uni {
    match a.last() {
        None => vec![],
        Some(&lc) => {
            let inv = invmod(lc, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn uni_gcd(a: &Uni, b: &Uni, p: u64) -> Uni {
    let mut x = a.clone();
    let mut y = b.clone();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = uni_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    uni_monic(&x, p)
}

// ---- recursive modular GCD ------------------------------------------------

/// Monic (in lex order) GCD of two polynomials in `k` variables mod `p`.
fn gcd_mod_p(f: &PPoly, g: &PPoly, k: usize, p: u64) -> PPoly {
    if f.is_empty() {
        return lex_monic(g.clone(), p);
    }
    if g.is_empty() {
        return lex_monic(f.clone(), p);
    }
    if k == 1 {
        let h = uni_gcd(&to_uni(f), &to_uni(g), p);
        return from_uni(&h);
    }
    let last = k - 1;
    let fc = split_last(f, last);
    let gc = split_last(g, last);
    let cont_f = fc.values().fold(vec![], |acc, c| uni_gcd(&acc, c, p));
    let cont_g = gc.values().fold(vec![], |acc, c| uni_gcd(&acc, c, p));
    let content = uni_gcd(&cont_f, &cont_g, p);
    let fc = divide_coefficients(fc, &cont_f, p);
    let gc = divide_coefficients(gc, &cont_g, p);
    let lcf = fc.iter().max_by(|a, b| a.0.cmp(b.0)).unwrap().1.clone();
    let lcg = gc.iter().max_by(|a, b| a.0.cmp(b.0)).unwrap().1.clone();
    let gamma = uni_gcd(&lcf, &lcg, p);
    let deg_f = fc.values().map(|c| c.len() - 1).max().unwrap();
    let deg_g = gc.values().map(|c| c.len() - 1).max().unwrap();
    let bound = (gamma.len() - 1) + deg_f.min(deg_g);

    let mut rng = (p ^ 0x9e37_79b9_7f4a_7c15).wrapping_mul(k as u64 + 1) | 1;
    let mut lm: Option<Exps> = None;
    let mut interp: BTreeMap<Exps, Uni> = BTreeMap::new();
    let mut modulus: Uni = vec![1];
    let mut points = 0usize;
    loop {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        let a = rng % p;
        if uni_eval(&lcf, a, p) == 0 || uni_eval(&lcg, a, p) == 0 {
            continue;
        }
        let fa = eval_last(&fc, a, p);
        let ga = eval_last(&gc, a, p);
        let h = gcd_mod_p(&fa, &ga, k - 1, p);
        if is_constant(&h) {
            return lex_monic(lift_content(&content, k), p);
        }
        let ga_val = uni_eval(&gamma, a, p);
        let h: BTreeMap<Exps, u64> = h.into_iter().map(|(e, c)| (e, mulmod(c, ga_val, p))).collect();
        let lmh = h.keys().next_back().unwrap().clone();
        let reset = match &lm {
            None => true,
            Some(cur) => lmh < *cur,
        };
        if reset {
            interp = h.into_iter().map(|(e, c)| (e, vec![c])).collect();
            modulus = vec![submod(0, a, p), 1];
            lm = Some(lmh);
            points = 1;
        } else if Some(&lmh) != lm.as_ref() {
            continue;
        } else {
            let m_at_a = uni_eval(&modulus, a, p);
            if m_at_a == 0 {
                continue;
            }
            let inv = invmod(m_at_a, p);
            let keys: Vec<Exps> = interp.keys().cloned().chain(h.keys().cloned()).collect();
            for e in keys {
                let old = interp.entry(e.clone()).or_default();
                let v_old = uni_eval(old, a, p);
                let v_new = h.get(&e).copied().unwrap_or(0);
                let delta = mulmod(submod(v_new, v_old, p), inv, p);
                if delta != 0 {
                    let add: Uni = modulus.iter().map(|&c| mulmod(c, delta, p)).collect();
                    if old.len() < add.len() {
                        old.resize(add.len(), 0);
                    }
                    for (i, c) in add.into_iter().enumerate() {
                        old[i] = addmod(old[i], c, p);
                    }
                    trim(old);
                }
            }
            interp.retain(|_, c| !c.is_empty());
            modulus = uni_mul(&modulus, &vec![submod(0, a, p), 1], p);
            points += 1;
        }
        if points > bound {
            let cont = interp.values().fold(vec![], |acc, c| uni_gcd(&acc, c, p));
            let prim: HashMap<Exps, Uni> = interp.iter().map(|(e, c)| (e.clone(), uni_divrem(c, &cont, p).0)).collect();
            let candidate = join_last(&prim, last);
            let f_prim = join_last(&fc, last);
            let g_prim = join_last(&gc, last);
            if divides_mod_p(&candidate, &f_prim, p) && divides_mod_p(&candidate, &g_prim, p) {
                let with_content = mul_mod_p(&candidate, &lift_content(&content, k), p);
                return lex_monic(with_content, p);
            }
            lm = None;
            points = 0;
        }
    }
}

fn lex_monic(mut f: PPoly, p: u64) -> PPoly {
    if f.is_empty() {
        return f;
    }
    let lc = f[lex_max(&f)];
    let inv = invmod(lc, p);
    for c in f.values_mut() {
        *c = mulmod(*c, inv, p);
    }
    f
}

fn to_uni(f: &PPoly) -> Uni {
    let deg = f.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut out = vec![0u64; deg + 1];
    for (e, &c) in f {
        out[e[0] as usize] = c;
    }
    trim(&mut out);
    out
}

fn from_uni(a: &Uni) -> PPoly {
    a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (vec![i as u32], c)).collect()
}

/// Coefficients in the last variable, keyed by the remaining exponents.
fn split_last(f: &PPoly, last: usize) -> HashMap<Exps, Uni> {
    let mut out: HashMap<Exps, Uni> = HashMap::new();
    for (e, &c) in f {
        let d = e[last] as usize;
        let entry = out.entry(e[..last].to_vec()).or_default();
        if entry.len() <= d {
            entry.resize(d + 1, 0);
        }
        entry[d] = c;
    }
    out
}

fn join_last(f: &HashMap<Exps, Uni>, last: usize) -> PPoly {
    let mut out = PPoly::new();
    for (e, c) in f {
        for (d, &v) in c.iter().enumerate() {
            if v != 0 {
                let mut full = e.clone();
                debug_assert_eq!(full.len(), last);
                full.push(d as u32);
                out.insert(full, v);
            }
        }
    }
    out
}

fn divide_coefficients(f: HashMap<Exps, Uni>, by: &Uni, p: u64) -> HashMap<Exps, Uni> {
    if by.len() <= 1 {
        return f;
    }
    f.into_iter().map(|(e, c)| (e, uni_divrem(&c, by, p).0)).collect()
}

fn eval_last(f: &HashMap<Exps, Uni>, a: u64, p: u64) -> PPoly {
    f.iter()
        .filter_map(|(e, c)| {
            let v = uni_eval(c, a, p);
            (v != 0).then(|| (e.clone(), v))
        })
        .collect()
}

fn lift_content(content: &Uni, k: usize) -> PPoly {
    content
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| {
            let mut e = vec![0u32; k];
            e[k - 1] = d as u32;
            (e, c)
        })
        .collect()
}

fn mul_mod_p(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
    let mut out = PPoly::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let v = out.entry(e).or_insert(0);
            *v = addmod(*v, mulmod(ca, cb, p), p);
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Whether `d` divides `f` mod `p`, by lex-order division.
fn divides_mod_p(d: &PPoly, f: &PPoly, p: u64) -> bool {
    let (lm, &lc) = d.iter().max_by(|a, b| a.0.cmp(b.0)).expect("nonzero divisor");
    let inv = invmod(lc, p);
    let mut rem: BTreeMap<Exps, u64> = f.iter().map(|(e, &c)| (e.clone(), c)).collect();
    while let Some((e, &c)) = rem.iter().next_back() {
        let mut q = Vec::with_capacity(e.len());
        for (x, y) in e.iter().zip(lm) {
            match x.checked_sub(*y) {
                Some(v) => q.push(v),
                None => return false,
            }
        }
        let qc = mulmod(c, inv, p);
        for (de, &dc) in d {
            let key: Exps = de.iter().zip(&q).map(|(x, y)| x + y).collect();
            let delta = mulmod(qc, dc, p);
            let entry = rem.entry(key.clone()).or_insert(0);
            *entry = submod(*entry, delta, p);
            if *entry == 0 {
                rem.remove(&key);
            }
        }
    }
    true
}
