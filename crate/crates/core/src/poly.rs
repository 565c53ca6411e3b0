//! Univariate polynomials over exact fields, with factorization over finite
//! fields.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros; the zero polynomial is the empty vector.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, GaloisField};

pub type Poly<E> = Vec<E>;

pub fn trim<F: Field>(f: &F, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
    a
}

/// Degree, with `None` for the zero polynomial.
pub fn degree<E>(a: &[E]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn one<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.one()]
}

/// The monomial `x`.
pub fn x<F: Field>(f: &F) -> Poly<F::Elem> {
    vec![f.zero(), f.one()]
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let out = (0..n).map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z))).collect();
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let nb: Vec<F::Elem> = b.iter().map(|c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if f.is_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(ai, bj));
        }
    }
    trim(f, out)
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![f.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = f.mul(&r[i], &lead_inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = f.mul(&c, bj);
            r[i - db + j] = f.sub(&r[i - db + j], &t);
        }
        q[i - db] = c;
    }
    (trim(f, q), trim(f, r))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    divrem(f, a, b).1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = f.inv(lead).expect("nonzero leading coefficient");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic greatest common divisor.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn derivative<F: Field>(f: &F, a: &[F::Elem]) -> Poly<F::Elem> {
    let out = a.iter().enumerate().skip(1).map(|(i, c)| f.mul(&f.from_int(i as i64), c)).collect();
    trim(f, out)
}

/// `a^e mod m`.
pub fn powmod<F: Field>(f: &F, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Poly<F::Elem> {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &one(f), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], t: &F::Elem) -> F::Elem {
    a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, t), c))
}

pub fn format<F: Field>(f: &F, a: &[F::Elem]) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(i, c)| {
            let s = f.format(c);
            let coeff = if i > 0 && *c == f.one() { String::new() } else if s.contains('+') { format!("({s})") } else { s };
            match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            }
        })
        .collect();
    terms.join(" + ")
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree and the input equal to `∏ g^m`.
pub fn squarefree(f: &GaloisField, a: &[u32]) -> Vec<(Poly<u32>, usize)> {
    let mut out = Vec::new();
    if degree(a).is_none_or(|d| d == 0) {
        return out;
    }
    let p = f.characteristic() as usize;
    let da = derivative(f, a);
    let mut c = gcd(f, a, &da);
    let mut w = divrem(f, a, &c).0;
    let mut i = 1;
    while degree(&w).is_some_and(|d| d > 0) {
        let y = gcd(f, &w, &c);
        let fac = divrem(f, &w, &y).0;
        if degree(&fac).is_some_and(|d| d > 0) {
            out.push((fac, i));
        }
        w = y.clone();
        c = divrem(f, &c, &y).0;
        i += 1;
    }
    if degree(&c).is_some_and(|d| d > 0) {
        // c is a p-th power: take the root coefficientwise.
        let q = f.size();
        let root: Poly<u32> = c.iter().step_by(p).map(|&x| f.pow(x, q / p as u64)).collect();
        for (g, m) in squarefree(f, &root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g, d)` with `g` the product of the irreducible factors of degree `d`.
pub fn distinct_degree(f: &GaloisField, a: &[u32]) -> Vec<(Poly<u32>, usize)> {
    let q = f.size();
    let mut out = Vec::new();
    let mut rest = a.to_vec();
    let mut h = x(f);
    let mut d = 1;
    while degree(&rest).is_some_and(|n| n >= 2 * d) {
        h = powmod(f, &h, q, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x(f)));
        if degree(&g).is_some_and(|n| n > 0) {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = degree(&rest).filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

/// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus).
pub fn equal_degree(f: &GaloisField, a: &[u32], d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly<u32>> {
    let n = degree(a).expect("nonzero");
    if n == d {
        return vec![a.to_vec()];
    }
    let q = f.size();
    loop {
        let r: Poly<u32> = trim(f, (0..n).map(|_| f.random(rng)).collect());
        if degree(&r).is_none_or(|k| k == 0) {
            continue;
        }
        let b = if q % 2 == 1 {
            // r^((q^d - 1)/2) = (r^(1 + q + … + q^(d-1)))^((q-1)/2)
            let mut norm = one(f);
            let mut frob = r.clone();
            for _ in 0..d {
                norm = rem(f, &mul(f, &norm, &frob), a);
                frob = powmod(f, &frob, q, a);
            }
            sub(f, &powmod(f, &norm, (q - 1) / 2, a), &one(f))
        } else {
            // absolute trace r + r^2 + r^4 + … over all k·d doublings
            let k = f.degree() as usize;
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..k * d {
                t = rem(f, &mul(f, &t, &t), a);
                acc = add(f, &acc, &t);
            }
            acc
        };
        let g = gcd(f, a, &b);
        if degree(&g).is_some_and(|k| k > 0 && k < n) {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. Deterministic: the random splits use a fixed seed.
pub fn factor(f: &GaloisField, a: &[u32]) -> Vec<(Poly<u32>, usize)> {
    let a = monic(f, &trim(f, a.to_vec()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (s, m) in squarefree(f, &a) {
        for (g, d) in distinct_degree(f, &s) {
            for h in equal_degree(f, &g, d, &mut rng) {
                out.push((h, m));
            }
        }
    }
    out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}
