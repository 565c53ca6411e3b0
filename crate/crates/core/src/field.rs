//! Exact scalar fields: the rationals and finite fields `GF(p^k)`.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::FieldError;

/// Largest supported finite-field order; multiplication uses log tables.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// `None` for infinite fields.
    fn order(&self) -> Option<u64>;
    /// A seeded random element; rationals draw small numerators and denominators.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError>;
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// Every element, for finite fields, in encoding order.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn order(&self) -> Option<u64> {
        None
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.gen_range(-5..=5);
        let den: i64 = rng.gen_range(1..=3);
        BigRational::new(num.into(), den.into())
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = n.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
                let d = d.trim().parse::<num_bigint::BigInt>().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        }
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

#[derive(Debug)]
struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Monic modulus, low degree first, length `k + 1`.
    modulus: Vec<u32>,
    /// `exp[i]` is the encoding of `z^i`, doubled in length to skip a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// `GF(p^k)` with elements encoded as base-`p` digit strings of polynomials
/// in a primitive element `z`.
#[derive(Clone)]
pub struct GaloisField {
    t: Arc<Tables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.t.q)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.t.q == other.t.q && self.t.modulus == other.t.modulus
    }
}
impl Eq for GaloisField {}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Writes `q = p^k` for a prime `p`, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl GaloisField {
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER && k >= 1).ok_or(FieldError::TooLarge(p.saturating_pow(k)))?;
        let (p32, q32) = (p as u32, q as u32);
        // Search monic moduli in lexicographic order of their low coefficients
        // for one under which `z` generates the multiplicative group; such a
        // modulus is irreducible.
        for code in 0..q32 {
            let mut modulus: Vec<u32> = digits(code, p32, k as usize);
            modulus.push(1);
            if modulus[0] == 0 {
                continue;
            }
            if let Some((exp, log)) = power_tables(p32, &modulus, q32) {
                return Ok(Self { t: Arc::new(Tables { p: p32, k, q: q32, modulus, exp, log }) });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1)
    }

    /// The field of order `q`.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, k)
    }

    pub fn degree(&self) -> u32 {
        self.t.k
    }

    pub fn size(&self) -> u64 {
        u64::from(self.t.q)
    }

    /// Monic modulus, low degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// The primitive element `z`.
    pub fn generator(&self) -> u32 {
        self.t.exp[1]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return u32::from(e == 0);
        }
        let qm1 = u64::from(self.t.q - 1);
        self.t.exp[((u64::from(self.t.log[a as usize]) * (e % qm1)) % qm1) as usize]
    }
}

fn digits(mut code: u32, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = code % p;
        code /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Powers of `z` modulo `modulus`, if `z` has order exactly `q - 1`.
fn power_tables(p: u32, modulus: &[u32], q: u32) -> Option<(Vec<u32>, Vec<u32>)> {
    let k = modulus.len() - 1;
    let mut exp = Vec::with_capacity(2 * q as usize);
    let mut log = vec![0u32; q as usize];
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    for i in 0..q - 1 {
        let code = undigits(&cur, p);
        if i > 0 && code == 1 {
            return None;
        }
        exp.push(code);
        log[code as usize] = i;
        // multiply by z and reduce by the monic modulus
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = (cur[j] + p - (top * modulus[j]) % p) % p;
        }
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    let again = exp.clone();
    exp.extend(again);
    Some((exp, log))
}

impl Field for GaloisField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let p = self.t.p;
        if self.t.k == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (*a, *b);
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }
    fn neg(&self, a: &u32) -> u32 {
        let p = self.t.p;
        if self.t.k == 1 {
            return (p - a) % p;
        }
        let mut a = *a;
        let (mut out, mut place) = (0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        if *a == 0 || *b == 0 {
            return 0;
        }
        self.t.exp[(self.t.log[*a as usize] + self.t.log[*b as usize]) as usize]
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        let qm1 = self.t.q - 1;
        Some(self.t.exp[((qm1 - self.t.log[*a as usize]) % qm1) as usize])
    }
    fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(i64::from(self.t.p)) as u32
    }
    fn characteristic(&self) -> u64 {
        u64::from(self.t.p)
    }
    fn order(&self) -> Option<u64> {
        Some(u64::from(self.t.q))
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.t.q)
    }
    fn format(&self, a: &u32) -> String {
        if self.t.k == 1 || *a < self.t.p {
            return a.to_string();
        }
        let ds = digits(*a, self.t.p, self.t.k as usize);
        let terms: Vec<String> = ds
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| {
                let coeff = if d == 1 && i > 0 { String::new() } else { d.to_string() };
                match i {
                    0 => coeff,
                    1 => format!("{coeff}z"),
                    _ => format!("{coeff}z^{i}"),
                }
            })
            .collect();
        terms.join("+")
    }
    fn parse(&self, s: &str) -> Result<u32, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(s.to_string());
        if let Ok(n) = s.parse::<i64>() {
            return Ok(self.from_int(n));
        }
        let p = self.t.p;
        let mut ds = vec![0u32; self.t.k as usize];
        for term in s.split('+') {
            let term = term.trim();
            let (coeff, power) = match term.split_once('z') {
                None => (term, 0usize),
                Some((c, rest)) => {
                    let power = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (if c.is_empty() { "1" } else { c }, power)
                }
            };
            let c: u32 = coeff.parse().map_err(|_| bad())?;
            if power >= ds.len() || c >= p {
                return Err(bad());
            }
            ds[power] = (ds[power] + c) % p;
        }
        Ok(undigits(&ds, p))
    }
    fn name(&self) -> String {
        format!("GF({})", self.t.q)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.t.q).collect())
    }
}

/// A field chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactField {
    Rational,
    Finite(GaloisField),
}

impl ExactField {
    /// Accepts `Q`, `GF(q)`, `F_q` or `Fq` for a prime power `q`.
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let s = spec.trim();
        if matches!(s, "Q" | "QQ" | "rationals") {
            return Ok(ExactField::Rational);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| FieldError::UnknownSpec(s.to_string()))?;
        let q: u64 = inner.parse().map_err(|_| FieldError::UnknownSpec(s.to_string()))?;
        Ok(ExactField::Finite(GaloisField::of_order(q)?))
    }

    pub fn name(&self) -> String {
        match self {
            ExactField::Rational => Rationals.name(),
            ExactField::Finite(f) => f.name(),
        }
    }
}

impl fmt::Display for ExactField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
