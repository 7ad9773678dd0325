//! Exact arithmetic in GF(p^t).
//!
//! Elements are dense integer codes: the code `c = d_0 + d_1 p + ... + d_{t-1} p^{t-1}`
//! stands for the polynomial `d_0 + d_1 x + ... + d_{t-1} x^{t-1}` reduced modulo the
//! field's monic irreducible modulus. Code 0 is zero and code 1 is one.
//!
//! Fields with `q <= 2^16` carry log/antilog and Zech tables so that the hot loops of
//! the analysis code never touch polynomial arithmetic. Larger fields fall back to
//! schoolbook polynomial multiplication.

use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An element code. Always `< q` for the field it belongs to.
pub type Code = u32;

const TABLE_LIMIT: u64 = 1 << 16;
const MAX_ORDER: u64 = 1 << 31;
const ZECH_NONE: u16 = u16::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("modulus must be monic of degree {expected} with coefficients below p, got {got:?}")]
    BadModulus { expected: u32, got: Vec<u32> },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{t} exceeds 2^31")]
    TooLarge { p: u32, t: u32 },
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("subfield degree {e} does not divide {t}")]
    NonDivisorDegree { e: u32, t: u32 },
    #[error("code {0} is out of range for the field")]
    CodeOutOfRange(u64),
}

/// How the defining polynomial is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modulus {
    /// Lexicographically smallest monic irreducible of degree t, comparing
    /// `(c_0, c_1, ..., c_{t-1})` in that order.
    Auto,
    /// Explicit coefficients `c_0..c_t`, lowest degree first.
    Given(Vec<u32>),
}

/// Plain record used for serialization: `{p, t, modulus: [c_0..c_t]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub p: u32,
    pub t: u32,
    pub modulus: Vec<u32>,
}

struct Tables {
    /// exp[i] = g^i for i in 0..2(q-1), doubled so products need no reduction.
    exp: Vec<u16>,
    log: Vec<u16>,
    /// zech[k] = log(1 + g^k), or ZECH_NONE when 1 + g^k = 0.
    zech: Vec<u16>,
    neg: Vec<u16>,
}

/// A validated finite field GF(p^t).
pub struct FieldSpec {
    p: u32,
    t: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    primitive: Code,
    tables: Option<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("t", &self.t)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.t == other.t && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`, coefficients over GF(p), lowest first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let dm = m.len() - 1;
    let p = p as u64;
    while r.len() > dm {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let sub = lead * mc as u64 % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=t/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let t = modulus.len() - 1;
    if t <= 1 {
        return true;
    }
    for d in 1..=t / 2 {
        let count = (p as u64).pow(d as u32);
        let mut div = vec![0u32; d + 1];
        div[d] = 1;
        for m in 0..count {
            let mut x = m;
            for c in div.iter_mut().take(d) {
                *c = (x % p as u64) as u32;
                x /= p as u64;
            }
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn auto_modulus(p: u32, t: u32) -> Vec<u32> {
    if t == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(t);
    let mut poly = vec![0u32; t as usize + 1];
    poly[t as usize] = 1;
    for m in 0..count {
        // c_0 is the most significant digit of m, so m ascending is lex order on (c_0, .., c_{t-1}).
        let mut x = m;
        for j in (0..t as usize).rev() {
            poly[j] = (x % p as u64) as u32;
            x /= p as u64;
        }
        if poly[0] != 0 && is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl FieldSpec {
    /// Validates the parameters and builds the field.
    pub fn new(p: u32, t: u32, modulus: Modulus) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if t == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(t).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER {
            return Err(FieldError::TooLarge { p, t });
        }
        let q = q64 as u32;
        let modulus = match modulus {
            Modulus::Auto => auto_modulus(p, t),
            Modulus::Given(m) => {
                if m.len() != t as usize + 1 || m[t as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus { expected: t, got: m });
                }
                if !is_irreducible(&m, p) {
                    return Err(FieldError::ReducibleModulus(m, p));
                }
                m
            }
        };
        let mut pow_p = Vec::with_capacity(t as usize + 1);
        let mut acc = 1u32;
        for i in 0..=t {
            pow_p.push(acc);
            if i < t {
                acc = acc.wrapping_mul(p);
            }
        }
        let mut field = FieldSpec { p, t, q, modulus, pow_p, primitive: 1, tables: None };
        field.primitive = field.find_primitive();
        if q64 <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Convenience for `new(p, t, Modulus::Auto)` wrapped in an `Arc`.
    pub fn auto(p: u32, t: u32) -> Result<Arc<Self>, FieldError> {
        Self::new(p, t, Modulus::Auto).map(Arc::new)
    }

    pub fn from_record(rec: &FieldRecord) -> Result<Self, FieldError> {
        Self::new(rec.p, rec.t, Modulus::Given(rec.modulus.clone()))
    }

    pub fn record(&self) -> FieldRecord {
        FieldRecord { p: self.p, t: self.t, modulus: self.modulus.clone() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A generator of the multiplicative group (smallest code with order q-1).
    pub fn primitive(&self) -> Code {
        self.primitive
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn element(&self, code: u64) -> Result<FieldElement<'_>, FieldError> {
        if code >= self.q as u64 {
            return Err(FieldError::CodeOutOfRange(code));
        }
        Ok(FieldElement { field: self, code: code as Code })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        (0..self.q).map(move |code| FieldElement { field: self, code })
    }

    pub fn digits(&self, a: Code) -> Vec<u32> {
        let mut a = a;
        (0..self.t)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Code {
        digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d % self.p)
    }

    /// The class of `x` in the polynomial representation (code p), or 1 for prime fields.
    pub fn generator_x(&self) -> Code {
        if self.t == 1 {
            1
        } else {
            self.p
        }
    }

    fn add_slow(&self, a: Code, b: Code) -> Code {
        if self.t == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as Code;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        for i in 0..self.t as usize {
            let d = (a % self.p + b % self.p) % self.p;
            out += d * self.pow_p[i];
            a /= self.p;
            b /= self.p;
        }
        out
    }

    fn neg_slow(&self, a: Code) -> Code {
        let mut a = a;
        let mut out = 0u32;
        for i in 0..self.t as usize {
            let d = a % self.p;
            out += ((self.p - d) % self.p) * self.pow_p[i];
            a /= self.p;
        }
        out
    }

    fn mul_slow(&self, a: Code, b: Code) -> Code {
        if self.t == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Code;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u32; 2 * self.t as usize - 1];
        let p = self.p as u64;
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn pow_slow(&self, a: Code, mut k: u64) -> Code {
        let mut base = a;
        let mut acc: Code = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Code {
        if self.q == 2 {
            return 1;
        }
        let order = self.q as u64 - 1;
        let factors = prime_factors(order);
        (2..self.q)
            .find(|&g| factors.iter().all(|&r| self.pow_slow(g, order / r) != 1))
            .expect("multiplicative group is cyclic")
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let n = q - 1;
        let mut exp = vec![0u16; 2 * n.max(1)];
        let mut log = vec![0u16; q];
        let mut x: Code = 1;
        for i in 0..n {
            exp[i] = x as u16;
            exp[i + n] = x as u16;
            log[x as usize] = i as u16;
            x = self.mul_slow(x, self.primitive);
        }
        debug_assert_eq!(x, 1);
        let mut zech = vec![ZECH_NONE; n.max(1)];
        for (k, z) in zech.iter_mut().enumerate().take(n) {
            let s = self.add_slow(1, exp[k] as Code);
            if s != 0 {
                *z = log[s as usize];
            }
        }
        let neg = (0..q as Code).map(|a| self.neg_slow(a) as u16).collect();
        Tables { exp, log, zech, neg }
    }

    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        match &self.tables {
            Some(tb) => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = self.q as usize - 1;
                let la = tb.log[a as usize] as usize;
                let lb = tb.log[b as usize] as usize;
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = tb.zech[d];
                if z == ZECH_NONE {
                    0
                } else {
                    tb.exp[la + z as usize] as Code
                }
            }
            None => self.add_slow(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Code) -> Code {
        match &self.tables {
            Some(tb) => tb.neg[a as usize] as Code,
            None => self.neg_slow(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.tables {
            Some(tb) => tb.exp[tb.log[a as usize] as usize + tb.log[b as usize] as usize] as Code,
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse; panics on zero. See [`FieldSpec::try_inv`].
    #[inline]
    pub fn inv(&self, a: Code) -> Code {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(tb) => {
                let n = self.q as usize - 1;
                let la = tb.log[a as usize] as usize;
                tb.exp[(n - la) % n] as Code
            }
            None => self.pow_slow(a, self.q as u64 - 2),
        }
    }

    pub fn try_inv(&self, a: Code) -> Result<Code, FieldError> {
        if a == 0 {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(self.inv(a))
        }
    }

    #[inline]
    pub fn div(&self, a: Code, b: Code) -> Code {
        self.mul(a, self.inv(b))
    }

    /// `a^k`, with `0^0 = 1`.
    pub fn pow(&self, a: Code, k: u64) -> Code {
        if k == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        match &self.tables {
            Some(tb) => {
                let n = self.q as u64 - 1;
                let la = tb.log[a as usize] as u64;
                tb.exp[((la * (k % n)) % n) as usize] as Code
            }
            None => self.pow_slow(a, k),
        }
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Code, k: u32) -> Code {
        let k = k % self.t;
        let mut x = a;
        for _ in 0..k {
            x = self.pow(x, self.p as u64);
        }
        x
    }

    /// Discrete log base [`FieldSpec::primitive`]; `None` for zero or when no tables exist.
    pub fn log(&self, a: Code) -> Option<u32> {
        if a == 0 {
            return None;
        }
        self.tables.as_ref().map(|tb| tb.log[a as usize] as u32)
    }

    #[inline]
    pub fn dot(&self, a: &[Code], b: &[Code]) -> Code {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Evaluates a polynomial with coefficients in the prime field (lowest first) at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: Code) -> Code {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn subfield(self: &Arc<Self>, e: u32) -> Result<SubfieldHandle, FieldError> {
        SubfieldHandle::new(self, e)
    }
}

/// A field element bound to its field, for checked arithmetic outside hot loops.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    code: Code,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}

impl<'f> FieldElement<'f> {
    pub fn code(&self) -> Code {
        self.code
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if std::ptr::eq(self.field, other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    fn wrap(&self, code: Code) -> Self {
        FieldElement { field: self.field, code }
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(self.wrap(self.field.mul(self.code, other.code)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.code))
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        self.field.try_inv(self.code).map(|c| self.wrap(c))
    }

    pub fn pow(&self, k: u64) -> Self {
        self.wrap(self.field.pow(self.code, k))
    }

    pub fn frobenius(&self, k: u32) -> Self {
        self.wrap(self.field.frobenius(self.code, k))
    }
}

/// GF(p^e) sitting inside GF(p^t).
#[derive(Debug, Clone)]
pub struct SubfieldHandle {
    e: u32,
    big: Arc<FieldSpec>,
    small: Arc<FieldSpec>,
    /// small code -> big code
    embed: Vec<Code>,
    /// big code -> small code
    restrict: FxHashMap<Code, Code>,
    member: Vec<u64>,
}

impl SubfieldHandle {
    pub fn new(big: &Arc<FieldSpec>, e: u32) -> Result<Self, FieldError> {
        let t = big.t();
        if e == 0 || t % e != 0 {
            return Err(FieldError::NonDivisorDegree { e, t });
        }
        let p = big.p();
        let (small, embed): (Arc<FieldSpec>, Vec<Code>) = if e == t {
            (big.clone(), (0..big.q()).collect())
        } else if e == 1 {
            (FieldSpec::auto(p, 1)?, (0..p).collect())
        } else {
            let small = FieldSpec::auto(p, e)?;
            let q0 = small.q();
            // Map y -> a root of the small modulus lying in the big field.
            let root = (1..big.q())
                .find(|&r| big.eval_prime_poly(small.modulus(), r) == 0)
                .expect("a field of order p^t contains every field of order p^e with e | t");
            let powers: Vec<Code> = (0..e).map(|j| big.pow(root, j as u64)).collect();
            let embed = (0..q0)
                .map(|c| {
                    small
                        .digits(c)
                        .iter()
                        .zip(&powers)
                        .fold(0, |acc, (&d, &rp)| big.add(acc, big.mul(d, rp)))
                })
                .collect();
            (small, embed)
        };
        let q0 = (p as u64).pow(e);
        let mut member = vec![0u64; (big.q() as usize).div_ceil(64)];
        let mut restrict = FxHashMap::default();
        for (s, &b) in embed.iter().enumerate() {
            member[b as usize / 64] |= 1 << (b % 64);
            restrict.insert(b, s as Code);
        }
        debug_assert_eq!(restrict.len() as u64, q0);
        Ok(SubfieldHandle { e, big: big.clone(), small, embed, restrict, member })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q0(&self) -> u32 {
        self.small.q()
    }

    pub fn big(&self) -> &Arc<FieldSpec> {
        &self.big
    }

    pub fn small(&self) -> &Arc<FieldSpec> {
        &self.small
    }

    #[inline]
    pub fn embed(&self, small_code: Code) -> Code {
        self.embed[small_code as usize]
    }

    #[inline]
    pub fn restrict(&self, big_code: Code) -> Option<Code> {
        self.restrict.get(&big_code).copied()
    }

    #[inline]
    pub fn contains(&self, big_code: Code) -> bool {
        self.member[big_code as usize / 64] >> (big_code % 64) & 1 == 1
    }

    /// Number of set bits in the membership bitset.
    pub fn cardinality(&self) -> u64 {
        self.member.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// The codes of the image, ascending.
    pub fn members(&self) -> Vec<Code> {
        let mut v = self.embed.clone();
        v.sort_unstable();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_seven() {
        let f = FieldSpec::new(7, 1, Modulus::Auto).unwrap();
        assert_eq!(f.q(), 7);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(3, 5), 1);
    }

    #[test]
    fn gf343_has_343_codes() {
        let f = FieldSpec::new(7, 3, Modulus::Auto).unwrap();
        assert_eq!(f.q(), 343);
        assert_eq!(f.elements().count(), 343);
    }

    #[test]
    fn gf4_given_modulus() {
        let f = FieldSpec::new(2, 2, Modulus::Given(vec![1, 1, 1])).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        let auto = FieldSpec::new(2, 2, Modulus::Auto).unwrap();
        assert_eq!(auto.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn auto_modulus_is_lex_smallest() {
        // (c0, c1) lex order over GF(7): x^2 + 1 is the first with nonzero c0 and no root.
        let f = FieldSpec::new(7, 2, Modulus::Auto).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let f = FieldSpec::new(3, 2, Modulus::Auto).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldSpec::new(6, 1, Modulus::Auto).unwrap_err(), FieldError::NonPrime(6));
        assert!(matches!(
            FieldSpec::new(2, 2, Modulus::Given(vec![1, 0, 1])),
            Err(FieldError::ReducibleModulus(..))
        ));
        assert!(matches!(
            FieldSpec::new(2, 2, Modulus::Given(vec![1, 1])),
            Err(FieldError::BadModulus { .. })
        ));
        assert!(matches!(FieldSpec::new(2, 40, Modulus::Auto), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn zero_inverse_and_mixed_fields() {
        let f = FieldSpec::new(5, 1, Modulus::Auto).unwrap();
        let g = FieldSpec::new(7, 1, Modulus::Auto).unwrap();
        assert_eq!(f.try_inv(0), Err(FieldError::ZeroInverse));
        let a = f.element(2).unwrap();
        let b = g.element(2).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), FieldError::MixedFields);
        assert_eq!(a.inv().unwrap().code(), 3);
        assert!(f.element(5).is_err());
    }

    #[test]
    fn group_order_power() {
        for (p, t) in [(2, 4), (3, 3), (7, 2), (5, 1)] {
            let f = FieldSpec::new(p, t, Modulus::Auto).unwrap();
            for a in 1..f.q() {
                assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        let f = FieldSpec::new(3, 4, Modulus::Auto).unwrap();
        assert!(f.has_tables());
        for a in 0..f.q() {
            for b in 0..f.q() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                assert_eq!(f.add(a, b), f.add_slow(a, b));
            }
        }
    }

    #[test]
    fn frobenius_fixed_points() {
        let f = Arc::new(FieldSpec::new(7, 2, Modulus::Auto).unwrap());
        let fixed = (0..f.q()).filter(|&a| f.frobenius(a, 1) == a).count();
        assert_eq!(fixed, 7);
        for a in 0..f.q() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 2), a);
        }
    }

    #[test]
    fn subfields() {
        let f = FieldSpec::auto(7, 3).unwrap();
        assert_eq!(f.subfield(1).unwrap().cardinality(), 7);
        assert_eq!(f.subfield(3).unwrap().cardinality(), 343);
        assert!(matches!(f.subfield(2), Err(FieldError::NonDivisorDegree { e: 2, t: 3 })));

        let g = FieldSpec::auto(2, 4).unwrap();
        let s = g.subfield(2).unwrap();
        // exhaustive count of fixed points of x -> x^4
        let fixed: Vec<Code> = (0..16).filter(|&a| g.pow(a, 4) == a).collect();
        assert_eq!(fixed.len(), 4);
        assert_eq!(s.members(), fixed);
        assert_eq!(s.cardinality(), 4);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let big = FieldSpec::auto(3, 4).unwrap();
        let sub = big.subfield(2).unwrap();
        let small = sub.small().clone();
        for a in 0..small.q() {
            for b in 0..small.q() {
                assert_eq!(sub.embed(small.add(a, b)), big.add(sub.embed(a), sub.embed(b)));
                assert_eq!(sub.embed(small.mul(a, b)), big.mul(sub.embed(a), sub.embed(b)));
            }
            assert_eq!(sub.restrict(sub.embed(a)), Some(a));
        }
    }

    #[test]
    fn large_field_without_tables() {
        let f = FieldSpec::new(2, 17, Modulus::Auto).unwrap();
        assert!(!f.has_tables());
        let a = 12345;
        assert_eq!(f.mul(a, f.inv(a)), 1);
        assert_eq!(f.pow(a, f.q() as u64 - 1), 1);
    }
}
