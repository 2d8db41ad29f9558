//! Exact arithmetic in `F_{p^d}` modelled as `F_p[x]/(f)`.
//!
//! Elements are identified with their *code* `sum c_i p^i`, where `c_i` are
//! the coefficients of the reduced polynomial representative. Codes are what
//! matrices store and what the text formats serialize, so the modulus must
//! always travel with them.
//!
//! Small fields (`q <= 2^16`) get discrete log/exp tables; the hot loops of
//! the closure engine only ever see table lookups.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use thiserror::Error;

use crate::poly;

/// Fields larger than this are refused.
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

const LOG_TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 1 << 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {0} with coefficients in [0, p)")]
    BadModulus(u32),
    #[error("modulus is reducible over F_{0}")]
    Reducible(u64),
    #[error("field order exceeds 2^40")]
    TooLarge,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element code {0} is out of range")]
    BadCode(u64),
    #[error("multiplicative order of zero is undefined")]
    ZeroOrder,
    #[error("no element of multiplicative order {0}")]
    NoElementOfOrder(u64),
    #[error("norm of mu is not 1")]
    NormNotOne,
    #[error("field of degree {0} has no subfield of index 2")]
    OddDegree(u32),
    #[error("malformed field header: {0}")]
    Parse(String),
}

struct Tables {
    /// exp[i] = g^i for i in [0, 2(q-1))
    exp: Vec<u32>,
    /// log[c] for c != 0
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

struct Inner {
    p: u64,
    d: u32,
    q: u64,
    modulus: Vec<u64>,
    /// distinct primes dividing q - 1
    unit_factors: Vec<u64>,
    tables: Option<Tables>,
}

/// A finite field `F_{p^d}` with a fixed irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, {:?})", self.0.p, self.0.d, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl Field {
    /// Builds `F_{p^d}`. Without an explicit modulus the monic irreducible of
    /// degree `d` with the smallest code `sum c_i p^i` is used (for `d = 1`
    /// this is `x`).
    pub fn new(p: u64, d: u32, modulus: Option<Vec<u64>>) -> Result<Field, FieldError> {
        if !poly::is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if d == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u128).pow(d);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(FieldError::TooLarge);
        }
        let q = q as u64;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != d as usize + 1 || m[d as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(FieldError::BadModulus(d));
                }
                if !poly::is_irreducible(&m, p) {
                    return Err(FieldError::Reducible(p));
                }
                m
            }
            None => canonical_modulus(p, d),
        };
        let mut inner = Inner {
            p,
            d,
            q,
            modulus,
            unit_factors: poly::prime_factors(q - 1),
            tables: None,
        };
        if q <= LOG_TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn prime_field(p: u64) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.d
    }

    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, ascending, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// `GF p d c_0 ... c_d`
    pub fn header(&self) -> String {
        let mut s = format!("GF {} {}", self.0.p, self.0.d);
        for c in &self.0.modulus {
            s.push_str(&format!(" {c}"));
        }
        s
    }

    pub fn parse_header(line: &str) -> Result<Field, FieldError> {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("GF") {
            return Err(FieldError::Parse(line.to_string()));
        }
        let nums: Vec<u64> = toks
            .map(|t| t.parse::<u64>().map_err(|_| FieldError::Parse(line.to_string())))
            .collect::<Result<_, _>>()?;
        if nums.len() < 2 {
            return Err(FieldError::Parse(line.to_string()));
        }
        let (p, d) = (nums[0], nums[1] as u32);
        if nums.len() != d as usize + 3 {
            return Err(FieldError::Parse(line.to_string()));
        }
        let modulus = nums[2..].to_vec();
        if d == 1 {
            // any monic linear modulus describes the same residues
            return Field::new(p, 1, None);
        }
        Field::new(p, d, Some(modulus))
    }

    pub fn elem(&self, code: u64) -> Result<FqElem, FieldError> {
        if code >= self.0.q {
            return Err(FieldError::BadCode(code));
        }
        Ok(FqElem { field: self.clone(), code })
    }

    /// Element from a signed integer, reduced into the prime field.
    pub fn from_int(&self, n: i64) -> FqElem {
        let p = self.0.p as i128;
        let code = ((n as i128 % p + p) % p) as u64;
        FqElem { field: self.clone(), code }
    }

    pub fn zero(&self) -> FqElem {
        FqElem { field: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FqElem {
        FqElem { field: self.clone(), code: 1 }
    }

    /// The class of `x` in `F_p[x]/(f)` (equal to `0` when `d = 1`).
    pub fn generator(&self) -> FqElem {
        let code = if self.0.d == 1 { 0 } else { self.0.p };
        FqElem { field: self.clone(), code }
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(move |code| FqElem { field: self.clone(), code })
    }

    /// Smallest code of multiplicative order exactly `k`.
    pub fn element_of_order(&self, k: u64) -> Result<FqElem, FieldError> {
        if k == 0 || !(self.0.q - 1).is_multiple_of(k) {
            return Err(FieldError::NoElementOfOrder(k));
        }
        (1..self.0.q)
            .find(|&c| self.order_code(c) == k)
            .map(|code| FqElem { field: self.clone(), code })
            .ok_or(FieldError::NoElementOfOrder(k))
    }

    // ---- raw arithmetic on codes ----

    pub fn digits(&self, mut code: u64) -> Vec<u64> {
        let p = self.0.p;
        (0..self.0.d)
            .map(|_| {
                let c = code % p;
                code /= p;
                c
            })
            .collect()
    }

    pub fn encode(&self, digits: &[u64]) -> u64 {
        let p = self.0.p;
        digits.iter().rev().fold(0u64, |acc, &c| acc * p + c % p)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        if inner.d == 1 {
            let s = a + b;
            return if s >= inner.p { s - inner.p } else { s };
        }
        if inner.p == 2 {
            return a ^ b;
        }
        if let Some(Tables { add: Some(t), .. }) = &inner.tables {
            return t[(a * inner.q + b) as usize] as u64;
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, mut a: u64, mut b: u64) -> u64 {
        let p = self.0.p;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..self.0.d {
            let s = (a % p + b % p) % p;
            out += s * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.d == 1 {
            return if a == 0 { 0 } else { inner.p - a };
        }
        let p = inner.p;
        let mut rest = a;
        let mut out = 0u64;
        let mut scale = 1u64;
        for _ in 0..inner.d {
            let c = rest % p;
            out += ((p - c) % p) * scale;
            scale *= p;
            rest /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let i = t.log[a as usize] as usize + t.log[b as usize] as usize;
            return t.exp[i] as u64;
        }
        if inner.d == 1 {
            return poly::mul_mod_p(a, b, inner.p);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: u64, b: u64) -> u64 {
        let inner = &*self.0;
        let r = poly::mul_mod(&self.digits(a), &self.digits(b), &inner.modulus, inner.p);
        self.encode(&r)
    }

    /// Inverse of a nonzero code.
    #[inline]
    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let l = t.log[a as usize] as u64;
            let i = (inner.q - 1 - l) % (inner.q - 1);
            return Some(t.exp[i as usize] as u64);
        }
        Some(self.pow(a, inner.q - 2))
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let inner = &*self.0;
        if let Some(t) = &inner.tables {
            let l = t.log[a as usize] as u128 * e as u128 % (inner.q - 1) as u128;
            return t.exp[l as usize] as u64;
        }
        let mut acc = 1u64;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn order_code(&self, a: u64) -> u64 {
        let inner = &*self.0;
        let mut ord = inner.q - 1;
        for &l in &inner.unit_factors {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    /// `x^{p^r}`, `r` taken modulo `d`.
    pub fn frobenius_code(&self, a: u64, r: i64) -> u64 {
        let d = self.0.d as i64;
        let r = r.rem_euclid(d) as u32;
        let mut x = a;
        for _ in 0..r {
            x = self.pow(x, self.0.p);
        }
        x
    }
}

fn canonical_modulus(p: u64, d: u32) -> Vec<u64> {
    if d == 1 {
        return vec![0, 1];
    }
    let count = p.pow(d);
    for low in 0..count {
        let mut m: Vec<u64> = Vec::with_capacity(d as usize + 1);
        let mut rest = low;
        for _ in 0..d {
            m.push(rest % p);
            rest /= p;
        }
        m.push(1);
        if m[0] != 0 && poly::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.q;
    let p = inner.p;
    let d = inner.d;
    let decode = |mut c: u64| -> Vec<u64> {
        (0..d)
            .map(|_| {
                let r = c % p;
                c /= p;
                r
            })
            .collect()
    };
    let encode = |v: &[u64]| v.iter().rev().fold(0u64, |acc, &c| acc * p + c);
    let mul = |a: u64, b: u64| -> u64 {
        if d == 1 {
            poly::mul_mod_p(a, b, p)
        } else {
            encode(&poly::mul_mod(&decode(a), &decode(b), &inner.modulus, p))
        }
    };
    let pow = |a: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let is_primitive = |g: u64| inner.unit_factors.iter().all(|&l| pow(g, (q - 1) / l) != 1);
    let g = (1..q).find(|&g| is_primitive(g)).expect("F_q^x is cyclic");
    let n = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * n];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u64;
    for i in 0..n {
        exp[i] = x as u32;
        exp[i + n] = x as u32;
        log[x as usize] = i as u32;
        x = mul(x, g);
    }
    let add = (q <= ADD_TABLE_LIMIT && d > 1 && p != 2).then(|| {
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            let da = decode(a);
            for b in 0..q {
                let db = decode(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                t[(a * q + b) as usize] = encode(&s) as u32;
            }
        }
        t
    });
    Tables { exp, log, add }
}

/// An element of a [`Field`].
///
/// Operator impls panic when the operands live in different fields; the
/// `try_*` methods report [`FieldError::FieldMismatch`] instead.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: Field,
    code: u64,
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.characteristic();
        let digits = self.field.digits(self.code);
        let terms: Vec<String> = digits
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else if self.field.degree() == 1 {
            write!(f, "{} (mod {p})", terms.join(" + "))
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FqElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn with(&self, code: u64) -> FqElem {
        FqElem { field: self.field.clone(), code }
    }

    fn same_field(&self, other: &FqElem) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &FqElem) -> Result<FqElem, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.code, other.code)))
    }

    pub fn try_sub(&self, other: &FqElem) -> Result<FqElem, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.code, other.code)))
    }

    pub fn try_mul(&self, other: &FqElem) -> Result<FqElem, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.code, other.code)))
    }

    pub fn try_div(&self, other: &FqElem) -> Result<FqElem, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.code, other.inv()?.code)))
    }

    pub fn inv(&self) -> Result<FqElem, FieldError> {
        self.field.inv(self.code).map(|c| self.with(c)).ok_or(FieldError::ZeroInverse)
    }

    pub fn pow(&self, e: u64) -> FqElem {
        self.with(self.field.pow(self.code, e))
    }

    /// `x^k` for signed `k`; zero to a negative power is an error.
    pub fn powi(&self, k: i64) -> Result<FqElem, FieldError> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inv()?.pow(k.unsigned_abs()))
        }
    }

    /// Smallest `k >= 1` with `x^k = 1`.
    pub fn mult_order(&self) -> Result<u64, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroOrder);
        }
        Ok(self.field.order_code(self.code))
    }

    /// Least `e` with `[e]_x = 1 + x + ... + x^{e-1} = 0`: the characteristic
    /// when `x = 1`, the multiplicative order otherwise.
    pub fn quantum_e(&self) -> Result<u64, FieldError> {
        if self.is_one() {
            return Ok(self.field.characteristic());
        }
        self.mult_order()
    }

    /// `x^{p^r}`, `r` modulo the degree.
    pub fn frobenius(&self, r: i64) -> FqElem {
        self.with(self.field.frobenius_code(self.code, r))
    }

    /// Degree over `F_p` of `F_p(x)`, i.e. the length of the Frobenius orbit.
    pub fn generated_subfield_degree(&self) -> u32 {
        let mut y = self.frobenius(1);
        let mut r = 1;
        while y != *self {
            y = y.frobenius(1);
            r += 1;
        }
        r
    }
}

/// Quantum integer `[k]_x = 1 + x + ... + x^{k-1}`.
pub fn quantum_integer(x: &FqElem, k: u64) -> FqElem {
    let f = x.field();
    let mut acc = 0u64;
    let mut pw = 1u64;
    for _ in 0..k {
        acc = f.add(acc, pw);
        pw = f.mul(pw, x.code());
    }
    f.elem(acc).expect("valid code")
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&FqElem> for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.$try(rhs).expect("field arithmetic")
            }
        }
        impl $tr<FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: FqElem) -> FqElem {
                self.$try(&rhs).expect("field arithmetic")
            }
        }
        impl $tr<&FqElem> for FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                self.$try(rhs).expect("field arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        self.with(self.field.neg(self.code))
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        -&self
    }
}

/// A quadratic extension `top / base` together with its nontrivial
/// automorphism `eps: x -> x^{|base|}`.
#[derive(Clone, Debug)]
pub struct ExtPair {
    base: Field,
    top: Field,
    /// image in `top` of the class of `x` in `base`
    base_gen_image: u64,
}

impl ExtPair {
    /// Pairs `top = F_{p^{2m}}` with its subfield `F_{p^m}`, the latter given
    /// its canonical modulus and embedded through the smallest root of it.
    pub fn new(top: &Field) -> Result<ExtPair, FieldError> {
        let d = top.degree();
        if !d.is_multiple_of(2) {
            return Err(FieldError::OddDegree(d));
        }
        let base = Field::new(top.characteristic(), d / 2, None)?;
        let base_gen_image = if base.degree() == 1 {
            0
        } else {
            let m = base.modulus();
            (0..top.order())
                .find(|&y| eval_prime_poly(top, m, y) == 0)
                .expect("subfield modulus splits in the extension")
        };
        Ok(ExtPair { base, top: top.clone(), base_gen_image })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn embed(&self, x: &FqElem) -> Result<FqElem, FieldError> {
        if x.field() != &self.base {
            return Err(FieldError::FieldMismatch);
        }
        let digits = self.base.digits(x.code());
        let code = eval_prime_poly(&self.top, &digits, self.base_gen_image);
        self.top.elem(code)
    }

    /// `eps` on raw codes of `top`.
    #[inline]
    pub fn eps_code(&self, a: u64) -> u64 {
        self.top.frobenius_code(a, (self.top.degree() / 2) as i64)
    }

    pub fn eps(&self, x: &FqElem) -> FqElem {
        x.frobenius((self.top.degree() / 2) as i64)
    }

    /// `x * eps(x)`, an element of the fixed field.
    pub fn norm(&self, x: &FqElem) -> FqElem {
        x * &self.eps(x)
    }

    pub fn is_fixed(&self, x: &FqElem) -> bool {
        self.eps(x) == *x
    }

    /// Smallest-code `x` with `x * eps(x) = t`, for `t` nonzero and fixed.
    pub fn solve_norm(&self, t: &FqElem) -> Option<FqElem> {
        if t.is_zero() || !self.is_fixed(t) {
            return None;
        }
        self.top.elements().skip(1).find(|x| self.norm(x) == *t)
    }
}

/// Evaluates a polynomial with prime-field coefficients at a code of `f`.
fn eval_prime_poly(f: &Field, coeffs: &[u64], y: u64) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, y), c % f.characteristic()))
}

/// Given `mu` with `mu * eps(mu) = 1`, returns nonzero `lambda` with
/// `eps(lambda) = mu * lambda`.
///
/// For `mu = 1` the answer is `1`. Otherwise `c` runs over `top` in code
/// order and the first nonzero `c + eps(mu) eps(c)` is returned.
pub fn hilbert90_solve(pair: &ExtPair, mu: &FqElem) -> Result<FqElem, FieldError> {
    if mu.field() != pair.top() {
        return Err(FieldError::FieldMismatch);
    }
    if !pair.norm(mu).is_one() {
        return Err(FieldError::NormNotOne);
    }
    if mu.is_one() {
        return Ok(pair.top().one());
    }
    let eps_mu = pair.eps(mu);
    pair.top()
        .elements()
        .skip(1)
        .map(|c| &c + &(&eps_mu * &pair.eps(&c)))
        .find(|l| !l.is_zero())
        .ok_or(FieldError::NormNotOne)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f169() -> Field {
        Field::new(13, 2, None).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(13, 2, None).unwrap().modulus(), &[2, 0, 1]);
        let f7 = Field::new(7, 1, None).unwrap();
        assert_eq!(f7.order(), 7);
        assert_eq!(f7.header(), "GF 7 1 0 1");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(6, 1, None).unwrap_err(), FieldError::NotPrime(6));
        assert_eq!(Field::new(2, 2, Some(vec![1, 0, 1])).unwrap_err(), FieldError::Reducible(2));
        assert!(matches!(Field::new(2, 2, Some(vec![1, 1])), Err(FieldError::BadModulus(2))));
        assert_eq!(Field::new(2, 0, None).unwrap_err(), FieldError::ZeroDegree);
        assert_eq!(Field::new(2, 41, None).unwrap_err(), FieldError::TooLarge);
    }

    #[test]
    fn explicit_modulus_accepted() {
        let f = Field::new(2, 3, Some(vec![1, 0, 1, 1])).unwrap();
        let x = f.generator();
        // x^3 = x^2 + 1
        assert_eq!(x.pow(3).code(), 0b101);
    }

    #[test]
    fn f8_products() {
        let f = Field::new(2, 3, None).unwrap();
        let x = f.generator();
        let x2 = f.elem(4).unwrap();
        assert_eq!((&x * &x2).code(), 0b011); // x + 1
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert_eq!(f.zero().inv().unwrap_err(), FieldError::ZeroInverse);
        for a in f.elements().skip(2) {
            assert_eq!(a.mult_order().unwrap(), 7);
        }
    }

    #[test]
    fn mismatched_owners() {
        let a = Field::new(2, 3, None).unwrap().one();
        let b = Field::new(3, 1, None).unwrap().one();
        assert_eq!(a.try_add(&b).unwrap_err(), FieldError::FieldMismatch);
    }

    #[test]
    fn quantum_e_cases() {
        let f7 = Field::prime_field(7).unwrap();
        assert_eq!(f7.one().quantum_e().unwrap(), 7);
        let f13 = Field::prime_field(13).unwrap();
        assert_eq!(f13.from_int(-1).quantum_e().unwrap(), 2);
        let f8 = Field::new(2, 3, None).unwrap();
        assert_eq!(f8.generator().quantum_e().unwrap(), 7);
        assert_eq!(f8.zero().quantum_e().unwrap_err(), FieldError::ZeroOrder);
    }

    #[test]
    fn quantum_e_matches_direct_summation() {
        for f in [Field::new(2, 3, None).unwrap(), f169(), Field::prime_field(29).unwrap()] {
            for a in f.elements().skip(1) {
                let direct = (1..=f.order()).find(|&k| quantum_integer(&a, k).is_zero()).unwrap();
                assert_eq!(a.quantum_e().unwrap(), direct, "{a:?}");
            }
        }
    }

    #[test]
    fn order_seven_in_f169_is_inverted_by_frobenius() {
        let f = f169();
        let a = f.element_of_order(7).unwrap();
        assert!(a.generated_subfield_degree() == 2);
        assert_eq!(a.frobenius(1), a.inv().unwrap());
        let s = &a + &a.inv().unwrap();
        assert_eq!(s.generated_subfield_degree(), 1);
        assert_eq!(a.frobenius(0), a);
        assert_eq!(a.frobenius(2), a);
    }

    #[test]
    fn subfield_degree_in_f8() {
        let f = Field::new(2, 3, None).unwrap();
        assert_eq!(f.one().generated_subfield_degree(), 1);
        assert_eq!(f.generator().generated_subfield_degree(), 3);
    }

    #[test]
    fn header_round_trip() {
        let f = Field::new(3, 4, None).unwrap();
        assert_eq!(Field::parse_header(&f.header()).unwrap(), f);
        assert!(Field::parse_header("GF 3 2 1").is_err());
    }

    #[test]
    fn ext_pair_embedding_is_a_field_map() {
        let top = Field::new(2, 4, None).unwrap();
        let pair = ExtPair::new(&top).unwrap();
        let base = pair.base().clone();
        for a in base.elements() {
            let ea = pair.embed(&a).unwrap();
            assert!(pair.is_fixed(&ea));
            for b in base.elements() {
                let eb = pair.embed(&b).unwrap();
                assert_eq!(pair.embed(&(&a * &b)).unwrap(), &ea * &eb);
                assert_eq!(pair.embed(&(&a + &b)).unwrap(), &ea + &eb);
            }
        }
        let fixed = top.elements().filter(|x| pair.is_fixed(x)).count();
        assert_eq!(fixed as u64, base.order());
        assert!(ExtPair::new(&Field::new(2, 3, None).unwrap()).is_err());
    }

    #[test]
    fn hilbert90_exhaustive_f169() {
        let top = f169();
        let pair = ExtPair::new(&top).unwrap();
        let norm_one: Vec<FqElem> = top.elements().skip(1).filter(|m| pair.norm(m).is_one()).collect();
        assert_eq!(norm_one.len(), 14);
        for mu in &norm_one {
            let lambda = hilbert90_solve(&pair, mu).unwrap();
            assert!(!lambda.is_zero());
            assert_eq!(pair.eps(&lambda), mu * &lambda);
            // brute-force oracle: some lambda exists
            assert!(top.elements().skip(1).any(|l| pair.eps(&l) == mu * &l));
        }
        assert_eq!(hilbert90_solve(&pair, &top.one()).unwrap(), top.one());
        let bad = top.from_int(2);
        assert_eq!(hilbert90_solve(&pair, &bad).unwrap_err(), FieldError::NormNotOne);
    }

    #[test]
    fn hilbert90_for_a_coboundary() {
        let top = Field::new(3, 4, None).unwrap();
        let pair = ExtPair::new(&top).unwrap();
        let t = top.elem(17).unwrap();
        let mu = &pair.eps(&t) / &t;
        let lambda = hilbert90_solve(&pair, &mu).unwrap();
        assert_eq!(pair.eps(&lambda), &mu * &lambda);
    }

    #[test]
    fn polynomial_path_matches_tables() {
        // 3^11 > 2^16 takes the untabled path
        let big = Field::new(3, 11, None).unwrap();
        let a = big.elem(12345).unwrap();
        let b = big.elem(98765).unwrap();
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        assert_eq!(a.pow(big.order() - 1), big.one());
        assert_eq!(a.frobenius(11), a);
    }
}
