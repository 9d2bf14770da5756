//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`CycNum`] stores its level `N` and its coordinates in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` reduced modulo the `N`-th cyclotomic polynomial.
//! Values at different levels can be mixed freely: the operands are lifted
//! to the least common multiple of their levels first. Rationals are treated
//! as living at every level, so multiplying by a rational never raises a
//! level.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic literal error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Per-level tables: `Φ_N` and the reductions of `x^j` for `0 <= j < N`.
struct LevelData {
    n: u32,
    phi: usize,
    modulus: Vec<i64>,
    powers: Vec<Vec<i64>>,
}

fn level_cache() -> &'static Mutex<HashMap<u32, Arc<LevelData>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<LevelData>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn level_data(n: u32) -> Arc<LevelData> {
    assert!(n >= 1, "cyclotomic level must be positive");
    if let Some(d) = level_cache().lock().unwrap().get(&n) {
        return Arc::clone(d);
    }
    let modulus = cyclotomic_polynomial(n);
    let phi = modulus.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic modulus
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for (i, c) in cur.iter_mut().enumerate() {
                *c -= top * modulus[i];
            }
        }
    }
    let data = Arc::new(LevelData {
        n,
        phi,
        modulus,
        powers,
    });
    level_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&data));
    data
}

/// Integer coefficients (low degree first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = exact_monic_div(&num, &den);
        }
    }
    num
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    level: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: Rational) -> Self {
        CycNum {
            level: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `ζ_N^k`, reduced to canonical form.
    pub fn root_of_unity(k: i64, n: u32) -> Self {
        let data = level_data(n);
        let e = k.rem_euclid(n as i64) as usize;
        CycNum {
            level: n,
            coeffs: data.powers[e]
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// Builds `Σ coeffs[k] ζ_N^k` for an arbitrary-length coefficient list.
    pub fn from_power_sum(coeffs: &[Rational], n: u32) -> Self {
        let data = level_data(n);
        let mut out = vec![Rational::zero(); data.phi];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[k % n as usize]) {
                if *p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(*p));
                }
            }
        }
        CycNum {
            level: n,
            coeffs: out,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.is_rational()
    }

    /// The rational value, if this number is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// The integer value, if this number is a rational integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Re-expresses the number at a level `m` divisible by its own level.
    pub fn lift_to(&self, m: u32) -> CycNum {
        if m == self.level {
            return self.clone();
        }
        if self.is_rational() {
            let mut coeffs = vec![Rational::zero(); level_data(m).phi];
            coeffs[0] = self.coeffs[0].clone();
            return CycNum { level: m, coeffs };
        }
        assert!(
            m.is_multiple_of(self.level),
            "cannot lift level {} to {}",
            self.level,
            m
        );
        let step = (m / self.level) as usize;
        let data = level_data(m);
        let mut out = vec![Rational::zero(); data.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[(j * step) % m as usize]) {
                if *p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(*p));
                }
            }
        }
        CycNum {
            level: m,
            coeffs: out,
        }
    }

    fn common_level(&self, other: &CycNum) -> u32 {
        if self.level == other.level {
            self.level
        } else if self.is_rational() {
            other.level
        } else if other.is_rational() {
            self.level
        } else {
            self.level.lcm(&other.level)
        }
    }

    pub fn add_ref(&self, other: &CycNum) -> CycNum {
        let l = self.common_level(other);
        let a = self.lift_to(l);
        let b = other.lift_to(l);
        CycNum {
            level: l,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub_ref(&self, other: &CycNum) -> CycNum {
        self.add_ref(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> CycNum {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul_ref(&self, other: &CycNum) -> CycNum {
        if self.is_rational() {
            if self.coeffs[0].is_one() {
                return other.clone();
            }
            return other.scale(&self.coeffs[0]);
        }
        if other.is_rational() {
            if other.coeffs[0].is_one() {
                return self.clone();
            }
            return self.scale(&other.coeffs[0]);
        }
        let l = self.common_level(other);
        let a = self.lift_to(l);
        let b = other.lift_to(l);
        let data = level_data(l);
        let mut full = vec![Rational::zero(); 2 * data.phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<Rational> = full[..data.phi].to_vec();
        for (k, c) in full.iter().enumerate().skip(data.phi) {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[k % data.n as usize]) {
                if *p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(*p));
                }
            }
        }
        CycNum {
            level: l,
            coeffs: out,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_N`.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(CycNum {
                level: self.level,
                coeffs: {
                    let mut v = vec![Rational::zero(); self.coeffs.len()];
                    v[0] = self.coeffs[0].recip();
                    v
                },
            });
        }
        let data = level_data(self.level);
        let modulus: Vec<Rational> = data
            .modulus
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_N is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let inv: Vec<Rational> = s0.iter().map(|x| x * &c).collect();
        Ok(CycNum::from_power_sum(&inv, self.level))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Complex conjugation: the Galois automorphism `ζ_N ↦ ζ_N^{N-1}`.
    pub fn conj(&self) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let data = level_data(self.level);
        let n = data.n as usize;
        let mut out = vec![Rational::zero(); data.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, p) in out.iter_mut().zip(&data.powers[(n - j) % n]) {
                if *p != 0 {
                    *o += c * Rational::from_integer(BigInt::from(*p));
                }
            }
        }
        CycNum {
            level: self.level,
            coeffs: out,
        }
    }

    /// True iff `a · conj(a) = 1` exactly.
    pub fn is_modulus_one(&self) -> bool {
        self.mul_ref(&self.conj()).is_one()
    }

    /// Value under the principal embedding `ζ_N ↦ e^{2πi/N}`, rounded to
    /// `precision` decimal digits (at most 15). Diagnostics only.
    pub fn approx_complex(&self, precision: u32) -> Complex64 {
        let n = self.level as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * PI * j as f64 / n;
            z += Complex64::new(v * ang.cos(), v * ang.sin());
        }
        let scale = 10f64.powi(precision.min(15) as i32);
        let round = |x: f64| {
            let r = (x * scale).round() / scale;
            if r == 0.0 {
                0.0
            } else {
                r
            }
        };
        Complex64::new(round(z.re), round(z.im))
    }

    /// If the number is a root of unity, returns `(k, m)` with value `ζ_m^k`,
    /// `m` the multiplicative order and `0 <= k < m` coprime to `m`.
    pub fn root_of_unity_exponent(&self) -> Option<(u32, u32)> {
        let m = if self.is_rational() {
            2
        } else {
            self.level.lcm(&2)
        };
        (0..m)
            .find(|&k| *self == CycNum::root_of_unity(k as i64, m))
            .map(|k| {
                let g = k.gcd(&m);
                (k / g, m / g)
            })
    }

    /// Total order used for deterministic sorting: compares coefficient vectors
    /// at the common level.
    pub fn canonical_cmp(&self, other: &CycNum) -> Ordering {
        let l = self.common_level(other);
        let a = self.lift_to(l);
        let b = other.lift_to(l);
        a.coeffs.cmp(&b.coeffs)
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.level == other.level {
            return self.coeffs == other.coeffs;
        }
        let l = self.common_level(other);
        self.lift_to(l).coeffs == other.lift_to(l).coeffs
    }
}

impl Eq for CycNum {}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$inner(rhs)
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                self.$inner(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        self.neg_ref()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        CycNum::from_rational(r)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical literal: `c0+c1*z^1+…@N`, or a bare rational.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_rational(&self.coeffs[0]));
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if k == 0 {
                out.push_str(&fmt_rational(&abs));
            } else {
                if !abs.is_one() {
                    out.push_str(&fmt_rational(&abs));
                    out.push('*');
                }
                out.push_str(&format!("z^{k}"));
            }
        }
        write!(f, "{}@{}", out, self.level)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for CycNum {
    type Err = CycError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_literal(s)
    }
}

// ---------------------------------------------------------------------------
// Literal grammar
//
//   expr   := term (('+' | '-') term)* ['@' int]
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | atom
//   atom   := int | 'z' ['^' ['-'] int] ['@' int] | '(' expr ')'
//
// A `z` without its own `@N` takes the single level used elsewhere in the
// literal (including a trailing `@N`).
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum Ast {
    Int(BigInt),
    Zeta {
        exp: i64,
        level: Option<u32>,
        pos: usize,
    },
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>, usize),
}

struct LitParser<'a> {
    src: &'a [u8],
    pos: usize,
    levels: Vec<u32>,
}

impl<'a> LitParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CycError> {
        Err(CycError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<BigInt, CycError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<i64, CycError> {
        let v = self.int()?;
        match v.to_i64() {
            Some(x) => Ok(x),
            None => self.err("integer too large"),
        }
    }

    fn level(&mut self) -> Result<u32, CycError> {
        let v = self.small_int()?;
        if v < 1 || v > u32::MAX as i64 {
            return self.err("level must be a positive integer");
        }
        self.levels.push(v as u32);
        Ok(v as u32)
    }

    fn expr(&mut self) -> Result<Ast, CycError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(op @ (b'+' | b'-')) => {
                    let pos = self.pos;
                    self.pos += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Bin(op as char, Box::new(lhs), Box::new(rhs), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, CycError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(op @ (b'*' | b'/')) => {
                    let pos = self.pos;
                    self.pos += 1;
                    let rhs = self.unary()?;
                    lhs = Ast::Bin(op as char, Box::new(lhs), Box::new(rhs), pos);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, CycError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Ast, CycError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'z') => {
                let pos = self.pos;
                self.pos += 1;
                let mut exp = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    exp = self.small_int()?;
                    if neg {
                        exp = -exp;
                    }
                }
                let mut level = None;
                if self.peek() == Some(b'@') {
                    self.pos += 1;
                    level = Some(self.level()?);
                }
                Ok(Ast::Zeta { exp, level, pos })
            }
            Some(c) if c.is_ascii_digit() => Ok(Ast::Int(self.int()?)),
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of literal"),
        }
    }
}

fn eval(ast: &Ast, default_level: Option<u32>) -> Result<CycNum, CycError> {
    Ok(match ast {
        Ast::Int(v) => CycNum::from_rational(Rational::from_integer(v.clone())),
        Ast::Zeta { exp, level, pos } => {
            let n = level.or(default_level).ok_or(CycError::Parse {
                pos: *pos,
                msg: "root of unity without an unambiguous level (write z^k@N)".into(),
            })?;
            CycNum::root_of_unity(*exp, n)
        }
        Ast::Neg(a) => eval(a, default_level)?.neg_ref(),
        Ast::Bin(op, a, b, pos) => {
            let x = eval(a, default_level)?;
            let y = eval(b, default_level)?;
            match op {
                '+' => x.add_ref(&y),
                '-' => x.sub_ref(&y),
                '*' => x.mul_ref(&y),
                _ => x.div(&y).map_err(|_| CycError::Parse {
                    pos: *pos,
                    msg: "division by zero".into(),
                })?,
            }
        }
    })
}

/// Parses a cyclotomic literal such as `3/7`, `z^1@4 + 1` or `1+2*z^1-z^3@5`.
pub fn parse_literal(s: &str) -> Result<CycNum, CycError> {
    let mut p = LitParser {
        src: s.as_bytes(),
        pos: 0,
        levels: vec![],
    };
    let ast = p.expr()?;
    if p.peek() == Some(b'@') {
        p.pos += 1;
        p.level()?;
    }
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    let mut levels = p.levels.clone();
    levels.sort_unstable();
    levels.dedup();
    let default_level = if levels.len() == 1 {
        Some(levels[0])
    } else {
        None
    };
    eval(&ast, default_level)
}
