//! Exact real quadratic numbers `(a + b√d)/c`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `(a + b√d)/c` in canonical form: `c > 0`, `d` squarefree and not 1,
/// `d = 0` exactly when `b = 0`, and `gcd(a, b, c) = 1`. Rationals are
/// the values with `d = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticValue {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: u64,
}

impl QuadraticValue {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: u64) -> Result<Self> {
        let c = c.into();
        if c.is_zero() {
            return Err(Error::DomainError("zero denominator".into()));
        }
        Ok(Self::canonical(a.into(), b.into(), c, d))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::canonical(n.into(), BigInt::zero(), BigInt::one(), 0)
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::canonical(r.numer().clone(), BigInt::zero(), r.denom().clone(), 0)
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::canonical(BigInt::zero(), BigInt::one(), BigInt::one(), n)
    }

    fn canonical(mut a: BigInt, mut b: BigInt, mut c: BigInt, mut d: u64) -> Self {
        if d == 0 {
            b = BigInt::zero();
        }
        if !b.is_zero() {
            let (square, free) = split_square(d);
            b *= square;
            d = free;
            if d == 1 {
                a += &b;
                b = BigInt::zero();
            }
        }
        if b.is_zero() {
            d = 0;
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Self { a, b, c, d }
    }

    pub fn parts(&self) -> (&BigInt, &BigInt, &BigInt, u64) {
        (&self.a, &self.b, &self.c, self.d)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            _ => Err(Error::MixedRadicands),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::canonical(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dd = BigInt::from(d);
        Ok(Self::canonical(
            &self.a * &other.a + &self.b * &other.b * &dd,
            &self.a * &other.b + &other.a * &self.b,
            &self.c * &other.c,
            d,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn neg(&self) -> Self {
        Self { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d }
    }

    /// `c / (a + b√d) = c (a − b√d) / (a² − b² d)`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DomainError("inverse of zero".into()));
        }
        let norm = &self.a * &self.a - &self.b * &self.b * BigInt::from(self.d);
        Ok(Self::canonical(&self.c * &self.a, -(&self.c * &self.b), norm, self.d))
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b, self.d)
    }

    /// `⌊x · 10^k⌋`.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(k);
        let base = &self.a * &scale;
        let m = (&self.b * &scale).pow(2) * BigInt::from(self.d);
        let root = m.sqrt();
        let numerator = if !self.b.is_negative() {
            base + &root
        } else if &root * &root == m {
            base - &root
        } else {
            base - &root - 1
        };
        numerator.div_floor(&self.c)
    }

    /// Decimal expansion truncated toward zero after `digits` places.
    pub fn to_decimal(&self, digits: u32) -> String {
        let negative = self.signum() == Ordering::Less;
        let scaled = if negative { self.neg().floor_scaled(digits) } else { self.floor_scaled(digits) };
        let mut s = scaled.to_string();
        let digits = digits as usize;
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().expect("decimal rendering parses")
    }

    /// Rational lower and upper bounds `⌊x 10^k⌋ / 10^k ≤ x < (⌊x 10^k⌋ + 1) / 10^k`.
    pub fn bounds(&self, k: u32) -> (BigRational, BigRational) {
        let f = self.floor_scaled(k);
        let scale = BigInt::from(10u32).pow(k);
        (BigRational::new(f.clone(), scale.clone()), BigRational::new(f + 1, scale))
    }
}

/// `d = s² · f` with `f` squarefree; returns `(s, f)`.
fn split_square(mut d: u64) -> (BigInt, u64) {
    let mut square = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        while d.is_multiple_of(p * p) {
            d /= p * p;
            square *= p;
        }
        p += 1;
    }
    (BigInt::from(square), d)
}

/// Sign of `p + q√d`.
fn sign_of(p: &BigInt, q: &BigInt, d: u64) -> Ordering {
    let sp = p.sign();
    let sq = if d == 0 { Sign::NoSign } else { q.sign() };
    match (sp, sq) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (s, Sign::NoSign) | (Sign::NoSign, s) => to_ordering(s),
        (Sign::Plus, Sign::Plus) => Ordering::Greater,
        (Sign::Minus, Sign::Minus) => Ordering::Less,
        (s, _) => {
            // Opposite signs: the term with the larger square wins.
            let lhs = p * p;
            let rhs = q * q * BigInt::from(d);
            match lhs.cmp(&rhs) {
                Ordering::Equal => Ordering::Equal,
                Ordering::Greater => to_ordering(s),
                Ordering::Less => to_ordering(s).reverse(),
            }
        }
    }
}

fn to_ordering(s: Sign) -> Ordering {
    match s {
        Sign::Plus => Ordering::Greater,
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
    }
}

/// Sign of `u + v` with `u = p + q√d1`, `v = r√d2`: compared through
/// `sign(u)`, `sign(v)` and the sign of `u² − v²`, itself a quadratic in `√d1`.
fn sign_of_mixed(p: &BigInt, q: &BigInt, d1: u64, r: &BigInt, d2: u64) -> Ordering {
    let su = sign_of(p, q, d1);
    let sv = sign_of(&BigInt::zero(), r, d2);
    if sv == Ordering::Equal || su == sv {
        return if su == Ordering::Equal { sv } else { su };
    }
    if su == Ordering::Equal {
        return sv;
    }
    let d1b = BigInt::from(d1);
    let rational = p * p + q * q * &d1b - r * r * BigInt::from(d2);
    let irrational = BigInt::from(2) * p * q;
    match sign_of(&rational, &irrational, d1) {
        Ordering::Equal => Ordering::Equal,
        Ordering::Greater => su,
        Ordering::Less => sv,
    }
}

impl Ord for QuadraticValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // self − other = (A + B√d1 + C√d2) / (c1 c2) with c1 c2 > 0.
        let a = &self.a * &other.c - &other.a * &self.c;
        let b = &self.b * &other.c;
        let c = -(&other.b * &self.c);
        match (self.d, other.d) {
            (d1, d2) if d1 == d2 => sign_of(&a, &(b + c), d1),
            (0, d2) => sign_of(&a, &c, d2),
            (d1, 0) => sign_of(&a, &b, d1),
            (d1, d2) => sign_of_mixed(&a, &b, d1, &c, d2),
        }
    }
}

impl PartialOrd for QuadraticValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticValue {
    /// `(a+b*sqrt(d))/c`, dropping the parts that are 0 or 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        if !self.a.is_zero() || self.b.is_zero() {
            num.push_str(&self.a.to_string());
        }
        if !self.b.is_zero() {
            if self.b.is_negative() {
                num.push('-');
            } else if !num.is_empty() {
                num.push('+');
            }
            let mag = self.b.abs();
            if !mag.is_one() {
                num.push_str(&format!("{mag}*"));
            }
            num.push_str(&format!("sqrt({})", self.d));
        }
        if self.c.is_one() {
            write!(f, "{num}")
        } else if !self.a.is_zero() && !self.b.is_zero() {
            write!(f, "({num})/{}", self.c)
        } else {
            write!(f, "{num}/{}", self.c)
        }
    }
}

impl FromStr for QuadraticValue {
    type Err = Error;

    /// Arithmetic over integers, decimals and `sqrt(n)` (or `√n`), e.g.
    /// `(7+sqrt(13))/6`, `1+sqrt(2)/2`, `1.7072`, or a continued fraction
    /// written `[1; 1, (2, 1)]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('[') {
            let cf: super::ContinuedFraction = s.parse()?;
            return super::cf_exact(&cf);
        }
        let text: String = s.replace('√', "sqrt").chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.s.len() {
            return Err(Error::Parse(format!("unexpected input at {} in {s:?}", p.pos)));
        }
        Ok(v)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QuadraticValue> {
        let mut v = self.term()?;
        loop {
            if self.eat(b'+') {
                v = v.checked_add(&self.term()?)?;
            } else if self.eat(b'-') {
                v = v.checked_sub(&self.term()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<QuadraticValue> {
        let mut v = self.factor()?;
        loop {
            if self.eat(b'*') {
                v = v.checked_mul(&self.factor()?)?;
            } else if self.eat(b'/') {
                v = v.checked_div(&self.factor()?)?;
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<QuadraticValue> {
        if self.eat(b'-') {
            return Ok(self.factor()?.neg());
        }
        if self.eat(b'(') {
            let v = self.expr()?;
            return if self.eat(b')') { Ok(v) } else { Err(Error::Parse("missing ')'".into())) };
        }
        if self.s[self.pos..].starts_with(b"sqrt(") {
            self.pos += 5;
            let n = self.number()?;
            if !n.is_rational() || !n.c.is_one() || n.a.is_negative() {
                return Err(Error::Parse("sqrt takes a non-negative integer".into()));
            }
            if !self.eat(b')') {
                return Err(Error::Parse("missing ')' after sqrt".into()));
            }
            let d = n.a.to_u64().ok_or_else(|| Error::Overflow("radicand".into()))?;
            return Ok(QuadraticValue::sqrt(d));
        }
        self.number()
    }

    fn number(&mut self) -> Result<QuadraticValue> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9' | b'.')) {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        if text.is_empty() {
            return Err(Error::Parse(format!("expected a number at {start}")));
        }
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        let digits = format!("{int}{frac}");
        let numer: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
        let denom = BigInt::from(10u32).pow(frac.len() as u32);
        QuadraticValue::new(numer, 0, denom, 0)
    }
}

impl From<&BigUint> for QuadraticValue {
    fn from(n: &BigUint) -> Self {
        Self::canonical(BigInt::from(n.clone()), BigInt::zero(), BigInt::one(), 0)
    }
}
