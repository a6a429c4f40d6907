//! Exact scalars: rationals, the field Q(√2), and affine polynomials in the
//! bundle parameter `s` with Q(√2) coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not affine: degree {0}")]
    NotAffine(usize),
    #[error("leading coefficient is zero")]
    ZeroLeading,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Integer as a rational.
pub fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let err = || ScalarError::Parse(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// An element `a + b√2` of Q(√2).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field arithmetic on Q(√2) selected by `op`.
pub fn qext_arith(x: &QuadExt, y: &QuadExt, op: ArithOp) -> Result<QuadExt, ScalarError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(ri(n))
    }

    pub fn sqrt2() -> Self {
        QuadExt { a: Rational::zero(), b: Rational::one() }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b }
    }

    /// `a² − 2b²`, the field norm down to Q.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - ri(2) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt { a: &self.a / &n, b: -&self.b / &n })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Sign of the real number `a + b√2`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = ri(2) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadExt { a: &self.a * r, b: &self.b * r }
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt::default()
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt::from_int(1)
    }
}

impl From<Rational> for QuadExt {
    fn from(a: Rational) -> Self {
        QuadExt::from_rational(a)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_int(n)
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        QuadExt { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        if self.b.is_zero() && o.b.is_zero() {
            return QuadExt::from_rational(&self.a * &o.a);
        }
        QuadExt { a: &self.a * &o.a + ri(2) * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a }
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    /// Panics on division by zero; use [`QuadExt::checked_div`] to handle it.
    fn div(self, o: &QuadExt) -> QuadExt {
        self.checked_div(o).expect("QuadExt division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $m(self, o: &QuadExt) -> QuadExt {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $m(self, o: QuadExt) -> QuadExt {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b }
    }
}

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, o: &QuadExt) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, o: &QuadExt) {
        self.a -= &o.a;
        self.b -= &o.b;
    }
}

impl MulAssign<&QuadExt> for QuadExt {
    fn mul_assign(&mut self, o: &QuadExt) {
        *self = &*self * o;
    }
}

impl fmt::Display for QuadExt {
    /// Always the full form `a+b√2` (or `a-b√2`), e.g. `5/2+0√2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}√2", self.a, sign, self.b.abs())
    }
}

impl FromStr for QuadExt {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let t = s.trim();
        let Some(body) = t.strip_suffix("√2") else {
            return Ok(QuadExt::from_rational(parse_rational(t)?));
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .next_back()
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let a = parse_rational(&body[..split])?;
        let b = parse_rational(body[split..].trim_start_matches('+'))?;
        Ok(QuadExt { a, b })
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Polynomial in `s` over Q(√2); coefficient `i` multiplies `s^i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SPoly {
    coeffs: Vec<QuadExt>,
}

impl SPoly {
    pub fn new(mut coeffs: Vec<QuadExt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SPoly { coeffs }
    }

    pub fn constant(c: QuadExt) -> Self {
        SPoly::new(vec![c])
    }

    /// The indeterminate `s`.
    pub fn s() -> Self {
        SPoly::new(vec![QuadExt::zero(), QuadExt::one()])
    }

    /// `c0 + c1·s`.
    pub fn affine(c0: QuadExt, c1: QuadExt) -> Self {
        SPoly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[QuadExt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> QuadExt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, s: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * s + c;
        }
        acc
    }

    pub fn scale(&self, k: &QuadExt) -> Self {
        SPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

impl Zero for SPoly {
    fn zero() -> Self {
        SPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<'a> Add<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn add(self, o: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        SPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn sub(self, o: &SPoly) -> SPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        SPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a SPoly> for &'a SPoly {
    type Output = SPoly;
    fn mul(self, o: &SPoly) -> SPoly {
        if self.is_zero() || o.is_zero() {
            return SPoly::zero();
        }
        let mut out = vec![QuadExt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        SPoly::new(out)
    }
}

impl Add for SPoly {
    type Output = SPoly;
    fn add(self, o: SPoly) -> SPoly {
        &self + &o
    }
}

impl Sub for SPoly {
    type Output = SPoly;
    fn sub(self, o: SPoly) -> SPoly {
        &self - &o
    }
}

impl Mul for SPoly {
    type Output = SPoly;
    fn mul(self, o: SPoly) -> SPoly {
        &self * &o
    }
}

impl Neg for SPoly {
    type Output = SPoly;
    fn neg(self) -> SPoly {
        SPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl AddAssign<&SPoly> for SPoly {
    fn add_assign(&mut self, o: &SPoly) {
        if self.coeffs.len() < o.coeffs.len() {
            self.coeffs.resize(o.coeffs.len(), QuadExt::zero());
        }
        for (c, d) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *c += d;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

/// The unique root of an affine polynomial.
pub fn spoly_root(p: &SPoly) -> Result<QuadExt, ScalarError> {
    match p.coeffs.len() {
        2 => {
            let lead = &p.coeffs[1];
            if lead.is_zero() {
                return Err(ScalarError::ZeroLeading);
            }
            Ok(-(&p.coeffs[0] / lead))
        }
        n => Err(ScalarError::NotAffine(n.saturating_sub(1))),
    }
}

impl fmt::Display for SPoly {
    /// `c0 + c1·s + c2·s^2 …`, each coefficient in `a+b√2` form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "{}", QuadExt::zero());
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, " + {c}·s")?,
                _ => write!(f, " + {c}·s^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SPoly {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let mut coeffs = Vec::new();
        for (i, part) in s.split(" + ").enumerate() {
            let body = match i {
                0 => part,
                1 => part.strip_suffix("·s").ok_or_else(|| ScalarError::Parse(s.into()))?,
                _ => part.strip_suffix(&format!("·s^{i}")).ok_or_else(|| ScalarError::Parse(s.into()))?,
            };
            coeffs.push(body.parse()?);
        }
        Ok(SPoly::new(coeffs))
    }
}

impl Serialize for SPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
