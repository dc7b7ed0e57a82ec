//! Number kernels. [`Rational`] is exact and used for certification,
//! [`Float`] is a finite `f64` used for speed. Geometry is generic over
//! the [`Scalar`] trait.
//!
//! Hot loops do not work on `Scalar` values directly. A whole point set is
//! first *lifted* to a common scale (integers over a shared denominator for
//! rationals, the identity for floats) so the inner loops only add, subtract
//! and compare.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Backend {
    #[serde(rename = "rational")]
    Rational,
    #[serde(rename = "float64")]
    Float64,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float64 => "float64",
        }
    }

    pub fn is_exact(self) -> bool {
        self == Backend::Rational
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "exact" => Ok(Backend::Rational),
            "float64" | "float" => Ok(Backend::Float64),
            other => Err(Error::InvalidParameter(format!("unknown backend {other:?}"))),
        }
    }
}

/// Values living in a common scale: `value = lifted * unit` for coordinates,
/// `value = lifted * unit^2` for products of two coordinates.
pub trait LiftedValue:
    Clone
    + PartialOrd
    + fmt::Debug
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
{
    fn zero() -> Self;
    fn dot(a: &[Self], b: &[Self]) -> Self;
    fn squared_distance(a: &[Self], b: &[Self]) -> Self;
}

impl LiftedValue for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }

    fn dot(a: &[Self], b: &[Self]) -> Self {
        let mut acc = <BigInt as Zero>::zero();
        for (x, y) in a.iter().zip(b) {
            acc += x * y;
        }
        acc
    }

    fn squared_distance(a: &[Self], b: &[Self]) -> Self {
        let mut acc = <BigInt as Zero>::zero();
        for (x, y) in a.iter().zip(b) {
            let diff = x - y;
            acc += &diff * &diff;
        }
        acc
    }
}

impl LiftedValue for f64 {
    fn zero() -> Self {
        0.0
    }

    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    fn squared_distance(a: &[Self], b: &[Self]) -> Self {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let diff = x - y;
                diff * diff
            })
            .sum()
    }
}

pub trait Scalar:
    Clone
    + Ord
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Serialize
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const BACKEND: Backend;
    type Lifted: LiftedValue;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// `num / den`; panics if `den == 0`.
    fn ratio(num: i64, den: i64) -> Self;
    fn parse(text: &str) -> Result<Self>;
    fn render(&self) -> String;
    fn to_f64(&self) -> f64;
    fn checked_div(&self, rhs: &Self) -> Result<Self>;

    /// Smallest non-negative integer `k` with `k^2 >= self`.
    fn ceil_sqrt(&self) -> Self;
    /// Largest power of two not exceeding `self`, or `None` when `self <= 0`
    /// or the result is not representable.
    fn floor_pow2(&self) -> Option<Self>;
    /// Size of the representation in bits (zero for floats).
    fn precision_bits(&self) -> u64;

    /// Lift every value onto a shared scale. Returns the lifted values and
    /// the unit.
    fn lift(values: &[&Self]) -> (Vec<Self::Lifted>, Self);
    /// `lifted * unit_sq`.
    fn unlift(lifted: &Self::Lifted, unit_sq: &Self) -> Self;
    /// Largest lifted value `t` with `t * unit_sq <= bound`, used to compare
    /// lifted values against a threshold in the original scale.
    fn lifted_floor(bound: &Self, unit_sq: &Self) -> Self::Lifted;

    /// Strict margin used when the caller does not pick one.
    fn default_strict_margin(squared_diameter: &Self) -> Self;

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn min_of(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }
}

pub fn scalar_parse<S: Scalar>(text: &str) -> Result<S> {
    S::parse(text)
}

pub fn scalar_cmp<S: Scalar>(x: &S, y: &S) -> Ordering {
    x.cmp(y)
}

/// Exact rational, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_big(value: BigRational) -> Self {
        Rational(value)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn into_big(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for Rational {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_str(&self.render())
    }
}

struct ScalarVisitor<S>(std::marker::PhantomData<S>);

impl<S: Scalar> serde::de::Visitor<'_> for ScalarVisitor<S> {
    type Value = S;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a number or a \"p/q\" string")
    }

    fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<S, E> {
        S::parse(v).map_err(E::custom)
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<S, E> {
        S::parse(&v.to_string()).map_err(E::custom)
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<S, E> {
        S::parse(&v.to_string()).map_err(E::custom)
    }

    // JSON numbers reach us as the nearest f64; its shortest decimal form
    // is the literal the file most likely held.
    fn visit_f64<E: serde::de::Error>(self, v: f64) -> std::result::Result<S, E> {
        S::parse(&format!("{v:?}")).map_err(E::custom)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor(std::marker::PhantomData))
    }
}

impl<'de> Deserialize<'de> for Float {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(ScalarVisitor(std::marker::PhantomData))
    }
}

fn parse_integer(text: &str, whole: &str) -> Result<BigInt> {
    let digits = text.strip_prefix(['+', '-']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::MalformedLiteral(whole.to_string()));
    }
    text.trim_start_matches('+')
        .parse::<BigInt>()
        .map_err(|_| Error::MalformedLiteral(whole.to_string()))
}

/// Decimal literal `[-+]digits[.digits][e[-+]digits]`, parsed losslessly.
fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::MalformedLiteral(text.to_string());
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(at) => {
            let exp = &text[at + 1..];
            let digits = exp.strip_prefix(['+', '-']).unwrap_or(exp);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let exp: i64 = exp.trim_start_matches('+').parse().map_err(|_| bad())?;
            (&text[..at], exp)
        }
        None => (text, 0),
    };
    let (negative, unsigned) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = match unsigned.split_once('.') {
        Some((i, f)) => (i, f),
        None => (unsigned, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i64;
    // Refuse absurd exponents rather than allocating huge powers of ten.
    if scale.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10u32);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    Ok(if scale >= 0 {
        BigRational::from_integer(num * pow)
    } else {
        BigRational::new(num, pow)
    })
}

fn parse_rational_literal(text: &str) -> Result<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let num = parse_integer(p.trim(), text)?;
        let den = parse_integer(q.trim(), text)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(text)
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $op:tt) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                $ty::wrap(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                $ty::wrap(&self.0 $op &rhs.0)
            }
        }
    };
}

impl Rational {
    fn wrap(value: BigRational) -> Self {
        Rational(value)
    }
}

forward_binop!(Rational, Add, add, +);
forward_binop!(Rational, Sub, sub, -);
forward_binop!(Rational, Mul, mul, *);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

fn bits(n: &BigInt) -> i64 {
    n.bits() as i64
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;
    type Lifted = BigInt;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(num.into(), den.into()))
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational_literal(text).map(Rational)
    }

    fn render(&self) -> String {
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn ceil_sqrt(&self) -> Self {
        if !self.0.is_positive() {
            return Self::zero();
        }
        let c = self.0.ceil().to_integer();
        let mut k = c.sqrt();
        if &k * &k < c {
            k += 1;
        }
        Rational(BigRational::from_integer(k))
    }

    fn floor_pow2(&self) -> Option<Self> {
        if !self.0.is_positive() {
            return None;
        }
        let two = BigRational::from_integer(2.into());
        // 2^(e-1) <= self < 2^(e+1) for this estimate; walk to the exact power.
        let e = bits(self.0.numer()) - bits(self.0.denom());
        let mut p = pow2(e);
        while p > self.0 {
            p /= &two;
        }
        while &p * &two <= self.0 {
            p *= &two;
        }
        Some(Rational(p))
    }

    fn precision_bits(&self) -> u64 {
        self.0.numer().bits().max(self.0.denom().bits())
    }

    fn lift(values: &[&Self]) -> (Vec<BigInt>, Self) {
        let mut common = BigInt::one();
        for v in values {
            let d = v.0.denom();
            if !(&common % d).is_zero() {
                common = common.lcm(d);
            }
        }
        let lifted = values
            .iter()
            .map(|v| v.0.numer() * (&common / v.0.denom()))
            .collect();
        let unit = Rational(BigRational::new(BigInt::one(), common));
        (lifted, unit)
    }

    fn unlift(lifted: &BigInt, unit_sq: &Self) -> Self {
        Rational(BigRational::from_integer(lifted.clone()) * &unit_sq.0)
    }

    fn lifted_floor(bound: &Self, unit_sq: &Self) -> BigInt {
        (&bound.0 / &unit_sq.0).floor().to_integer()
    }

    fn default_strict_margin(_squared_diameter: &Self) -> Self {
        Self::zero()
    }
}

fn pow2(e: i64) -> BigRational {
    let p = num_traits::pow(BigInt::from(2u32), e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational(v)
    }
}

/// A finite `f64`. `-0.0` is normalised to `0.0` so that equality and the
/// total order agree with numeric comparison.
///
/// Arithmetic that overflows to infinity panics, like integer overflow.
#[derive(Clone, Copy)]
pub struct Float(f64);

impl Float {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("{value}")));
        }
        Ok(Float(if value == 0.0 { 0.0 } else { value }))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    fn wrap(value: f64) -> Self {
        match Float::new(value) {
            Ok(f) => f,
            Err(_) => panic!("float arithmetic left the finite range"),
        }
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl Eq for Float {}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl std::hash::Hash for Float {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Serialize for Float {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        s.serialize_f64(self.0)
    }
}

forward_binop!(Float, Add, add, +);
forward_binop!(Float, Sub, sub, -);
forward_binop!(Float, Mul, mul, *);

impl Neg for Float {
    type Output = Float;
    fn neg(self) -> Float {
        Float::wrap(-self.0)
    }
}

impl Scalar for Float {
    const BACKEND: Backend = Backend::Float64;
    type Lifted = f64;

    fn zero() -> Self {
        Float(0.0)
    }

    fn one() -> Self {
        Float(1.0)
    }

    fn from_int(n: i64) -> Self {
        Float(n as f64)
    }

    fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Float::wrap(num as f64 / den as f64)
    }

    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.contains('/') {
            let r = parse_rational_literal(text)?;
            return Float::new(r.to_f64().unwrap_or(f64::NAN))
                .map_err(|_| Error::NonFinite(text.to_string()));
        }
        let lower = text.to_ascii_lowercase();
        if lower.contains("inf") || lower.contains("nan") {
            return Err(Error::NonFinite(text.to_string()));
        }
        // Same grammar as the exact backend, then nearest f64.
        parse_decimal(text)?;
        let value: f64 = text
            .parse()
            .map_err(|_| Error::MalformedLiteral(text.to_string()))?;
        Float::new(value).map_err(|_| Error::NonFinite(text.to_string()))
    }

    fn render(&self) -> String {
        format!("{:?}", self.0)
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0 == 0.0 {
            return Err(Error::DivisionByZero);
        }
        Float::new(self.0 / rhs.0)
    }

    fn ceil_sqrt(&self) -> Self {
        if self.0 <= 0.0 {
            return Float(0.0);
        }
        let mut k = self.0.sqrt().ceil();
        while k > 0.0 && (k - 1.0) * (k - 1.0) >= self.0 {
            k -= 1.0;
        }
        while k * k < self.0 {
            k += 1.0;
        }
        Float(k)
    }

    fn floor_pow2(&self) -> Option<Self> {
        if self.0 <= 0.0 {
            return None;
        }
        if self.0.is_normal() {
            const EXPONENT: u64 = 0x7ff0_0000_0000_0000;
            return Some(Float(f64::from_bits(self.0.to_bits() & EXPONENT)));
        }
        let mut p = f64::MIN_POSITIVE;
        while p > self.0 {
            p /= 2.0;
        }
        Some(Float(p))
    }

    fn precision_bits(&self) -> u64 {
        0
    }

    fn lift(values: &[&Self]) -> (Vec<f64>, Self) {
        (values.iter().map(|v| v.0).collect(), Float(1.0))
    }

    fn unlift(lifted: &f64, unit_sq: &Self) -> Self {
        Float::wrap(lifted * unit_sq.0)
    }

    fn lifted_floor(bound: &Self, unit_sq: &Self) -> f64 {
        bound.0 / unit_sq.0
    }

    fn default_strict_margin(squared_diameter: &Self) -> Self {
        Float::wrap(1e-9 * (1.0 + squared_diameter.0))
    }
}

impl TryFrom<f64> for Float {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Float::new(value)
    }
}

/// Bits of the sign-magnitude encoding, used for size guards.
pub fn bigint_bits(n: &BigInt) -> u64 {
    match n.sign() {
        Sign::NoSign => 0,
        _ => n.bits(),
    }
}
