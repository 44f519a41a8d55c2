//! Two-scalar numeric tower: exact rationals of arbitrary magnitude and
//! arbitrary-precision binary floats with correctly rounded arithmetic.
//!
//! Algorithms in this crate are generic over [`Num`]; a whole pipeline runs
//! in one mode. [`Scalar`] is the tagged boundary type used by serialization
//! and the CLI, with checked arithmetic (no implicit coercion between modes).

use crate::error::{Error, Result};
use rug::float::Round;
use rug::ops::{DivAssignRound, Pow};
use rug::{Float, Integer, Rational};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub const MIN_BITS: u32 = 128;
pub const MIN_EMIT_DIGITS: usize = 6;
pub const DEFAULT_BITS: u32 = 512;

/// Arithmetic mode for a pipeline run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericMode {
    Rational,
    Float,
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericMode::Rational => write!(f, "rational"),
            NumericMode::Float => write!(f, "float"),
        }
    }
}

impl FromStr for NumericMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(NumericMode::Rational),
            "float" => Ok(NumericMode::Float),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// Precision settings shared by every command and pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionConfig {
    pub mode: NumericMode,
    pub bits: u32,
    pub emit_digits: usize,
}

impl PrecisionConfig {
    pub fn rational() -> Self {
        PrecisionConfig {
            mode: NumericMode::Rational,
            bits: DEFAULT_BITS,
            emit_digits: 17,
        }
    }

    pub fn float(bits: u32) -> Self {
        PrecisionConfig {
            mode: NumericMode::Float,
            bits,
            emit_digits: 17,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.bits < MIN_BITS {
            return Err(Error::InvalidConfig(format!(
                "float precision must be at least {MIN_BITS} bits, got {}",
                self.bits
            )));
        }
        if self.emit_digits < MIN_EMIT_DIGITS {
            return Err(Error::InvalidConfig(format!(
                "emit_digits must be at least {MIN_EMIT_DIGITS}, got {}",
                self.emit_digits
            )));
        }
        Ok(())
    }
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig::rational()
    }
}

/// Scalar interface the algorithm layer is generic over.
///
/// `Ctx` carries whatever is needed to mint constants: nothing for rationals,
/// the precision in bits for floats. Binary operators take the right operand
/// by reference; a float result keeps the left operand's precision (both
/// operands of one pipeline share it).
pub trait Num:
    Sized
    + Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    type Ctx: Clone + Send + Sync + fmt::Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn from_ratio(ctx: &Self::Ctx, num: i64, den: u64) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self;

    /// The exact value as a rational (floats are dyadic, so this is lossless).
    fn to_rational(&self) -> Rational;

    fn is_zero(&self) -> bool;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Result<Self>;
    fn to_f64(&self) -> f64;

    /// log10 of |self| as an f64, usable far outside f64 range. -inf for zero.
    fn log10_abs(&self) -> f64;

    /// Working precision in bits; `None` in exact rational mode.
    fn precision_bits(&self) -> Option<u32>;

    /// Canonical text form; parsing it back reproduces the value bit-exactly.
    fn canonical_string(&self) -> String;
}

/// Relative agreement at `bits` bits: |a-b| <= 2^-bits * max(|a|,|b|).
/// Exact comparison of the underlying rationals, so it is mode-independent.
pub fn agree_within_bits<T: Num>(a: &T, b: &T, bits: u32) -> bool {
    if a == b {
        return true;
    }
    let ar = a.to_rational();
    let br = b.to_rational();
    let diff = Rational::from(&ar - &br).abs();
    if diff == 0 {
        return true;
    }
    let scale = ar.abs().max(br.abs());
    if scale == 0 {
        return false;
    }
    diff * (Integer::from(1) << bits) <= scale
}

/// Mode tolerance for dual-route comparisons: exact in rational mode, half
/// the working precision in float mode.
pub fn scalars_agree<T: Num>(a: &T, b: &T) -> bool {
    match a.precision_bits() {
        None => a == b,
        Some(bits) => agree_within_bits(a, b, bits / 2),
    }
}

/// Agreement with an absolute floor: exact in rational mode; in float mode
/// |a-b| <= 2^-(bits/2) max(|a|,|b|)  or  |a-b| <= 2^-(bits-64) scale.
/// The floor lets symmetry-forced zeros (where both routes produce opposite
/// rounding noise) compare equal relative to the computation's magnitude.
pub fn values_agree_with_scale<T: Num>(a: &T, b: &T, scale: &T) -> bool {
    match a.precision_bits() {
        None => a == b,
        Some(bits) => {
            if agree_within_bits(a, b, bits / 2) {
                return true;
            }
            let diff = Rational::from(&a.to_rational() - &b.to_rational()).abs();
            let floor = scale.to_rational().abs();
            let shift = bits.saturating_sub(64).max(1);
            diff * (Integer::from(1) << shift) <= floor
        }
    }
}

impl Num for Rational {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn zero(_: &()) -> Self {
        Rational::new()
    }

    fn one(_: &()) -> Self {
        Rational::from(1)
    }

    fn from_i64(_: &(), n: i64) -> Self {
        Rational::from(n)
    }

    fn from_ratio(_: &(), num: i64, den: u64) -> Self {
        Rational::from((num, den))
    }

    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn abs(&self) -> Self {
        Rational::from(self.abs_ref())
    }

    fn sqrt(&self) -> Result<Self> {
        // exact only for perfect squares
        if *self < 0 {
            return Err(Error::RationalSqrt);
        }
        let (num, den) = (self.numer(), self.denom());
        let (sn, rn) = num.clone().sqrt_rem(Integer::new());
        let (sd, rd) = den.clone().sqrt_rem(Integer::new());
        if rn == 0 && rd == 0 {
            Ok(Rational::from((sn, sd)))
        } else {
            Err(Error::RationalSqrt)
        }
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn log10_abs(&self) -> f64 {
        if *self == 0 {
            return f64::NEG_INFINITY;
        }
        let num = self.numer();
        let den = self.denom();
        // significand-and-bit-length split keeps this accurate far outside f64 range
        log10_integer(num) - log10_integer(den)
    }

    fn precision_bits(&self) -> Option<u32> {
        None
    }

    fn canonical_string(&self) -> String {
        self.to_string()
    }
}

fn log10_integer(n: &Integer) -> f64 {
    let bits = n.significant_bits();
    if bits <= 900 {
        return n.to_f64().abs().log10();
    }
    let shift = bits - 64;
    let top = Integer::from(n >> shift);
    top.to_f64().abs().log10() + shift as f64 * std::f64::consts::LOG10_2
}

fn rational_to_f64(q: &Rational) -> f64 {
    let f = Float::with_val(64, q);
    f.to_f64()
}

impl Num for Float {
    type Ctx = u32;

    fn ctx(&self) -> u32 {
        self.prec()
    }

    fn zero(ctx: &u32) -> Self {
        Float::new(*ctx)
    }

    fn one(ctx: &u32) -> Self {
        Float::with_val(*ctx, 1)
    }

    fn from_i64(ctx: &u32, n: i64) -> Self {
        Float::with_val(*ctx, n)
    }

    fn from_ratio(ctx: &u32, num: i64, den: u64) -> Self {
        let mut f = Float::with_val(*ctx, num);
        f.div_assign_round(Float::with_val(*ctx, den), Round::Nearest);
        f
    }

    fn from_rational(ctx: &u32, q: &Rational) -> Self {
        Float::with_val(*ctx, q)
    }

    fn to_rational(&self) -> Rational {
        self.to_rational().expect("finite float")
    }

    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }

    fn abs(&self) -> Self {
        Float::abs(self.clone())
    }

    fn sqrt(&self) -> Result<Self> {
        if *self < 0 {
            return Err(Error::RationalSqrt);
        }
        Ok(Float::sqrt(self.clone()))
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn log10_abs(&self) -> f64 {
        if Float::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        match self.get_exp() {
            Some(e) => {
                // self = m * 2^e with |m| in [1/2, 1)
                let mantissa = Float::with_val(64, self >> e).to_f64();
                mantissa.abs().log10() + e as f64 * std::f64::consts::LOG10_2
            }
            None => f64::NEG_INFINITY,
        }
    }

    fn precision_bits(&self) -> Option<u32> {
        Some(self.prec())
    }

    fn canonical_string(&self) -> String {
        format!("f{}:{}", self.prec(), self.to_string_radix(16, None))
    }
}

/// Tagged scalar for serialization boundaries and checked arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Float(Float),
}

impl Scalar {
    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(Rational::from((num, den))))
    }

    pub fn mode(&self) -> NumericMode {
        match self {
            Scalar::Rational(_) => NumericMode::Rational,
            Scalar::Float(_) => NumericMode::Float,
        }
    }

    fn pair<'a>(&'a self, other: &'a Scalar) -> Result<ScalarPair<'a>> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(ScalarPair::Rational(a, b)),
            (Scalar::Float(a), Scalar::Float(b)) => {
                if a.prec() != b.prec() {
                    return Err(Error::PrecisionMismatch(a.prec(), b.prec()));
                }
                Ok(ScalarPair::Float(a, b))
            }
            _ => Err(Error::MixedMode),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.pair(other)? {
            ScalarPair::Rational(a, b) => Scalar::Rational(Rational::from(a + b)),
            ScalarPair::Float(a, b) => Scalar::Float(Float::with_val(a.prec(), a + b)),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.pair(other)? {
            ScalarPair::Rational(a, b) => Scalar::Rational(Rational::from(a - b)),
            ScalarPair::Float(a, b) => Scalar::Float(Float::with_val(a.prec(), a - b)),
        })
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match self.pair(other)? {
            ScalarPair::Rational(a, b) => Scalar::Rational(Rational::from(a * b)),
            ScalarPair::Float(a, b) => Scalar::Float(Float::with_val(a.prec(), a * b)),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        match self.pair(other)? {
            ScalarPair::Rational(a, b) => {
                if *b == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(Rational::from(a / b)))
            }
            ScalarPair::Float(a, b) => {
                if b.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Float(Float::with_val(a.prec(), a / b)))
            }
        }
    }

    /// Exact value as a rational (dyadic for floats).
    pub fn to_rational(&self) -> Rational {
        match self {
            Scalar::Rational(q) => q.clone(),
            Scalar::Float(f) => f.to_rational().expect("finite float"),
        }
    }

    /// Decimal form with `digits` significant figures, correctly rounded
    /// (ties to even). Small integers print plainly, everything else in
    /// scientific `x.xxE±yy` notation.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        sci_string(&self.to_rational(), digits)
    }

    /// Canonical text: `p/q` (or `n`) in rational mode, a precision-tagged
    /// hexadecimal significand in float mode. [`Scalar::parse_canonical`]
    /// reproduces the value bit-exactly.
    pub fn canonical_string(&self) -> String {
        match self {
            Scalar::Rational(q) => q.canonical_string(),
            Scalar::Float(f) => Num::canonical_string(f),
        }
    }

    pub fn parse_canonical(s: &str) -> Result<Scalar> {
        if let Some(rest) = s.strip_prefix('f') {
            let (prec, digits) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("malformed float scalar `{s}`")))?;
            let prec: u32 = prec
                .parse()
                .map_err(|_| Error::Parse(format!("bad precision in `{s}`")))?;
            let incomplete = Float::parse_radix(digits, 16)
                .map_err(|e| Error::Parse(format!("bad float digits in `{s}`: {e}")))?;
            return Ok(Scalar::Float(Float::with_val(prec, incomplete)));
        }
        let q = Rational::from_str(s).map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))?;
        Ok(Scalar::Rational(q))
    }
}

enum ScalarPair<'a> {
    Rational(&'a Rational, &'a Rational),
    Float(&'a Float, &'a Float),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// Scientific-notation formatter over exact rationals, `digits` significant
/// figures, round-half-to-even. Matches the table style `x.xxE±yy`; zero is
/// `"0"` and small integers print plainly.
pub fn sci_string(q: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if *q == 0 {
        return "0".to_string();
    }
    let ten_pow = Integer::from(10).pow(digits as u32);
    if q.denom() == &1 && q.numer().clone().abs() < ten_pow {
        return q.numer().to_string();
    }
    let neg = *q < 0;
    let num = Rational::from(q.abs_ref());

    // decimal exponent e with 10^e <= num < 10^(e+1)
    let mut e = num.numer().to_string().len() as i64 - num.denom().to_string().len() as i64;
    loop {
        let p = pow10(e);
        if p > num {
            e -= 1;
            continue;
        }
        if pow10(e + 1) <= num {
            e += 1;
            continue;
        }
        break;
    }

    // mantissa integer in [10^(digits-1), 10^digits), rounded half-to-even
    let scaled = num.clone() / pow10(e - digits as i64 + 1);
    let (mut m, rem) = scaled.numer().clone().div_rem(scaled.denom().clone());
    let twice = Rational::from((rem, scaled.denom().clone()));
    if twice > Rational::from((1, 2)) || (twice == Rational::from((1, 2)) && m.is_odd()) {
        m += 1;
    }
    if m == ten_pow {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let mantissa = if digits == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    };
    format!(
        "{}{}E{}{:02}",
        if neg { "-" } else { "" },
        mantissa,
        if e >= 0 { "+" } else { "-" },
        e.abs()
    )
}

fn pow10(e: i64) -> Rational {
    if e >= 0 {
        Rational::from(Integer::from(10).pow(e as u32))
    } else {
        Rational::from((1, Integer::from(10).pow((-e) as u32)))
    }
}

/// Relative closeness for float-mode comparisons: |a-b| <= 2^-tol_bits * max(|a|,|b|, floor).
pub fn within_rel_bits(a: &Float, b: &Float, tol_bits: u32) -> bool {
    let prec = a.prec().max(b.prec());
    let diff = Float::with_val(prec, a - b).abs();
    if diff.is_zero() {
        return true;
    }
    let scale = Float::abs(a.clone()).max(&Float::abs(b.clone()));
    let tol = scale >> tol_bits;
    diff <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d).unwrap()
    }

    #[test]
    fn exact_rational_examples() {
        assert_eq!(r(1, 6).add(&r(-1, 2)).unwrap(), r(-1, 3));
        assert_eq!(r(1, 180).mul(&r(30, 1)).unwrap(), r(1, 6));
    }

    #[test]
    fn float_roundtrip_third() {
        let ctx = 256u32;
        let third = Rational::from((1, 3));
        let f = <Float as Num>::from_rational(&ctx, &third);
        let back = Num::to_rational(&f);
        let err = Rational::from(&back - &third).abs() / third;
        assert!(err < Rational::from((1, Integer::from(1) << 250)));
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(r(-11, 540).to_decimal_string(3), "-2.04E-02");
        assert_eq!(r(0, 1).to_decimal_string(3), "0");
        assert_eq!(r(45389, 3564000).to_decimal_string(3), "1.27E-02");
        assert_eq!(r(1, 1).to_decimal_string(3), "1");
        assert_eq!(r(1, 18).to_decimal_string(3), "5.56E-02");
        assert_eq!(r(1, 2).to_decimal_string(3), "5.00E-01");
    }

    #[test]
    fn checked_op_errors() {
        assert!(matches!(r(1, 2).div(&r(0, 1)), Err(Error::DivisionByZero)));
        let f = Scalar::Float(Float::with_val(128, 1));
        assert!(matches!(r(1, 2).add(&f), Err(Error::MixedMode)));
        let g = Scalar::Float(Float::with_val(256, 1));
        assert!(matches!(f.add(&g), Err(Error::PrecisionMismatch(128, 256))));
    }

    #[test]
    fn canonical_roundtrip() {
        for s in [r(22, 7), r(-45389, 3564000), Scalar::Float(Float::with_val(192, 0.1))] {
            let text = s.canonical_string();
            assert_eq!(Scalar::parse_canonical(&text).unwrap(), s);
        }
    }

    #[test]
    fn log10_far_outside_f64() {
        let ctx = 256u32;
        let mut x = <Float as Num>::from_ratio(&ctx, 1, 10);
        for _ in 0..20 {
            x = x.clone() * &x; // 10^(-2^k)
        }
        let lg = x.log10_abs();
        assert!((lg / -(2f64.powi(20)) - 1.0).abs() < 1e-9);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn rat() -> impl Strategy<Value = Rational> {
            (-200i64..200, 1i64..60).prop_map(|(n, d)| Rational::from((n, d)))
        }

        proptest! {
            #[test]
            fn field_axioms(a in rat(), b in rat(), c in rat()) {
                let ab = Rational::from(&a + &b);
                prop_assert_eq!(ab.clone(), Rational::from(&b + &a));
                prop_assert_eq!(Rational::from(&ab + &c), a.clone() + Rational::from(&b + &c));
                let prod = Rational::from(&a * &b);
                prop_assert_eq!(prod.clone(), Rational::from(&b * &a));
                // distributivity
                prop_assert_eq!(a.clone() * Rational::from(&b + &c),
                    Rational::from(&a * &b) + Rational::from(&a * &c));
                if b != 0 {
                    prop_assert_eq!(Rational::from(&prod / &b), a.clone());
                }
            }

            #[test]
            fn rational_float_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
                let q = Rational::from((n, d));
                let ctx = 192u32;
                let f = <Float as Num>::from_rational(&ctx, &q);
                let back = Num::to_rational(&f);
                if q != 0 {
                    let rel = Rational::from(&back - &q).abs() / q.clone().abs();
                    prop_assert!(rel < Rational::from((1, Integer::from(1) << 190)));
                } else {
                    prop_assert_eq!(back, q);
                }
            }

            #[test]
            fn canonical_parse_roundtrip(n in -100_000i64..100_000, d in 1i64..100_000) {
                let s = Scalar::Rational(Rational::from((n, d)));
                prop_assert_eq!(Scalar::parse_canonical(&s.canonical_string()).unwrap(), s.clone());
                let ctx = 160u32;
                let f = Scalar::Float(<Float as Num>::from_rational(&ctx, &Rational::from((n, d))));
                prop_assert_eq!(Scalar::parse_canonical(&f.canonical_string()).unwrap(), f);
            }
        }
    }
}
