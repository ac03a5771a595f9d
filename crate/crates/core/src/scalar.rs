//! Scalar fields used throughout the engine.
//!
//! Two implementations exist: [`Rational`] (exact, the default) and
//! [`Approx`] (an `f64` whose zero tests honour a process-wide tolerance).

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Default tolerance for [`Approx`].
pub const DEFAULT_EPSILON: f64 = 1e-10;

static EPSILON_BITS: AtomicU64 = AtomicU64::new(0x3DDB_7CDF_D9D7_BDBB);

/// Sets the tolerance used by every [`Approx`] zero test.
pub fn set_float_epsilon(eps: f64) -> Result<()> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::InvalidInput(format!("epsilon must be positive, got {eps}")));
    }
    EPSILON_BITS.store(eps.to_bits(), AtomicOrdering::Relaxed);
    Ok(())
}

/// Current [`Approx`] tolerance.
pub fn float_epsilon() -> f64 {
    f64::from_bits(EPSILON_BITS.load(AtomicOrdering::Relaxed))
}

/// Ordered field with the handful of extras the engine needs.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for exact arithmetic.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Zero test; tolerance-aware in float mode.
    fn is_zero(&self) -> bool;
    /// Parses `"p/q"`, an integer, or a decimal such as `"-1.25e-3"`.
    fn parse(s: &str) -> Result<Self>;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    /// Sign as -1, 0 or 1, with zero decided by [`Scalar::is_zero`].
    fn sign(&self) -> i32 {
        if self.is_zero() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }

    fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Simplest exact value in `[lo, hi]`, when the field has one.
    fn simplest_between(_lo: &Self, _hi: &Self) -> Option<Self> {
        None
    }

    /// Positive factor that normalizes a nonzero coefficient list: integer
    /// and primitive for exact fields, unit leading coefficient otherwise.
    fn normalizer(coeffs: &[Self]) -> Self {
        match coeffs.iter().rev().find(|c| !c.is_zero()) {
            Some(l) => Self::one() / l.abs(),
            None => Self::one(),
        }
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b < a {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }

    /// Equality under the scalar's zero test.
    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).unwrap_or_else(Zero::zero)
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn parse(s: &str) -> Result<Self> {
        parse_rational(s)
    }
    fn normalizer(coeffs: &[Self]) -> Self {
        use num::Integer;
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in coeffs.iter().filter(|c| !Zero::is_zero(*c)) {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        if Zero::is_zero(&num) {
            return <Rational as One>::one();
        }
        Rational::new(den, num)
    }

    fn simplest_between(lo: &Self, hi: &Self) -> Option<Self> {
        Some(simplest_rational(lo, hi))
    }
    fn sign(&self) -> i32 {
        if Zero::is_zero(self) {
            0
        } else if Signed::is_positive(self) {
            1
        } else {
            -1
        }
    }
}

/// The rational of smallest denominator in the closed interval `[lo, hi]`.
fn simplest_rational(lo: &Rational, hi: &Rational) -> Rational {
    let zero: Rational = Zero::zero();
    if lo > hi {
        return simplest_rational(hi, lo);
    }
    if *lo <= zero && zero <= *hi {
        return zero;
    }
    if *hi < zero {
        return -simplest_rational(&-hi.clone(), &-lo.clone());
    }
    let f = lo.floor();
    if f == *lo {
        return f;
    }
    let next = f.clone() + <Rational as One>::one();
    if next <= *hi {
        return next;
    }
    let inner = simplest_rational(&(hi.clone() - f.clone()).recip(), &(lo.clone() - f.clone()).recip());
    f + inner.recip()
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    if let Some(x) = ToPrimitive::to_f64(q) {
        if x.is_finite() {
            return x;
        }
    }
    // Scale huge numerators and denominators together before converting.
    let n = q.numer();
    let d = q.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = n >> shift;
    let d = d >> shift;
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if b != 0.0 => a / b,
        _ => f64::NAN,
    }
}

/// Parses an exact rational from `"p/q"`, an integer, or a decimal literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational scalar: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if Zero::is_zero(&q) {
            return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    if neg {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Floating scalar with tolerance-aware zero tests.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default)]
pub struct Approx(pub f64);

impl Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_sig(self.0, 12))
    }
}

macro_rules! approx_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr for Approx {
            type Output = Approx;
            fn $m(self, rhs: Approx) -> Approx {
                Approx(self.0 $op rhs.0)
            }
        }
    };
}
approx_binop!(Add, add, +);
approx_binop!(Sub, sub, -);
approx_binop!(Mul, mul, *);
approx_binop!(Div, div, /);

impl Neg for Approx {
    type Output = Approx;
    fn neg(self) -> Approx {
        Approx(-self.0)
    }
}

impl Scalar for Approx {
    const EXACT: bool = false;

    fn zero() -> Self {
        Approx(0.0)
    }
    fn one() -> Self {
        Approx(1.0)
    }
    fn from_i64(n: i64) -> Self {
        Approx(n as f64)
    }
    fn from_f64(x: f64) -> Self {
        Approx(x)
    }
    fn to_f64(&self) -> f64 {
        self.0
    }
    fn is_zero(&self) -> bool {
        self.0.abs() <= float_epsilon()
    }
    fn parse(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        Ok(Approx(ratio_to_f64(&q)))
    }
}

/// Formats `x` with `sig` significant digits, plain decimal where sensible.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        let s = format!("{x:.decimals$}");
        trim_zeros(&s)
    } else {
        let s = format!("{x:.prec$e}", prec = sig - 1);
        match s.split_once('e') {
            Some((m, e)) => format!("{}e{}", trim_zeros(m), e),
            None => s,
        }
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        let t = s.trim_end_matches('0').trim_end_matches('.');
        if t == "-0" {
            "0".to_string()
        } else {
            t.to_string()
        }
    } else {
        s.to_string()
    }
}

/// Total order helper for sorting scalars.
pub fn cmp_scalar<K: Scalar>(a: &K, b: &K) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}
