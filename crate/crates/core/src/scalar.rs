//! Standard parts: exact rationals, with a bracketed approximation reserved
//! for irrational powers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::precise::{self, Enclosure, WORK_BITS};

/// Largest number of result bits an exact integer power may produce before
/// the approximate path is taken instead.
const EXACT_POW_BIT_LIMIT: u64 = 1 << 22;

/// Largest binary exponent an approximate power may reach.
const MAX_POW_EXPONENT_BITS: f64 = (1u64 << 20) as f64;

/// Significant digits shown when printing an approximate value.
const APPROX_DIGITS: usize = 50;

/// A real number carried exactly when rational, otherwise as a tight
/// rational enclosure.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Approx(Approx),
}

/// Enclosure `[lo, hi]` of an irrational value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approx {
    lo: BigRational,
    hi: BigRational,
}

impl Approx {
    fn new(lo: BigRational, hi: BigRational) -> Approx {
        debug_assert!(lo <= hi);
        let (lo, hi) = round_outward(lo, hi);
        Approx { lo, hi }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// Half-width of the enclosure.
    pub fn error_bound(&self) -> BigRational {
        (&self.hi - &self.lo) / BigRational::from_integer(2.into())
    }
}

fn magnitude_bits(r: &BigRational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

fn round_to_bits(r: &BigRational, frac_bits: i64, up: bool) -> BigRational {
    let (num, den) = if frac_bits >= 0 {
        (r.numer() << frac_bits as u64, r.denom().clone())
    } else {
        (r.numer().clone(), r.denom() << (-frac_bits) as u64)
    };
    let q = if up {
        -((-num).div_floor(&den))
    } else {
        num.div_floor(&den)
    };
    if frac_bits >= 0 {
        BigRational::new(q, BigInt::one() << frac_bits as u64)
    } else {
        BigRational::from_integer(q << (-frac_bits) as u64)
    }
}

/// Widens `[lo, hi]` to dyadic endpoints with about `WORK_BITS` significant
/// bits so that chained operations do not grow the denominators.
fn round_outward(lo: BigRational, hi: BigRational) -> (BigRational, BigRational) {
    let mag = magnitude_bits(&lo).max(magnitude_bits(&hi));
    let frac_bits = WORK_BITS as i64 - mag;
    let lo = if lo.is_zero() { lo } else { round_to_bits(&lo, frac_bits, false) };
    let hi = if hi.is_zero() { hi } else { round_to_bits(&hi, frac_bits, true) };
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("power base must be positive")]
    NonpositiveBase,
    #[error("invalid number `{0}`")]
    Parse(String),
    #[error("result magnitude out of range")]
    Overflow,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Exact(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Exact(BigRational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(n.into()))
    }

    /// `num / den` in lowest terms. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::Exact(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Exact(r)
    }

    fn from_enclosure(lo: BigRational, hi: BigRational) -> Scalar {
        if lo == hi {
            Scalar::Exact(lo)
        } else {
            Scalar::Approx(Approx::new(lo, hi))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Approx(_) => None,
        }
    }

    pub fn lo(&self) -> &BigRational {
        match self {
            Scalar::Exact(r) => r,
            Scalar::Approx(a) => &a.lo,
        }
    }

    pub fn hi(&self) -> &BigRational {
        match self {
            Scalar::Exact(r) => r,
            Scalar::Approx(a) => &a.hi,
        }
    }

    fn enclosure(&self) -> Enclosure {
        Enclosure {
            lo: self.lo().clone(),
            hi: self.hi().clone(),
        }
    }

    /// Orders two values. Approximate values whose enclosures overlap are
    /// indistinguishable at working precision and compare `Equal`.
    pub fn cmp_value(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.cmp(b),
            _ => {
                if self.hi() < other.lo() {
                    Ordering::Less
                } else if self.lo() > other.hi() {
                    Ordering::Greater
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    /// -1, 0 or 1; an approximate value straddling zero reports 0.
    pub fn signum(&self) -> i8 {
        match self.cmp_value(&Scalar::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.is_one())
    }

    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Exact(r) if r.is_integer())
    }

    pub fn abs(&self) -> Scalar {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Scalar::Approx(a) => a.midpoint().to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (_, Scalar::Exact(b)) if b.is_zero() => Err(ScalarError::DivisionByZero),
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a / b)),
            _ => {
                if other.signum() == 0 {
                    return Err(ScalarError::DivisionByZero);
                }
                let inv = Enclosure {
                    lo: other.hi().recip(),
                    hi: other.lo().recip(),
                };
                let e = self.enclosure().mul(&inv);
                Ok(Scalar::from_enclosure(e.lo, e.hi))
            }
        }
    }

    /// `self ^ exponent` for a positive base.
    ///
    /// Exact when the result is rational and of reasonable size (integer
    /// exponents, perfect roots); otherwise an enclosure.
    pub fn pow(&self, exponent: &Scalar) -> Result<Scalar, ScalarError> {
        if self.signum() <= 0 {
            return Err(ScalarError::NonpositiveBase);
        }
        if exponent.is_zero() || self.is_one() {
            return Ok(Scalar::one());
        }
        if let (Scalar::Exact(base), Scalar::Exact(e)) = (self, exponent) {
            if let Some(r) = exact_pow(base, e) {
                return Ok(Scalar::Exact(r));
            }
        }
        if let (Scalar::Approx(_), Scalar::Exact(e)) = (self, exponent) {
            if e.is_integer() && e.numer().abs() <= BigInt::from(64) {
                let n = e.numer().to_i32().unwrap();
                let (lo, hi) = (self.lo().pow(n), self.hi().pow(n));
                let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
                return Ok(Scalar::from_enclosure(lo, hi));
            }
        }
        // y·log2(x) bounds the binary exponent of the result
        let scale = exponent.to_f64() * self.to_f64().log2();
        if !scale.is_finite() || scale.abs() > MAX_POW_EXPONENT_BITS {
            return Err(ScalarError::Overflow);
        }
        let e = precise::pow(&self.enclosure(), &exponent.enclosure());
        Ok(Scalar::from_enclosure(e.lo, e.hi))
    }

    fn combine(&self, other: &Scalar, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(f(a, b)),
            _ => {
                let c = [
                    f(self.lo(), other.lo()),
                    f(self.lo(), other.hi()),
                    f(self.hi(), other.lo()),
                    f(self.hi(), other.hi()),
                ];
                let lo = c.iter().min().unwrap().clone();
                let hi = c.iter().max().unwrap().clone();
                Scalar::from_enclosure(lo, hi)
            }
        }
    }
}

fn exact_pow(base: &BigRational, e: &BigRational) -> Option<BigRational> {
    let p = e.numer();
    let q = e.denom();
    let root = if q.is_one() {
        base.clone()
    } else {
        let q = q.to_u32()?;
        let n = base.numer();
        let d = base.denom();
        let max_bits = n.bits().max(d.bits());
        if q as u64 > max_bits {
            // only 1 is a perfect q-th power with fewer than q bits
            return None;
        }
        let rn = n.nth_root(q);
        let rd = d.nth_root(q);
        if rn.pow(q) != *n || rd.pow(q) != *d {
            return None;
        }
        BigRational::new(rn, rd)
    };
    let size = root.numer().bits() + root.denom().bits();
    let p_abs = p.abs().to_u64()?;
    if size.saturating_mul(p_abs) > EXACT_POW_BIT_LIMIT {
        return None;
    }
    let p_i32 = i32::try_from(p.to_i64()?).ok()?;
    Some(root.pow(p_i32))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Approx(a), Scalar::Approx(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Exact(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::from_enclosure(self.lo() + rhs.lo(), self.hi() + rhs.hi()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => Scalar::from_enclosure(self.lo() - rhs.hi(), self.hi() - rhs.lo()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx(a) => Scalar::Approx(Approx {
                lo: -&a.hi,
                hi: -&a.lo,
            }),
        }
    }
}

macro_rules! forward_owned {
    ($Tr:ident, $m:ident) => {
        impl $Tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Decimal digits of `r` when its denominator divides a power of ten.
fn terminating_decimal(r: &BigRational) -> Option<String> {
    let mut den = r.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut e2, mut e5) = (0usize, 0usize);
    while den.is_even() {
        den /= &two;
        e2 += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        e5 += 1;
    }
    if !den.is_one() {
        return None;
    }
    let digits = e2.max(e5);
    Some(fixed_decimal(r, digits))
}

/// `r` truncated toward zero to `frac` fractional digits.
fn fixed_decimal(r: &BigRational, frac: usize) -> String {
    let scaled = (r.abs() * BigRational::from_integer(BigInt::from(10).pow(frac as u32))).trunc();
    let mut s = scaled.numer().to_string();
    if frac > 0 {
        if s.len() <= frac {
            s = "0".repeat(frac + 1 - s.len()) + &s;
        }
        s.insert(s.len() - frac, '.');
    }
    if r.is_negative() {
        s.insert(0, '-');
    }
    s
}

fn approx_decimal(a: &Approx) -> String {
    let mid = a.midpoint();
    let int_digits = mid.abs().trunc().numer().to_string().len();
    let int_is_zero = mid.abs() < BigRational::one();
    let frac = if int_is_zero {
        // leading zeros after the point do not count as significant
        let lead = (-magnitude_bits(&mid)).max(0) as usize * 30103 / 100000;
        APPROX_DIGITS + lead
    } else {
        APPROX_DIGITS.saturating_sub(int_digits)
    };
    let s = fixed_decimal(&mid, frac);
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    format!("~{s}")
}

impl fmt::Display for Scalar {
    /// Terminating decimals print as decimals, other rationals as `p/q`,
    /// approximations as `~` followed by the midpoint.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => match terminating_decimal(r) {
                Some(s) => f.write_str(&s),
                None => write!(f, "{}/{}", r.numer(), r.denom()),
            },
            Scalar::Approx(a) => f.write_str(&approx_decimal(a)),
        }
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if body.contains('.') && (frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    let r = BigRational::new(digits, den);
    Some(if neg { -r } else { r })
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `[-]digits[.digits]` and `[-]p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        if let Some((p, q)) = t.split_once('/') {
            let p = parse_decimal(p.trim()).filter(|r| r.is_integer()).ok_or_else(err)?;
            let q = q.trim();
            if q.starts_with('-') {
                return Err(err());
            }
            let q = parse_decimal(q).filter(|r| r.is_integer()).ok_or_else(err)?;
            if q.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Scalar::Exact(p / q))
        } else {
            parse_decimal(t).map(Scalar::Exact).ok_or_else(err)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
}

impl RationalRepr {
    fn from_rational(r: &BigRational) -> Self {
        RationalRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    fn to_rational<E: serde::de::Error>(&self) -> Result<BigRational, E> {
        let n: BigInt = self.num.parse().map_err(E::custom)?;
        let d: BigInt = self.den.parse().map_err(E::custom)?;
        if d.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(BigRational::new(n, d))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Exact(RationalRepr),
    Approx {
        approx: String,
        lo: RationalRepr,
        hi: RationalRepr,
    },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Exact(r) => ScalarRepr::Exact(RationalRepr::from_rational(r)),
            Scalar::Approx(a) => ScalarRepr::Approx {
                approx: approx_decimal(a).trim_start_matches('~').to_string(),
                lo: RationalRepr::from_rational(&a.lo),
                hi: RationalRepr::from_rational(&a.hi),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Exact(r) => Ok(Scalar::Exact(r.to_rational()?)),
            ScalarRepr::Approx { lo, hi, .. } => {
                let lo = lo.to_rational()?;
                let hi = hi.to_rational()?;
                if lo > hi {
                    return Err(serde::de::Error::custom("approx bounds out of order"));
                }
                Ok(Scalar::from_enclosure(lo, hi))
            }
        }
    }
}
