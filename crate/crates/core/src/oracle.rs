//! Concrete interval semantics for mobinads.
//!
//! A mobinad is replaced by small rational intervals around its standard
//! part, the operation is carried out on those intervals as ordinary set
//! arithmetic, and the image is classified back into a mark by looking at
//! which sides of the exact result it reaches. Several `(ε₁, ε₂)` samples
//! are taken so that every ordering of the two perturbations is seen; the
//! final mark is the union over samples.
//!
//! This path is slow and independent of the sign rule in [`crate::arith`],
//! which it is used to check.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::arith::Op;
use crate::mark::{ComponentSet, Mark};
use crate::mobinad::Mobinad;
use crate::scalar::{Scalar, ScalarError};

/// Exponent of the default sample scale `δ = 2^-30`.
pub const BASE_DELTA_EXP: u32 = 30;

/// Images must stay within `2^-WINDOW_EXP · max(1, |s|)` of the standard part.
const WINDOW_EXP: u32 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("divisor interval contains or touches zero")]
    DivisorStraddlesZero,
    #[error("power base interval is not strictly positive")]
    NonpositivePowerBase,
    #[error("cannot classify an empty set")]
    EmptySet,
    #[error("interval image reaches beyond the infinitesimal window")]
    ScaleViolation,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("interval endpoints out of order")]
    InvalidInterval,
    #[error("result magnitude out of range")]
    Overflow,
}

fn from_scalar_error(e: ScalarError) -> OracleError {
    match e {
        ScalarError::DivisionByZero => OracleError::DivisorStraddlesZero,
        ScalarError::NonpositiveBase => OracleError::NonpositivePowerBase,
        ScalarError::Overflow => OracleError::Overflow,
        ScalarError::Parse(_) => OracleError::InvalidInterval,
    }
}

/// Interval with rational endpoints and per-endpoint openness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl RatInterval {
    pub fn new(lo: Scalar, hi: Scalar, lo_open: bool, hi_open: bool) -> Result<Self, OracleError> {
        match lo.cmp_value(&hi) {
            Ordering::Greater => Err(OracleError::InvalidInterval),
            Ordering::Equal if lo_open || hi_open => Err(OracleError::InvalidInterval),
            _ => Ok(RatInterval {
                lo,
                hi,
                lo_open,
                hi_open,
            }),
        }
    }

    pub fn point(a: Scalar) -> Self {
        RatInterval {
            lo: a.clone(),
            hi: a,
            lo_open: false,
            hi_open: false,
        }
    }

    pub fn open(lo: Scalar, hi: Scalar) -> Result<Self, OracleError> {
        RatInterval::new(lo, hi, true, true)
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        let above_lo = match self.lo.cmp_value(v) {
            Ordering::Less => true,
            Ordering::Equal => !self.lo_open,
            Ordering::Greater => false,
        };
        let below_hi = match v.cmp_value(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => !self.hi_open,
            Ordering::Greater => false,
        };
        above_lo && below_hi
    }

    fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
            lo_open: self.hi_open,
            hi_open: self.lo_open,
        }
    }

    /// `{1/y : y ∈ self}`; caller guarantees zero is not in the closure.
    fn recip(&self) -> RatInterval {
        let one = Scalar::one();
        RatInterval {
            lo: one.checked_div(&self.hi).expect("nonzero"),
            hi: one.checked_div(&self.lo).expect("nonzero"),
            lo_open: self.hi_open,
            hi_open: self.lo_open,
        }
    }

    fn corners(&self) -> [(&Scalar, bool); 2] {
        [(&self.lo, !self.lo_open), (&self.hi, !self.hi_open)]
    }
}

/// Perturbation sizes applied to the left and right operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsSample {
    pub eps1: Scalar,
    pub eps2: Scalar,
}

fn pow2_neg(k: u32) -> Scalar {
    Scalar::from_rational(BigRational::new(BigInt::one(), BigInt::one() << k))
}

impl EpsSample {
    /// `{(δ,δ), (δ,δ²), (δ²,δ)}` with `δ = 2^-k`.
    pub fn family(k: u32) -> [EpsSample; 3] {
        let d = pow2_neg(k);
        let d2 = pow2_neg(2 * k);
        [
            EpsSample {
                eps1: d.clone(),
                eps2: d.clone(),
            },
            EpsSample {
                eps1: d.clone(),
                eps2: d2.clone(),
            },
            EpsSample { eps1: d2, eps2: d },
        ]
    }
}

/// Interval representatives of a mobinad for a given ε.
pub fn mu_n(x: &Mobinad, eps: &Scalar) -> Result<Vec<RatInterval>, OracleError> {
    if eps.signum() <= 0 {
        return Err(OracleError::NonPositiveEpsilon);
    }
    let a = &x.value;
    let below = || a - eps;
    let above = || a + eps;
    let iv = |lo: Scalar, hi: Scalar, lo_open: bool, hi_open: bool| RatInterval {
        lo,
        hi,
        lo_open,
        hi_open,
    };
    Ok(match x.mark {
        Mark::Std => vec![RatInterval::point(a.clone())],
        Mark::L => vec![iv(below(), a.clone(), true, true)],
        Mark::L0 => vec![iv(below(), a.clone(), true, false)],
        Mark::R => vec![iv(a.clone(), above(), true, true)],
        Mark::R0 => vec![iv(a.clone(), above(), false, true)],
        Mark::LR => vec![
            iv(below(), a.clone(), true, true),
            iv(a.clone(), above(), true, true),
        ],
        Mark::L0R => vec![iv(below(), above(), true, true)],
    })
}

struct Candidate {
    value: Scalar,
    closed: bool,
}

/// Extreme of a function over the four corners of a box.
///
/// `flat` is the one value the function can take along a whole edge
/// (0 for products, 1 for powers); whether it is attained is decided by
/// `flat_attained` rather than by corner closedness.
fn corner_extreme(
    cands: &[Candidate],
    want_max: bool,
    flat: &Scalar,
    flat_attained: bool,
) -> (Scalar, bool) {
    let mut best = &cands[0];
    for c in &cands[1..] {
        let ord = c.value.cmp_value(&best.value);
        if (want_max && ord == Ordering::Greater) || (!want_max && ord == Ordering::Less) {
            best = c;
        }
    }
    let value = best.value.clone();
    let mut closed = cands
        .iter()
        .any(|c| c.closed && c.value.cmp_value(&value) == Ordering::Equal);
    if value.cmp_value(flat) == Ordering::Equal && flat_attained {
        closed = true;
    }
    (value, closed)
}

fn corner_image(
    a: &RatInterval,
    b: &RatInterval,
    flat: Scalar,
    flat_attained: bool,
    f: impl Fn(&Scalar, &Scalar) -> Result<Scalar, OracleError>,
) -> Result<RatInterval, OracleError> {
    let mut cands = Vec::with_capacity(4);
    for (x, cx) in a.corners() {
        for (y, cy) in b.corners() {
            cands.push(Candidate {
                value: f(x, y)?,
                closed: cx && cy,
            });
        }
    }
    let (lo, lo_closed) = corner_extreme(&cands, false, &flat, flat_attained);
    let (hi, hi_closed) = corner_extreme(&cands, true, &flat, flat_attained);
    if lo.cmp_value(&hi) == Ordering::Equal {
        // every corner agrees; the image is that single value
        return Ok(RatInterval::point(lo));
    }
    Ok(RatInterval {
        lo,
        hi,
        lo_open: !lo_closed,
        hi_open: !hi_closed,
    })
}

fn touches_zero(b: &RatInterval) -> bool {
    b.lo.signum() <= 0 && b.hi.signum() >= 0
}

/// `{x ∘ y : x ∈ a, y ∈ b}` as an interval with exact endpoint openness.
pub fn interval_op(op: Op, a: &RatInterval, b: &RatInterval) -> Result<RatInterval, OracleError> {
    match op {
        Op::Add => Ok(RatInterval {
            lo: &a.lo + &b.lo,
            hi: &a.hi + &b.hi,
            lo_open: a.lo_open || b.lo_open,
            hi_open: a.hi_open || b.hi_open,
        }),
        Op::Sub => interval_op(Op::Add, a, &b.neg()),
        Op::Mul => {
            let zero_attained = a.contains(&Scalar::zero()) || b.contains(&Scalar::zero());
            corner_image(a, b, Scalar::zero(), zero_attained, |x, y| Ok(x * y))
        }
        Op::Div => {
            if touches_zero(b) {
                return Err(OracleError::DivisorStraddlesZero);
            }
            interval_op(Op::Mul, a, &b.recip())
        }
        Op::Pow => {
            if a.lo.signum() <= 0 {
                return Err(OracleError::NonpositivePowerBase);
            }
            let one_attained = a.contains(&Scalar::one()) || b.contains(&Scalar::zero());
            corner_image(a, b, Scalar::one(), one_attained, |x, y| {
                x.pow(y).map_err(from_scalar_error)
            })
        }
    }
}

fn window(s: &Scalar) -> Scalar {
    let mag = s.abs();
    let base = if mag.cmp_value(&Scalar::one()) == Ordering::Greater {
        mag
    } else {
        Scalar::one()
    };
    &base * &pow2_neg(WINDOW_EXP)
}

/// Which sides of `s` a union of intervals reaches.
pub fn classify_components(set: &[RatInterval], s: &Scalar) -> Result<ComponentSet, OracleError> {
    if set.is_empty() {
        return Err(OracleError::EmptySet);
    }
    let w = window(s);
    let mut out = ComponentSet::EMPTY;
    for iv in set {
        for end in [&iv.lo, &iv.hi] {
            if (end - s).abs().cmp_value(&w) != Ordering::Less {
                return Err(OracleError::ScaleViolation);
            }
        }
        out.below |= iv.lo.cmp_value(s) == Ordering::Less;
        out.above |= iv.hi.cmp_value(s) == Ordering::Greater;
        out.point |= iv.contains(s);
    }
    Ok(out)
}

/// Inverse of [`mu_n`]: the mark whose components match the set around `s`.
pub fn classify(set: &[RatInterval], s: &Scalar) -> Result<Mark, OracleError> {
    classify_components(set, s)?
        .to_mark()
        .ok_or(OracleError::EmptySet)
}

fn log2_mag(x: &Scalar) -> i64 {
    let r = x.lo();
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// Scale exponent `k` (with `δ = 2^-k`) for the given operands: the base
/// exponent, pushed down when magnitudes leave `[2^-10, 2^10]`.
pub fn delta_exponent(op: Op, x: &Mobinad, y: &Mobinad, s: &Scalar) -> u32 {
    let mut mags: Vec<i64> = Vec::new();
    for v in [&x.value, &y.value, s] {
        if v.signum() != 0 {
            let m = log2_mag(&v.abs());
            mags.push(m);
            mags.push(-m);
        }
    }
    if op == Op::Pow {
        let d = &x.value - &Scalar::one();
        if d.signum() != 0 {
            mags.push(-log2_mag(&d.abs()));
        }
    }
    let extra = mags.into_iter().map(|m| (m + 1 - 10).max(0)).max().unwrap_or(0);
    BASE_DELTA_EXP + extra as u32
}

/// Component set of `x ∘ y` from the sample family at scale `2^-k`.
pub fn oracle_components_at(op: Op, x: &Mobinad, y: &Mobinad, k: u32) -> Result<ComponentSet, OracleError> {
    let s = standard_part(op, x, y)?;
    let mut out = ComponentSet::EMPTY;
    for sample in EpsSample::family(k) {
        let xs = mu_n(x, &sample.eps1)?;
        let ys = mu_n(y, &sample.eps2)?;
        let mut image = Vec::with_capacity(xs.len() * ys.len());
        for a in &xs {
            for b in &ys {
                image.push(interval_op(op, a, b)?);
            }
        }
        out = out.union(classify_components(&image, &s)?);
    }
    Ok(out)
}

fn standard_part(op: Op, x: &Mobinad, y: &Mobinad) -> Result<Scalar, OracleError> {
    match op {
        Op::Div if y.value.signum() == 0 => Err(OracleError::DivisorStraddlesZero),
        Op::Pow if x.value.signum() <= 0 => Err(OracleError::NonpositivePowerBase),
        _ => op.apply_scalar(&x.value, &y.value).map_err(from_scalar_error),
    }
}

/// `x ∘ y` evaluated through interval images at scale `2^-k`.
pub fn oracle_op_at(op: Op, x: &Mobinad, y: &Mobinad, k: u32) -> Result<Mobinad, OracleError> {
    let s = standard_part(op, x, y)?;
    let set = oracle_components_at(op, x, y, k)?;
    let mark = set.to_mark().ok_or(OracleError::EmptySet)?;
    Ok(Mobinad::new(s, mark))
}

/// `x ∘ y` evaluated through interval images at the default scale.
pub fn oracle_op(op: Op, x: &Mobinad, y: &Mobinad) -> Result<Mobinad, OracleError> {
    let s = standard_part(op, x, y)?;
    let k = delta_exponent(op, x, y, &s);
    oracle_op_at(op, x, y, k)
}
