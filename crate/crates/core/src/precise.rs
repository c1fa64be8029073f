//! Directed-rounding enclosures of `ln` and `exp` over rationals.
//!
//! Everything is computed in binary fixed point with `WORK_BITS` fractional
//! bits. Lower bounds round toward negative infinity at every step and upper
//! bounds toward positive infinity, so the returned pair always brackets the
//! true value.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) const WORK_BITS: u64 = 256;

/// A closed rational interval known to contain some real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(v: BigRational) -> Self {
        Enclosure {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Enclosure { lo, hi }
    }
}

fn scale() -> BigInt {
    BigInt::one() << WORK_BITS
}

fn floor_fixed(r: &BigRational) -> BigInt {
    (r.numer() << WORK_BITS).div_floor(r.denom())
}

fn ceil_fixed(r: &BigRational) -> BigInt {
    -((-(r.numer() << WORK_BITS)).div_floor(r.denom()))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn from_fixed(v: BigInt) -> BigRational {
    BigRational::new(v, scale())
}

/// `atanh(s)` for `0 <= s <= 1/3`, as fixed-point bounds.
fn atanh_fixed(s: &BigRational) -> (BigInt, BigInt) {
    debug_assert!(!s.is_negative());
    let s2 = s * s;
    let (n2, d2) = (s2.numer().clone(), s2.denom().clone());
    let mut p_lo = floor_fixed(s);
    let mut p_hi = ceil_fixed(s);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k = 1u64;
    loop {
        let kk = BigInt::from(k);
        lo += p_lo.div_floor(&kk);
        hi += ceil_div(&p_hi, &kk);
        if p_hi <= BigInt::one() {
            // tail < s^2 / (1 - s^2) of one ulp
            hi += 2;
            break;
        }
        p_lo = (&p_lo * &n2).div_floor(&d2);
        p_hi = ceil_div(&(&p_hi * &n2), &d2);
        k += 2;
    }
    (lo, hi)
}

fn ln2_fixed() -> &'static (BigInt, BigInt) {
    static LN2: OnceLock<(BigInt, BigInt)> = OnceLock::new();
    LN2.get_or_init(|| {
        let (lo, hi) = atanh_fixed(&BigRational::new(1.into(), 3.into()));
        (lo * 2, hi * 2)
    })
}

fn bit_len(v: &BigInt) -> i64 {
    v.bits() as i64
}

/// Bounds on `ln x` for rational `x > 0`.
pub fn ln(x: &BigRational) -> Enclosure {
    assert!(x.is_positive(), "ln of non-positive value");
    if x.is_one() {
        return Enclosure::point(BigRational::zero());
    }
    let two = BigRational::from_integer(2.into());
    let mut k = bit_len(x.numer()) - bit_len(x.denom());
    let pow2 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as u64)
        }
    };
    let mut m = x / pow2(k);
    let upper = BigRational::new(4.into(), 3.into());
    let lower = BigRational::new(2.into(), 3.into());
    while m > upper {
        m /= &two;
        k += 1;
    }
    while m < lower {
        m *= &two;
        k -= 1;
    }
    let one = BigRational::one();
    let s = (&m - &one) / (&m + &one);
    let (a_lo, a_hi) = atanh_fixed(&s.abs());
    let (m_lo, m_hi) = if s.is_negative() {
        (-a_hi * 2, -a_lo * 2)
    } else {
        (a_lo * 2, a_hi * 2)
    };
    let (l2_lo, l2_hi) = ln2_fixed();
    let kk = BigInt::from(k);
    let (k_lo, k_hi) = if k >= 0 {
        (&kk * l2_lo, &kk * l2_hi)
    } else {
        (&kk * l2_hi, &kk * l2_lo)
    };
    Enclosure {
        lo: from_fixed(k_lo + m_lo),
        hi: from_fixed(k_hi + m_hi),
    }
}

/// Taylor series of `exp(r)` for fixed-point `0 <= r <= 1`.
fn exp_series(r: &BigInt, upper: bool) -> BigInt {
    let s = scale();
    let mut sum = s.clone();
    let mut term = s.clone();
    let mut n = 1u64;
    loop {
        let d = &s * BigInt::from(n);
        term = if upper {
            ceil_div(&(&term * r), &d)
        } else {
            (&term * r).div_floor(&d)
        };
        if term.is_zero() {
            break;
        }
        sum += &term;
        if upper && term <= BigInt::one() {
            sum += 2;
            break;
        }
        n += 1;
    }
    sum
}

fn exp_fixed(r: &BigInt, upper: bool) -> BigInt {
    if r.is_negative() {
        let s2 = scale() * scale();
        let inv = exp_series(&-r, !upper);
        if upper {
            ceil_div(&s2, &inv)
        } else {
            s2.div_floor(&inv)
        }
    } else {
        exp_series(r, upper)
    }
}

fn exp_bound(t: &BigRational, upper: bool) -> BigRational {
    let k = t
        .to_f64()
        .map(|f| (f / std::f64::consts::LN_2).round())
        .filter(|f| f.is_finite())
        .expect("exponent out of range") as i64;
    let (l2_lo, l2_hi) = ln2_fixed();
    let kk = BigInt::from(k);
    // r = t - k ln2, bounded in the rounding direction
    let r = if upper {
        let l = if k >= 0 { l2_lo } else { l2_hi };
        ceil_fixed(t) - &kk * l
    } else {
        let l = if k >= 0 { l2_hi } else { l2_lo };
        floor_fixed(t) - &kk * l
    };
    let v = exp_fixed(&r, upper);
    let base = from_fixed(v);
    if k >= 0 {
        base * BigRational::from_integer(BigInt::one() << k as u64)
    } else {
        base / BigRational::from_integer(BigInt::one() << (-k) as u64)
    }
}

/// Bounds on `exp(z)` for every `z` in the enclosure.
pub fn exp(z: &Enclosure) -> Enclosure {
    Enclosure {
        lo: exp_bound(&z.lo, false),
        hi: exp_bound(&z.hi, true),
    }
}

/// Bounds on `x^y` for `x > 0`, every `x` and `y` in the given enclosures.
pub fn pow(x: &Enclosure, y: &Enclosure) -> Enclosure {
    let lx = Enclosure {
        lo: ln(&x.lo).lo,
        hi: ln(&x.hi).hi,
    };
    exp(&lx.mul(y))
}
