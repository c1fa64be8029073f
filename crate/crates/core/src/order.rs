//! Partial order, infimum and supremum, intervals and inclusion.
//!
//! Mobinads with different standard parts are ordered by those parts alone.
//! At a shared standard part each mark is summarised by the pair
//! `(loRank, hiRank)`: where its leftmost and rightmost pieces sit relative
//! to the point (`-1` below, `0` at, `+1` above). One mark precedes another
//! when both ranks do.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mark::Mark;
use crate::mobinad::{HesitantSet, Mobinad, OrderResult};
use crate::scalar::Scalar;

/// Environment variable that overrides the default lattice strategy.
pub const STRATEGY_ENV: &str = "MOBINAD_LATTICE_STRATEGY";

pub fn lo_rank(m: Mark) -> i8 {
    if m.has_below() {
        -1
    } else if m.has_point() {
        0
    } else {
        1
    }
}

pub fn hi_rank(m: Mark) -> i8 {
    if m.has_above() {
        1
    } else if m.has_point() {
        0
    } else {
        -1
    }
}

pub fn compare(x: &Mobinad, y: &Mobinad) -> OrderResult {
    match x.value.cmp_value(&y.value) {
        Ordering::Less => OrderResult::Less,
        Ordering::Greater => OrderResult::Greater,
        Ordering::Equal => compare_marks(x.mark, y.mark),
    }
}

/// Order of two marks at the same standard part.
pub fn compare_marks(x: Mark, y: Mark) -> OrderResult {
    let (xl, xh) = (lo_rank(x), hi_rank(x));
    let (yl, yh) = (lo_rank(y), hi_rank(y));
    if (xl, xh) == (yl, yh) {
        OrderResult::OrderEquivalent
    } else if xl <= yl && xh <= yh {
        OrderResult::Less
    } else if xl >= yl && xh >= yh {
        OrderResult::Greater
    } else {
        OrderResult::Incomparable
    }
}

pub fn leq(x: &Mobinad, y: &Mobinad) -> bool {
    matches!(compare(x, y), OrderResult::Less | OrderResult::OrderEquivalent)
}

/// Leftmost piece of `x` as a mark: `L`, else `Std`, else `R`.
pub fn inf1(x: &Mobinad) -> Mobinad {
    let mark = if x.mark.has_below() {
        Mark::L
    } else if x.mark.has_point() {
        Mark::Std
    } else {
        Mark::R
    };
    x.with_mark(mark)
}

/// Rightmost piece of `x` as a mark: `R`, else `Std`, else `L`.
pub fn sup1(x: &Mobinad) -> Mobinad {
    let mark = if x.mark.has_above() {
        Mark::R
    } else if x.mark.has_point() {
        Mark::Std
    } else {
        Mark::L
    };
    x.with_mark(mark)
}

/// How binary `inf_n` / `sup_n` treat operands that are already ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeStrategy {
    /// Always reduce each operand with `inf1`/`sup1` and take the extreme.
    #[default]
    Reduction,
    /// Return an operand unchanged when it is already below (above) the
    /// other; otherwise fall back to reduction.
    OrderFirst,
}

impl LatticeStrategy {
    pub fn name(self) -> &'static str {
        match self {
            LatticeStrategy::Reduction => "reduction",
            LatticeStrategy::OrderFirst => "order-first",
        }
    }

    /// Strategy named by `MOBINAD_LATTICE_STRATEGY`, or the default when
    /// unset. An unrecognised value is an error.
    pub fn from_env() -> Result<LatticeStrategy, ParseStrategyError> {
        match std::env::var(STRATEGY_ENV) {
            Ok(v) if !v.trim().is_empty() => v.trim().parse(),
            _ => Ok(LatticeStrategy::default()),
        }
    }
}

impl fmt::Display for LatticeStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown lattice strategy `{0}` (expected reduction or order-first)")]
pub struct ParseStrategyError(pub String);

impl FromStr for LatticeStrategy {
    type Err = ParseStrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "reduction" => Ok(LatticeStrategy::Reduction),
            "order-first" | "order_first" | "orderfirst" => Ok(LatticeStrategy::OrderFirst),
            _ => Err(ParseStrategyError(s.to_string())),
        }
    }
}

fn chain_rank(m: Mark) -> i8 {
    match m {
        Mark::L => -1,
        Mark::Std => 0,
        _ => 1,
    }
}

fn reduce_inf(x: &Mobinad, y: &Mobinad) -> Mobinad {
    match x.value.cmp_value(&y.value) {
        Ordering::Less => inf1(x),
        Ordering::Greater => inf1(y),
        Ordering::Equal => {
            let (a, b) = (inf1(x), inf1(y));
            if chain_rank(b.mark) < chain_rank(a.mark) {
                b
            } else {
                a
            }
        }
    }
}

fn reduce_sup(x: &Mobinad, y: &Mobinad) -> Mobinad {
    match x.value.cmp_value(&y.value) {
        Ordering::Greater => sup1(x),
        Ordering::Less => sup1(y),
        Ordering::Equal => {
            let (a, b) = (sup1(x), sup1(y));
            if chain_rank(b.mark) > chain_rank(a.mark) {
                b
            } else {
                a
            }
        }
    }
}

pub fn inf_n(x: &Mobinad, y: &Mobinad, strategy: LatticeStrategy) -> Mobinad {
    if strategy == LatticeStrategy::OrderFirst {
        if leq(x, y) {
            return x.clone();
        }
        if leq(y, x) {
            return y.clone();
        }
    }
    reduce_inf(x, y)
}

pub fn sup_n(x: &Mobinad, y: &Mobinad, strategy: LatticeStrategy) -> Mobinad {
    if strategy == LatticeStrategy::OrderFirst {
        if leq(x, y) {
            return y.clone();
        }
        if leq(y, x) {
            return x.clone();
        }
    }
    reduce_sup(x, y)
}

/// Left fold of [`inf_n`]; a single element is reduced with [`inf1`].
pub fn inf_fold<'a>(
    items: impl IntoIterator<Item = &'a Mobinad>,
    strategy: LatticeStrategy,
) -> Option<Mobinad> {
    let mut it = items.into_iter();
    let first = it.next()?;
    let start = match strategy {
        LatticeStrategy::Reduction => inf1(first),
        LatticeStrategy::OrderFirst => first.clone(),
    };
    Some(it.fold(start, |acc, x| inf_n(&acc, x, strategy)))
}

/// Left fold of [`sup_n`]; a single element is reduced with [`sup1`].
pub fn sup_fold<'a>(
    items: impl IntoIterator<Item = &'a Mobinad>,
    strategy: LatticeStrategy,
) -> Option<Mobinad> {
    let mut it = items.into_iter();
    let first = it.next()?;
    let start = match strategy {
        LatticeStrategy::Reduction => sup1(first),
        LatticeStrategy::OrderFirst => first.clone(),
    };
    Some(it.fold(start, |acc, x| sup_n(&acc, x, strategy)))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("interval bounds are not ordered: {0} is not below {1}")]
    UnorderedBounds(String, String),
    #[error("empty set has no infimum")]
    EmptySet,
}

/// `]lower, upper[` with `lower ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobinadInterval {
    lower: Mobinad,
    upper: Mobinad,
}

impl MobinadInterval {
    pub fn new(lower: Mobinad, upper: Mobinad) -> Result<Self, OrderError> {
        if !leq(&lower, &upper) {
            return Err(OrderError::UnorderedBounds(lower.to_string(), upper.to_string()));
        }
        Ok(MobinadInterval { lower, upper })
    }

    pub fn lower(&self) -> &Mobinad {
        &self.lower
    }

    pub fn upper(&self) -> &Mobinad {
        &self.upper
    }
}

impl fmt::Display for MobinadInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "]{}, {}[", self.lower, self.upper)
    }
}

pub fn membership(c: &Mobinad, iv: &MobinadInterval) -> bool {
    leq(&iv.lower, c) && leq(c, &iv.upper)
}

/// `a ⊆ b`; the strict form also needs one bound of `a` strictly inside.
pub fn interval_inclusion(a: &MobinadInterval, b: &MobinadInterval, strict: bool) -> bool {
    let lower = compare(&b.lower, &a.lower);
    let upper = compare(&a.upper, &b.upper);
    let ok = |r: OrderResult| matches!(r, OrderResult::Less | OrderResult::OrderEquivalent);
    if !(ok(lower) && ok(upper)) {
        return false;
    }
    !strict || lower == OrderResult::Less || upper == OrderResult::Less
}

/// Every element of `a` is (set-)equal to some element of `b`; the strict
/// form also needs an element of `b` missing from `a`.
pub fn hesitant_inclusion(a: &HesitantSet, b: &HesitantSet, strict: bool) -> bool {
    let included = a.elements().iter().all(|x| b.contains(x));
    if !strict {
        return included;
    }
    included && b.elements().iter().any(|y| !a.contains(y))
}

pub fn hesitant_equality(a: &HesitantSet, b: &HesitantSet) -> bool {
    hesitant_inclusion(a, b, false) && hesitant_inclusion(b, a, false)
}

/// `]0^{-}, 1^{+}[`.
pub fn unit_interval() -> MobinadInterval {
    MobinadInterval {
        lower: Mobinad::int(0, Mark::L),
        upper: Mobinad::int(1, Mark::R),
    }
}

pub fn is_in_unit(x: &Mobinad) -> bool {
    membership(x, &unit_interval())
}

fn std_fold(values: &[Scalar], inf: bool) -> Result<Scalar, OrderError> {
    let items: Vec<Mobinad> = values.iter().cloned().map(Mobinad::standard).collect();
    let strategy = LatticeStrategy::Reduction;
    let r = if inf {
        inf_fold(&items, strategy)
    } else {
        sup_fold(&items, strategy)
    };
    r.map(|m| m.value).ok_or(OrderError::EmptySet)
}

/// Folded `inf_n` over plain reals, returned as its standard part.
pub fn inf_std_check(values: &[Scalar]) -> Result<Scalar, OrderError> {
    std_fold(values, true)
}

/// Folded `sup_n` over plain reals, returned as its standard part.
pub fn sup_std_check(values: &[Scalar]) -> Result<Scalar, OrderError> {
    std_fold(values, false)
}

/// One failed absorption identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsorptionViolation {
    pub x: Mobinad,
    pub y: Mobinad,
    /// `"inf(x, sup(x, y))"` or `"sup(x, inf(x, y))"`.
    pub law: &'static str,
    pub got: Mobinad,
}

impl fmt::Display for AbsorptionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x = {}, y = {}: {} = {}, expected {}",
            self.x, self.y, self.law, self.got, self.x
        )
    }
}

pub fn absorption_violations(x: &Mobinad, y: &Mobinad, strategy: LatticeStrategy) -> Vec<AbsorptionViolation> {
    let mut out = Vec::new();
    let a = inf_n(x, &sup_n(x, y, strategy), strategy);
    if &a != x {
        out.push(AbsorptionViolation {
            x: x.clone(),
            y: y.clone(),
            law: "inf(x, sup(x, y))",
            got: a,
        });
    }
    let b = sup_n(x, &inf_n(x, y, strategy), strategy);
    if &b != x {
        out.push(AbsorptionViolation {
            x: x.clone(),
            y: y.clone(),
            law: "sup(x, inf(x, y))",
            got: b,
        });
    }
    out
}

/// Absorption failures over all 49 mark pairs at one shared standard part.
pub fn absorption_report(value: &Scalar, strategy: LatticeStrategy) -> Vec<AbsorptionViolation> {
    let mut out = Vec::new();
    for mx in Mark::ALL {
        for my in Mark::ALL {
            let x = Mobinad::new(value.clone(), mx);
            let y = Mobinad::new(value.clone(), my);
            out.extend(absorption_violations(&x, &y, strategy));
        }
    }
    out
}
