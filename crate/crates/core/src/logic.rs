//! Connectives on neutrosophic triples built from mobinad arithmetic and
//! the lattice operations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{add, mul, scalar_mul, sub};
use crate::mark::Mark;
use crate::mobinad::{HesitantSet, Mobinad, NeutrosophicTriple};
use crate::order::{self, inf1, inf_n, leq, sup1, sup_n, LatticeStrategy};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `inf_N` / `sup_N`.
    Minmax,
    /// `xy` / `x + y - xy`.
    #[default]
    Prodsum,
    /// `sup_N{x + y - 1, 0}` / `inf_N{x + y, 1}`.
    Lukasiewicz,
}

/// Which aggregation the indeterminacy component uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Variant {
    /// Indeterminacy follows truth: t-norm in conjunction.
    A,
    /// Indeterminacy follows falsehood: t-conorm in conjunction.
    #[default]
    B,
    /// Average of the t-norm and t-conorm.
    #[serde(rename = "plithogenic")]
    Plithogenic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Negation {
    /// `(F, I, T)`.
    #[default]
    Swap,
    /// `(F, 1^{+} - I, T)`.
    Complement,
}

macro_rules! named_enum {
    ($ty:ident, $err:literal, $($variant:ident => $name:literal),+) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$($ty::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($ty::$variant => $name),+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $ty {
            type Err = LogicError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                $ty::ALL
                    .iter()
                    .copied()
                    .find(|v| v.name().eq_ignore_ascii_case(s))
                    .ok_or_else(|| LogicError::UnknownName($err, s.to_string()))
            }
        }
    };
}

named_enum!(Family, "family", Minmax => "minmax", Prodsum => "prodsum", Lukasiewicz => "lukasiewicz");
named_enum!(Variant, "variant", A => "A", B => "B", Plithogenic => "plithogenic");
named_enum!(Negation, "negation", Swap => "swap", Complement => "complement");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("unknown {0} `{1}`")]
    UnknownName(&'static str, String),
    #[error("offset range needs psi <= 0 < 1 <= omega, got psi = {0}, omega = {1}")]
    InvalidOffsetRange(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ConnectiveConfig {
    pub family: Family,
    pub variant: Variant,
    pub negation: Negation,
}

impl ConnectiveConfig {
    pub fn new(family: Family, variant: Variant, negation: Negation) -> Self {
        ConnectiveConfig {
            family,
            variant,
            negation,
        }
    }
}

fn one() -> Mobinad {
    Mobinad::int(1, Mark::Std)
}

fn zero() -> Mobinad {
    Mobinad::int(0, Mark::Std)
}

/// Connectives for one configuration and lattice strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Logic {
    pub config: ConnectiveConfig,
    pub strategy: LatticeStrategy,
}

impl Logic {
    pub fn new(config: ConnectiveConfig, strategy: LatticeStrategy) -> Self {
        Logic { config, strategy }
    }

    pub fn tnorm(&self, x: &Mobinad, y: &Mobinad) -> Mobinad {
        match self.config.family {
            Family::Minmax => inf_n(x, y, self.strategy),
            Family::Prodsum => mul(x, y),
            Family::Lukasiewicz => sup_n(&sub(&add(x, y), &one()), &zero(), self.strategy),
        }
    }

    pub fn tconorm(&self, x: &Mobinad, y: &Mobinad) -> Mobinad {
        match self.config.family {
            Family::Minmax => sup_n(x, y, self.strategy),
            Family::Prodsum => sub(&add(x, y), &mul(x, y)),
            Family::Lukasiewicz => inf_n(&add(x, y), &one(), self.strategy),
        }
    }

    fn plithogenic(&self, x: &Mobinad, y: &Mobinad) -> Mobinad {
        let half = Scalar::ratio(1, 2);
        add(
            &scalar_mul(&half, &self.tnorm(x, y)),
            &scalar_mul(&half, &self.tconorm(x, y)),
        )
    }

    fn indeterminacy(&self, x: &Mobinad, y: &Mobinad, conjunction: bool) -> Mobinad {
        match (self.config.variant, conjunction) {
            (Variant::A, true) | (Variant::B, false) => self.tnorm(x, y),
            (Variant::A, false) | (Variant::B, true) => self.tconorm(x, y),
            (Variant::Plithogenic, _) => self.plithogenic(x, y),
        }
    }

    pub fn and(&self, p: &NeutrosophicTriple, q: &NeutrosophicTriple) -> NeutrosophicTriple {
        NeutrosophicTriple::new(
            self.tnorm(&p.t, &q.t),
            self.indeterminacy(&p.i, &q.i, true),
            self.tconorm(&p.f, &q.f),
        )
    }

    pub fn or(&self, p: &NeutrosophicTriple, q: &NeutrosophicTriple) -> NeutrosophicTriple {
        NeutrosophicTriple::new(
            self.tconorm(&p.t, &q.t),
            self.indeterminacy(&p.i, &q.i, false),
            self.tnorm(&p.f, &q.f),
        )
    }

    pub fn not(&self, p: &NeutrosophicTriple) -> NeutrosophicTriple {
        let i = match self.config.negation {
            Negation::Swap => p.i.clone(),
            Negation::Complement => sub(&Mobinad::int(1, Mark::R), &p.i),
        };
        NeutrosophicTriple::new(p.f.clone(), i, p.t.clone())
    }

    pub fn implies(&self, p: &NeutrosophicTriple, q: &NeutrosophicTriple) -> NeutrosophicTriple {
        self.or(&self.not(p), q)
    }

    /// Conjunction of both implications.
    pub fn equiv(&self, p: &NeutrosophicTriple, q: &NeutrosophicTriple) -> NeutrosophicTriple {
        self.and(&self.implies(p, q), &self.implies(q, p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Plain reals in `[0, 1]`.
    Standard,
    /// Mobinads in `]0^{-}, 1^{+}[`.
    Nonstandard,
    /// Plain-real bounds `[psi, omega]`.
    Offset,
}

named_enum!(Level, "level", Standard => "standard", Nonstandard => "nonstandard", Offset => "offset");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub level: Level,
    /// Membership of `t`, `i`, `f` in the level's range.
    pub in_range: [bool; 3],
    /// Sum of the lower bounds of the components.
    pub lower_sum: Mobinad,
    pub lower_bound: Mobinad,
    pub lower_sum_ok: bool,
    /// Sum of the upper bounds of the components.
    pub upper_sum: Mobinad,
    pub upper_bound: Mobinad,
    pub upper_sum_ok: bool,
    pub valid: bool,
}

/// Range and sum checks of a triple at the given level. `psi` and `omega`
/// are only read for [`Level::Offset`].
pub fn validate_triple(
    p: &NeutrosophicTriple,
    level: Level,
    psi: &Scalar,
    omega: &Scalar,
) -> Result<ValidationReport, LogicError> {
    let std = |s: Scalar| Mobinad::new(s, Mark::Std);
    let (lo, hi, sum_lo, sum_hi) = match level {
        Level::Standard => (std(Scalar::zero()), std(Scalar::one()), std(Scalar::zero()), std(Scalar::int(3))),
        Level::Nonstandard => {
            let unit = order::unit_interval();
            (
                unit.lower().clone(),
                unit.upper().clone(),
                Mobinad::int(0, Mark::L),
                Mobinad::int(3, Mark::R),
            )
        }
        Level::Offset => {
            if psi.signum() > 0 || omega.cmp_value(&Scalar::one()) == std::cmp::Ordering::Less {
                return Err(LogicError::InvalidOffsetRange(psi.to_string(), omega.to_string()));
            }
            let three = Scalar::int(3);
            (
                std(psi.clone()),
                std(omega.clone()),
                std(&three * psi),
                std(&three * omega),
            )
        }
    };
    let member = |x: &Mobinad| {
        let marked_ok = level != Level::Standard || x.mark == Mark::Std;
        marked_ok && leq(&lo, x) && leq(x, &hi)
    };
    let comps = p.components();
    let in_range = [member(comps[0]), member(comps[1]), member(comps[2])];
    let lower_sum = add(&add(&inf1(&p.t), &inf1(&p.i)), &inf1(&p.f));
    let upper_sum = add(&add(&sup1(&p.t), &sup1(&p.i)), &sup1(&p.f));
    let lower_sum_ok = leq(&sum_lo, &lower_sum);
    let upper_sum_ok = leq(&upper_sum, &sum_hi);
    let valid = in_range.iter().all(|b| *b) && lower_sum_ok && upper_sum_ok;
    Ok(ValidationReport {
        level,
        in_range,
        lower_sum,
        lower_bound: sum_lo,
        lower_sum_ok,
        upper_sum,
        upper_bound: sum_hi,
        upper_sum_ok,
        valid,
    })
}

/// `(inf, sup)` of a hesitant set by folding.
pub fn hesitant_bounds(h: &HesitantSet, strategy: LatticeStrategy) -> (Mobinad, Mobinad) {
    let inf = order::inf_fold(h.elements(), strategy).expect("hesitant sets are nonempty");
    let sup = order::sup_fold(h.elements(), strategy).expect("hesitant sets are nonempty");
    (inf, sup)
}
