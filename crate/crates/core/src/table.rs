//! 7×7 result-mark tables per operation and sign regime.
//!
//! Tables are derived from the interval oracle at a fixed pair of
//! representative standard parts. A second pair with the same signs is
//! used to flag cells whose mark depends on more than the signs.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, Op};
use crate::mark::Mark;
use crate::mobinad::Mobinad;
use crate::oracle;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    #[serde(rename = "pos-pos")]
    PosPos,
    #[serde(rename = "pos-neg")]
    PosNeg,
    #[serde(rename = "neg-pos")]
    NegPos,
    #[serde(rename = "neg-neg")]
    NegNeg,
}

impl Regime {
    pub const ALL: [Regime; 4] = [Regime::PosPos, Regime::PosNeg, Regime::NegPos, Regime::NegNeg];

    pub fn name(self) -> &'static str {
        match self {
            Regime::PosPos => "pos-pos",
            Regime::PosNeg => "pos-neg",
            Regime::NegPos => "neg-pos",
            Regime::NegNeg => "neg-neg",
        }
    }

    fn signs(self) -> (i64, i64) {
        match self {
            Regime::PosPos => (1, 1),
            Regime::PosNeg => (1, -1),
            Regime::NegPos => (-1, 1),
            Regime::NegNeg => (-1, -1),
        }
    }

    /// Representative standard parts `(a, b)`: `±3/2, ±5/4`.
    pub fn values(self) -> (Scalar, Scalar) {
        let (sa, sb) = self.signs();
        (Scalar::ratio(3 * sa, 2), Scalar::ratio(5 * sb, 4))
    }

    /// A second pair with the same signs, `±3/4, ±7/2`, on the other side
    /// of 1 in magnitude.
    pub fn alt_values(self) -> (Scalar, Scalar) {
        let (sa, sb) = self.signs();
        (Scalar::ratio(3 * sa, 4), Scalar::ratio(7 * sb, 2))
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown sign regime `{0}` (expected pos-pos, pos-neg, neg-pos or neg-neg)")]
pub struct ParseRegimeError(pub String);

impl FromStr for Regime {
    type Err = ParseRegimeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ParseRegimeError(s.to_string()))
    }
}

/// A mark, or `None` where the operation's precondition fails.
pub type Cell = Option<Mark>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkTable {
    pub op: Op,
    pub regime: Regime,
    /// `cells[x.mark][y.mark]`, indexed by [`Mark::index`].
    pub cells: [[Cell; 7]; 7],
    pub value_dependent: [[bool; 7]; 7],
}

impl MarkTable {
    pub fn get(&self, x: Mark, y: Mark) -> Cell {
        self.cells[x.index()][y.index()]
    }

    pub fn is_value_dependent(&self, x: Mark, y: Mark) -> bool {
        self.value_dependent[x.index()][y.index()]
    }

    pub fn error_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.is_none()).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cells: Vec<Vec<&str>> = self
            .cells
            .iter()
            .map(|row| row.iter().map(|c| c.map_or("ERR", Mark::as_str)).collect())
            .collect();
        serde_json::json!({
            "op": self.op.name(),
            "regime": self.regime.name(),
            "cells": cells,
            "value_dependent": self.value_dependent,
        })
    }

    /// Aligned grid with operand marks as row and column headers.
    /// Value-dependent cells carry a trailing `*`.
    pub fn to_text(&self) -> String {
        let (a, b) = self.regime.values();
        let mut out = format!("{} {} (a = {a}, b = {b})\n", self.op.name(), self.regime.name());
        out.push_str(&format!("{:>5} |", format!("x{}y", self.op.symbol())));
        for y in Mark::ALL {
            out.push_str(&format!(" {:>5}", y.as_str()));
        }
        out.push('\n');
        out.push_str(&format!("{}\n", "-".repeat(7 + 6 * 7)));
        for x in Mark::ALL {
            out.push_str(&format!("{:>5} |", x.as_str()));
            for y in Mark::ALL {
                let mut c = self.get(x, y).map_or("ERR", Mark::as_str).to_string();
                if self.is_value_dependent(x, y) {
                    c.push('*');
                }
                out.push_str(&format!(" {c:>5}"));
            }
            out.push('\n');
        }
        out
    }
}

fn grid(f: impl Fn(Mark, Mark) -> Cell + Sync) -> [[Cell; 7]; 7] {
    let flat: Vec<Cell> = (0..49)
        .into_par_iter()
        .map(|i| f(Mark::ALL[i / 7], Mark::ALL[i % 7]))
        .collect();
    let mut cells = [[None; 7]; 7];
    for (i, c) in flat.into_iter().enumerate() {
        cells[i / 7][i % 7] = c;
    }
    cells
}

fn oracle_grid(op: Op, (a, b): (Scalar, Scalar), k: Option<u32>) -> [[Cell; 7]; 7] {
    grid(|mx, my| {
        let x = Mobinad::new(a.clone(), mx);
        let y = Mobinad::new(b.clone(), my);
        let r = match k {
            Some(k) => oracle::oracle_op_at(op, &x, &y, k),
            None => oracle::oracle_op(op, &x, &y),
        };
        r.ok().map(|m| m.mark)
    })
}

/// Table of oracle marks at the regime's representative values.
pub fn derive_mark_table(op: Op, regime: Regime) -> MarkTable {
    let cells = oracle_grid(op, regime.values(), None);
    let alt = oracle_grid(op, regime.alt_values(), None);
    let mut value_dependent = [[false; 7]; 7];
    for i in 0..7 {
        for j in 0..7 {
            value_dependent[i][j] = cells[i][j] != alt[i][j];
        }
    }
    MarkTable {
        op,
        regime,
        cells,
        value_dependent,
    }
}

/// Oracle table at an explicit scale `δ = 2^-k`, without the value check.
pub fn derive_mark_table_at(op: Op, regime: Regime, k: u32) -> MarkTable {
    MarkTable {
        op,
        regime,
        cells: oracle_grid(op, regime.values(), Some(k)),
        value_dependent: [[false; 7]; 7],
    }
}

/// The same grid computed by the fast kernel.
pub fn kernel_table(op: Op, regime: Regime) -> MarkTable {
    let (a, b) = regime.values();
    let cells = grid(|mx, my| {
        arith::apply(op, &Mobinad::new(a.clone(), mx), &Mobinad::new(b.clone(), my))
            .ok()
            .map(|m| m.mark)
    });
    MarkTable {
        op,
        regime,
        cells,
        value_dependent: [[false; 7]; 7],
    }
}

fn slot(op: Op, regime: Regime) -> usize {
    Op::ALL.iter().position(|o| *o == op).unwrap() * 4
        + Regime::ALL.iter().position(|r| *r == regime).unwrap()
}

/// Derived once per `(op, regime)` and shared afterwards.
pub fn cached_table(op: Op, regime: Regime) -> &'static MarkTable {
    static CACHE: [OnceLock<MarkTable>; 20] = [const { OnceLock::new() }; 20];
    CACHE[slot(op, regime)].get_or_init(|| derive_mark_table(op, regime))
}

/// A cell where the kernel and the oracle table disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub op: Op,
    pub regime: Regime,
    pub x: Mark,
    pub y: Mark,
    pub kernel: Cell,
    pub oracle: Cell,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: Cell| c.map_or("ERR", Mark::as_str);
        write!(
            f,
            "{} {} [{}][{}]: kernel {} oracle {}",
            self.op,
            self.regime,
            self.x,
            self.y,
            show(self.kernel),
            show(self.oracle)
        )
    }
}

/// Every cell where [`kernel_table`] and [`cached_table`] differ.
pub fn cross_check(op: Op, regime: Regime) -> Vec<Mismatch> {
    let slow = cached_table(op, regime);
    let fast = kernel_table(op, regime);
    let mut out = Vec::new();
    for x in Mark::ALL {
        for y in Mark::ALL {
            if fast.get(x, y) != slow.get(x, y) {
                out.push(Mismatch {
                    op,
                    regime,
                    x,
                    y,
                    kernel: fast.get(x, y),
                    oracle: slow.get(x, y),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use Mark::*;

    #[test]
    fn known_cells() {
        assert_eq!(cached_table(Op::Add, Regime::PosPos).get(L, L), Some(L));
        for r in Regime::ALL {
            assert_eq!(cached_table(Op::Sub, r).get(L, L), Some(L0R), "{r}");
        }
        assert_eq!(cached_table(Op::Mul, Regime::PosPos).get(L0, L0R), Some(L0R));
        assert_eq!(cached_table(Op::Div, Regime::PosPos).get(L, L), Some(L0R));
        assert_eq!(cached_table(Op::Pow, Regime::PosPos).get(R0, L0), Some(L0R));
    }

    #[test]
    fn standard_row_of_add_is_identity_on_marks() {
        let t = cached_table(Op::Add, Regime::NegPos);
        for y in Mark::ALL {
            assert_eq!(t.get(Std, y), Some(y));
            assert_eq!(t.get(y, Std), Some(y));
        }
    }

    #[test]
    fn pow_with_negative_base_is_all_errors() {
        for r in [Regime::NegPos, Regime::NegNeg] {
            assert_eq!(cached_table(Op::Pow, r).error_cells(), 49);
        }
        assert_eq!(cached_table(Op::Pow, Regime::PosNeg).error_cells(), 0);
    }

    #[test]
    fn pow_flags_base_below_one() {
        // 3/2 > 1 but 3/4 < 1 flips the exponent partial
        let t = cached_table(Op::Pow, Regime::PosPos);
        assert!(t.is_value_dependent(Std, L));
        assert!(!t.is_value_dependent(L, Std));
        assert!(!cached_table(Op::Add, Regime::PosPos).value_dependent.iter().flatten().any(|v| *v));
    }

    #[test]
    fn json_shape() {
        let j = cached_table(Op::Sub, Regime::PosPos).to_json();
        assert_eq!(j["op"], "sub");
        assert_eq!(j["regime"], "pos-pos");
        assert_eq!(j["cells"][1][1], "-0+");
        assert_eq!(j["cells"].as_array().unwrap().len(), 7);
        let e = cached_table(Op::Pow, Regime::NegNeg).to_json();
        assert_eq!(e["cells"][0][0], "ERR");
    }

    #[test]
    fn text_grid_has_header_and_rows() {
        let t = cached_table(Op::Add, Regime::PosPos).to_text();
        assert_eq!(t.lines().count(), 10);
        assert!(t.lines().nth(1).unwrap().contains("-0+"));
    }

    #[test]
    fn names_round_trip() {
        for r in Regime::ALL {
            assert_eq!(r.name().parse::<Regime>(), Ok(r));
        }
        assert!("pos".parse::<Regime>().is_err());
    }
}
