//! Exact arithmetic, order and neutrosophic connectives over mobinads:
//! real numbers tagged with the infinitesimal neighborhoods they cover.

pub mod arith;
pub mod expr;
pub mod fixtures;
pub mod logic;
pub mod mark;
pub mod mobinad;
pub mod oracle;
pub mod order;
mod precise;
pub mod scalar;
pub mod table;

pub use arith::{add, div, mul, pow_, scalar_mul, sub, ArithError, Op};
pub use expr::{evaluate, parse_expr, Expr, ExprError, Value};
pub use logic::{ConnectiveConfig, Family, Logic, Negation, Variant};
pub use mark::{Component, ComponentSet, Mark};
pub use mobinad::{HesitantSet, Mobinad, NeutrosophicTriple, OrderResult};
pub use order::LatticeStrategy;
pub use scalar::Scalar;
pub use table::{MarkTable, Regime};
