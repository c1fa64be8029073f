//! The five operations on mobinads.
//!
//! Standard parts are combined exactly. The mark comes from a first-order
//! sign rule: the result deviates from the standard part by roughly
//! `f_x·δ₁ + f_y·δ₂`, where `f_x`, `f_y` are the partial derivatives of the
//! operation and `δ₁`, `δ₂` the operand deviations. When a partial vanishes
//! against a non-point component the first-order picture says nothing and
//! the interval oracle decides.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mark::{Component, ComponentSet, Mark};
use crate::mobinad::Mobinad;
use crate::oracle::{self, OracleError};
use crate::scalar::{Scalar, ScalarError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl Op {
    pub const ALL: [Op; 5] = [Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Pow];

    pub fn name(self) -> &'static str {
        match self {
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Div => "div",
            Op::Pow => "pow",
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Op::Add => '+',
            Op::Sub => '-',
            Op::Mul => '*',
            Op::Div => '/',
            Op::Pow => '^',
        }
    }

    /// The operation on standard parts.
    pub fn apply_scalar(self, a: &Scalar, b: &Scalar) -> Result<Scalar, ScalarError> {
        match self {
            Op::Add => Ok(a + b),
            Op::Sub => Ok(a - b),
            Op::Mul => Ok(a * b),
            Op::Div => a.checked_div(b),
            Op::Pow => a.pow(b),
        }
    }

    /// Signs of `(∂/∂x, ∂/∂y)` at `(a, b)`.
    pub fn partial_signs(self, a: &Scalar, b: &Scalar) -> (i8, i8) {
        match self {
            Op::Add => (1, 1),
            Op::Sub => (1, -1),
            Op::Mul => (b.signum(), a.signum()),
            Op::Div => (b.signum(), -a.signum()),
            Op::Pow => (b.signum(), (a - &Scalar::one()).signum()),
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown operation `{0}` (expected add, sub, mul, div or pow)")]
pub struct ParseOpError(pub String);

impl FromStr for Op {
    type Err = ParseOpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Op::ALL
            .into_iter()
            .find(|op| op.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ParseOpError(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by a mobinad whose standard part is zero")]
    DivisionByZeroNeighborhood,
    #[error("power base must have a positive standard part")]
    NonpositivePowerBase,
    #[error("result magnitude out of range")]
    Overflow,
    #[error("a vanishing partial derivative meets a non-point component")]
    ZeroPartialAmbiguity,
    #[error("oracle failure: {0}")]
    Oracle(OracleError),
}

impl From<OracleError> for ArithError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::DivisorStraddlesZero => ArithError::DivisionByZeroNeighborhood,
            OracleError::NonpositivePowerBase => ArithError::NonpositivePowerBase,
            OracleError::Overflow => ArithError::Overflow,
            other => ArithError::Oracle(other),
        }
    }
}

impl From<ScalarError> for ArithError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::DivisionByZero => ArithError::DivisionByZeroNeighborhood,
            ScalarError::Overflow => ArithError::Overflow,
            _ => ArithError::NonpositivePowerBase,
        }
    }
}

/// Result components of `x ∘ y` from the first-order deviation signs.
pub fn sign_rule(
    op: Op,
    a: &Scalar,
    b: &Scalar,
    sx: ComponentSet,
    sy: ComponentSet,
) -> Result<ComponentSet, ArithError> {
    let (fx, fy) = op.partial_signs(a, b);
    let only_point = |s: ComponentSet| s == ComponentSet::single(Component::Point);
    if (fx == 0 && !only_point(sx)) || (fy == 0 && !only_point(sy)) {
        return Err(ArithError::ZeroPartialAmbiguity);
    }
    let mut out = ComponentSet::EMPTY;
    for c1 in sx.iter() {
        for c2 in sy.iter() {
            let t1 = fx * c1.sign();
            let t2 = fy * c2.sign();
            if t1 == 0 || t2 == 0 || t1 == t2 {
                out.insert(Component::from_sign(t1 + t2));
            } else {
                out = out.union(ComponentSet::FULL);
            }
        }
    }
    Ok(out)
}

/// `x ∘ y`, sign rule first and oracle when the rule cannot decide.
pub fn apply(op: Op, x: &Mobinad, y: &Mobinad) -> Result<Mobinad, ArithError> {
    match op {
        Op::Div if y.value.is_zero() => return Err(ArithError::DivisionByZeroNeighborhood),
        Op::Pow if x.value.signum() <= 0 => return Err(ArithError::NonpositivePowerBase),
        Op::Pow if x.value.is_one() || y.value.is_zero() => {
            return Ok(oracle::oracle_op(op, x, y)?);
        }
        _ => {}
    }
    let value = op.apply_scalar(&x.value, &y.value)?;
    match sign_rule(op, &x.value, &y.value, x.components(), y.components()) {
        Ok(set) => {
            let mark = set.to_mark().expect("sign rule yields a nonempty set");
            Ok(Mobinad::new(value, mark))
        }
        Err(ArithError::ZeroPartialAmbiguity) => Ok(oracle::oracle_op(op, x, y)?),
        Err(e) => Err(e),
    }
}

pub fn add(x: &Mobinad, y: &Mobinad) -> Mobinad {
    apply(Op::Add, x, y).expect("addition is total")
}

pub fn sub(x: &Mobinad, y: &Mobinad) -> Mobinad {
    apply(Op::Sub, x, y).expect("subtraction is total")
}

pub fn mul(x: &Mobinad, y: &Mobinad) -> Mobinad {
    apply(Op::Mul, x, y).expect("multiplication is total")
}

pub fn div(x: &Mobinad, y: &Mobinad) -> Result<Mobinad, ArithError> {
    apply(Op::Div, x, y)
}

pub fn pow_(x: &Mobinad, y: &Mobinad) -> Result<Mobinad, ArithError> {
    apply(Op::Pow, x, y)
}

/// `c · x`, treating `c` as a plain real.
pub fn scalar_mul(c: &Scalar, x: &Mobinad) -> Mobinad {
    mul(&Mobinad::new(c.clone(), Mark::Std), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::oracle_op;
    use proptest::prelude::*;

    fn m(t: &str) -> Mobinad {
        t.parse().unwrap()
    }

    fn cs(mark: Mark) -> ComponentSet {
        mark.components()
    }

    #[test]
    fn sign_rule_examples() {
        let (a, b) = (Scalar::ratio(1, 2), Scalar::ratio(1, 5));
        assert_eq!(sign_rule(Op::Sub, &a, &b, cs(Mark::L), cs(Mark::L)), Ok(ComponentSet::FULL));
        assert_eq!(sign_rule(Op::Add, &a, &b, cs(Mark::L), cs(Mark::L)), Ok(cs(Mark::L)));
        assert_eq!(
            sign_rule(Op::Pow, &Scalar::int(2), &Scalar::int(3), cs(Mark::R0), cs(Mark::L0)),
            Ok(ComponentSet::FULL)
        );
    }

    #[test]
    fn sign_rule_reports_zero_partial() {
        let zero = Scalar::zero();
        let two = Scalar::int(2);
        assert_eq!(
            sign_rule(Op::Mul, &zero, &two, cs(Mark::Std), cs(Mark::LR)),
            Err(ArithError::ZeroPartialAmbiguity)
        );
        // the vanishing side only sees a point: still decidable
        assert_eq!(
            sign_rule(Op::Mul, &zero, &two, cs(Mark::R), cs(Mark::Std)),
            Ok(cs(Mark::R))
        );
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&m("0.2^{-}"), &m("0.3^{-}")), m("0.5^{-}"));
        assert_eq!(add(&m("2"), &m("3")), m("5"));
        assert_eq!(add(&m("0.3^{0+}"), &m("0.6^{-0}")), m("0.9^{-0+}"));
    }

    #[test]
    fn sub_examples() {
        assert_eq!(sub(&m("0.5^{-}"), &m("0.2^{-}")), m("0.3^{-0+}"));
        assert_eq!(sub(&m("1.0^{-0}"), &m("0.24^{-0}")), m("0.76^{-0+}"));
        assert_eq!(sub(&m("5"), &m("5")), m("0"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mul(&m("0.3^{0+}"), &m("0.6^{-0}")), m("0.18^{-0+}"));
        assert_eq!(mul(&m("0.3"), &m("0.5^{+}")), m("0.15^{+}"));
        assert_eq!(mul(&m("-2^{-}"), &m("3^{-}")), m("-6^{-0+}"));
    }

    #[test]
    fn div_examples() {
        assert_eq!(div(&m("0.4^{-}"), &m("0.8^{-}")), Ok(m("0.5^{-0+}")));
        assert_eq!(div(&m("6^{+}"), &m("3")), Ok(m("2^{+}")));
        for mark in Mark::ALL {
            let x = Mobinad::ratio(-7, 3, mark);
            assert_eq!(div(&x, &m("1")), Ok(x));
            assert_eq!(
                div(&m("0.4^{-}"), &Mobinad::int(0, mark)),
                Err(ArithError::DivisionByZeroNeighborhood)
            );
        }
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow_(&m("2^{0+}"), &m("3^{-0}")), Ok(m("8^{-0+}")));
        assert_eq!(pow_(&m("(1/2)^{0+}"), &m("2")), Ok(m("(1/4)^{0+}")));
        for mark in Mark::ALL {
            let x = Mobinad::ratio(5, 3, mark);
            assert_eq!(pow_(&x, &m("1")), Ok(x));
        }
        assert_eq!(pow_(&m("0^{+}"), &m("2")), Err(ArithError::NonpositivePowerBase));
        assert_eq!(pow_(&m("-1"), &m("2")), Err(ArithError::NonpositivePowerBase));
    }

    #[test]
    fn pow_irrational_value_keeps_exact_mark() {
        let r = pow_(&m("2^{+}"), &m("0.5")).unwrap();
        assert!(!r.value.is_exact());
        assert_eq!(r.mark, Mark::R);
    }

    #[test]
    fn pow_at_base_one_goes_through_oracle() {
        assert_eq!(pow_(&m("1^{+}"), &m("3")), Ok(m("1^{+}")));
        assert_eq!(pow_(&m("1^{-0+}"), &m("-2")), Ok(m("1^{-0+}")));
        assert_eq!(pow_(&m("1"), &m("2^{-+}")), Ok(m("1")));
        assert_eq!(pow_(&m("3"), &m("0^{-}")), Ok(m("1^{-}")));
    }

    #[test]
    fn scalar_mul_examples() {
        assert_eq!(scalar_mul(&Scalar::ratio(1, 2), &m("0.4^{-+}")), m("0.2^{-+}"));
        for mark in Mark::ALL {
            let x = Mobinad::ratio(11, 9, mark);
            assert_eq!(scalar_mul(&Scalar::one(), &x), x);
            assert_eq!(scalar_mul(&Scalar::zero(), &x), m("0"));
            assert_eq!(scalar_mul(&Scalar::zero(), &x), oracle_op(Op::Mul, &m("0"), &x).unwrap());
        }
    }

    #[test]
    fn zero_partials_agree_with_oracle() {
        for x in Mark::ALL {
            for y in Mark::ALL {
                let (a, b) = (Mobinad::int(0, x), Mobinad::ratio(3, 2, y));
                assert_eq!(mul(&a, &b), oracle_op(Op::Mul, &a, &b).unwrap());
                assert_eq!(mul(&a, &a.with_mark(y)), oracle_op(Op::Mul, &a, &a.with_mark(y)).unwrap());
            }
        }
    }

    #[test]
    fn op_names_parse() {
        for op in Op::ALL {
            assert_eq!(op.name().parse::<Op>(), Ok(op));
        }
        assert!("mod".parse::<Op>().is_err());
    }

    fn any_mark() -> impl Strategy<Value = Mark> {
        prop::sample::select(Mark::ALL.to_vec())
    }

    fn any_mobinad() -> impl Strategy<Value = Mobinad> {
        (-500i64..500, 1i64..60, any_mark()).prop_map(|(n, d, mk)| Mobinad::ratio(n, d, mk))
    }

    proptest! {
        #[test]
        fn standard_part_homomorphism(x in any_mobinad(), y in any_mobinad()) {
            for op in [Op::Add, Op::Sub, Op::Mul] {
                let r = apply(op, &x, &y).unwrap();
                prop_assert_eq!(r.value, op.apply_scalar(&x.value, &y.value).unwrap());
            }
            if !y.value.is_zero() {
                let r = div(&x, &y).unwrap();
                prop_assert_eq!(r.value, x.value.checked_div(&y.value).unwrap());
            }
        }

        #[test]
        fn add_mul_commute(x in any_mobinad(), y in any_mobinad()) {
            prop_assert_eq!(add(&x, &y), add(&y, &x));
            prop_assert_eq!(mul(&x, &y), mul(&y, &x));
        }

        #[test]
        fn fast_path_matches_oracle_on_random_values(x in any_mobinad(), y in any_mobinad()) {
            for op in [Op::Add, Op::Sub, Op::Mul, Op::Div] {
                let fast = apply(op, &x, &y);
                let slow = oracle_op(op, &x, &y).map_err(ArithError::from);
                prop_assert_eq!(fast, slow, "{:?} {} {}", op, x, y);
            }
        }
    }

    #[test]
    fn add_marks_associate() {
        let vals = [Scalar::ratio(3, 2), Scalar::ratio(-5, 4), Scalar::ratio(2, 7)];
        for mx in Mark::ALL {
            for my in Mark::ALL {
                for mz in Mark::ALL {
                    let x = Mobinad::new(vals[0].clone(), mx);
                    let y = Mobinad::new(vals[1].clone(), my);
                    let z = Mobinad::new(vals[2].clone(), mz);
                    let left = add(&add(&x, &y), &z);
                    let right = add(&x, &add(&y, &z));
                    assert_eq!(left, right, "{mx:?} {my:?} {mz:?}");
                }
            }
        }
    }

    #[test]
    fn enlarging_components_never_shrinks_result() {
        let pairs = [
            (Scalar::ratio(3, 2), Scalar::ratio(5, 4)),
            (Scalar::ratio(-3, 2), Scalar::ratio(5, 4)),
            (Scalar::ratio(3, 4), Scalar::ratio(-7, 2)),
            (Scalar::zero(), Scalar::ratio(2, 3)),
        ];
        for op in Op::ALL {
            for (a, b) in &pairs {
                for mx in Mark::ALL {
                    for my in Mark::ALL {
                        let base = apply(op, &Mobinad::new(a.clone(), mx), &Mobinad::new(b.clone(), my));
                        let Ok(base) = base else { continue };
                        for gx in Mark::ALL.into_iter().filter(|g| cs(mx).is_subset(&cs(*g))) {
                            for gy in Mark::ALL.into_iter().filter(|g| cs(my).is_subset(&cs(*g))) {
                                let big = apply(op, &Mobinad::new(a.clone(), gx), &Mobinad::new(b.clone(), gy))
                                    .unwrap();
                                assert!(
                                    cs(base.mark).is_subset(&cs(big.mark)),
                                    "{op:?} {a} {b}: {mx:?},{my:?} -> {:?} but {gx:?},{gy:?} -> {:?}",
                                    base.mark,
                                    big.mark
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}
