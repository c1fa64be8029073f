//! Worked connective examples on two reference triples, checked exactly.

use serde::Serialize;

use crate::logic::Logic;
use crate::mobinad::{Mobinad, NeutrosophicTriple};

fn m(text: &str) -> Mobinad {
    text.parse().expect("fixture literal")
}

fn triple(t: &str, i: &str, f: &str) -> NeutrosophicTriple {
    NeutrosophicTriple::new(m(t), m(i), m(f))
}

/// `(0.3^{0+}, 0.2^{-+}, 0.4^{+})`
pub fn p1() -> NeutrosophicTriple {
    triple("0.3^{0+}", "0.2^{-+}", "0.4^{+}")
}

/// `(0.6^{-0}, 0.1^{-0+}, 0.5^{+})`
pub fn p2() -> NeutrosophicTriple {
    triple("0.6^{-0}", "0.1^{-0+}", "0.5^{+}")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub expression: &'static str,
    pub expected: NeutrosophicTriple,
    pub actual: NeutrosophicTriple,
    pub passed: bool,
}

/// Runs the four reference cases under the default connectives.
pub fn run_fixtures() -> Vec<FixtureResult> {
    let logic = Logic::default();
    let (a, b) = (p1(), p2());
    let cases = [
        (
            "conjunction",
            "P1 & P2",
            logic.and(&a, &b),
            triple("0.18^{-0+}", "0.28^{-0+}", "0.70^{-0+}"),
        ),
        (
            "disjunction",
            "P1 | P2",
            logic.or(&a, &b),
            triple("0.72^{-0+}", "0.02^{-0+}", "0.20^{+}"),
        ),
        (
            "negation",
            "!P1",
            logic.not(&a),
            triple("0.4^{+}", "0.2^{-+}", "0.3^{0+}"),
        ),
        (
            "implication",
            "P1 -> P2",
            logic.implies(&a, &b),
            triple("0.76^{-0+}", "0.02^{-0+}", "0.15^{+}"),
        ),
    ];
    cases
        .into_iter()
        .map(|(name, expression, actual, expected)| FixtureResult {
            name,
            expression,
            passed: actual == expected,
            expected,
            actual,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        let r = run_fixtures();
        assert_eq!(r.len(), 4);
        for f in &r {
            assert!(f.passed, "{}: {} vs {}", f.name, f.actual, f.expected);
        }
    }
}
