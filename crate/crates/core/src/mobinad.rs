//! Mobinads, neutrosophic triples, hesitant sets and their text forms.
//!
//! Text form is `value` optionally followed by `^{mark}`:
//!
//! ```text
//! 0.3^{0+}     right monad of 0.3 closed to the left
//! -2^{-+}      pierced binad of -2
//! (1/3)^{-}    left monad of 1/3 (fractions are parenthesised when marked)
//! 5            the plain real 5
//! ```
//!
//! The lateral forms `(-a)`, `(a+)` and `(-a+)` are accepted as input
//! aliases for the left monad, right monad and pierced binad of an unsigned
//! decimal `a`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mark::{ComponentSet, Mark, ParseMarkError};
use crate::scalar::{Scalar, ScalarError};

/// A standard part tagged with the infinitesimal neighborhoods it covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mobinad {
    pub value: Scalar,
    pub mark: Mark,
}

impl Mobinad {
    pub fn new(value: Scalar, mark: Mark) -> Mobinad {
        Mobinad { value, mark }
    }

    pub fn standard(value: Scalar) -> Mobinad {
        Mobinad::new(value, Mark::Std)
    }

    /// Shorthand for tests and fixtures: `num/den` with the given mark.
    pub fn ratio(num: i64, den: i64, mark: Mark) -> Mobinad {
        Mobinad::new(Scalar::ratio(num, den), mark)
    }

    pub fn int(n: i64, mark: Mark) -> Mobinad {
        Mobinad::new(Scalar::int(n), mark)
    }

    pub fn components(&self) -> ComponentSet {
        self.mark.components()
    }

    pub fn with_mark(&self, mark: Mark) -> Mobinad {
        Mobinad::new(self.value.clone(), mark)
    }
}

impl From<Scalar> for Mobinad {
    fn from(value: Scalar) -> Self {
        Mobinad::standard(value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Mark(#[from] ParseMarkError),
    #[error(transparent)]
    Value(#[from] ScalarError),
    #[error("malformed mobinad `{0}`")]
    Malformed(String),
}

impl fmt::Display for Mobinad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value.to_string();
        if self.mark == Mark::Std {
            return f.write_str(&v);
        }
        if v.contains('/') || v.starts_with('~') {
            write!(f, "({v})^{{{}}}", self.mark)
        } else {
            write!(f, "{v}^{{{}}}", self.mark)
        }
    }
}

fn parse_lateral(t: &str) -> Option<Mobinad> {
    let inner = t.strip_prefix('(')?.strip_suffix(')')?.trim();
    let (below, rest) = match inner.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, inner),
    };
    let (above, body) = match rest.strip_suffix('+') {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let mark = match (below, above) {
        (true, false) => Mark::L,
        (false, true) => Mark::R,
        (true, true) => Mark::LR,
        (false, false) => return None,
    };
    let body = body.trim();
    if body.starts_with('-') || body.starts_with('+') || body.contains('/') {
        return None;
    }
    let value: Scalar = body.parse().ok()?;
    Some(Mobinad::new(value, mark))
}

impl FromStr for Mobinad {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let (value_text, mark) = match t.find("^{") {
            Some(pos) => {
                let rest = &t[pos + 2..];
                let mark_text = rest
                    .strip_suffix('}')
                    .ok_or_else(|| ParseError::Malformed(s.to_string()))?;
                (&t[..pos], mark_text.parse::<Mark>()?)
            }
            None => {
                if t.starts_with('(') {
                    return parse_lateral(t).ok_or_else(|| ParseError::Malformed(s.to_string()));
                }
                (t, Mark::Std)
            }
        };
        let value_text = value_text.trim();
        let value_text = match value_text.strip_prefix('(') {
            Some(inner) => inner
                .strip_suffix(')')
                .ok_or_else(|| ParseError::Malformed(s.to_string()))?,
            None => value_text,
        };
        Ok(Mobinad::new(value_text.parse()?, mark))
    }
}

/// Degrees of truth, indeterminacy and falsehood.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeutrosophicTriple {
    pub t: Mobinad,
    pub i: Mobinad,
    pub f: Mobinad,
}

impl NeutrosophicTriple {
    pub fn new(t: Mobinad, i: Mobinad, f: Mobinad) -> Self {
        NeutrosophicTriple { t, i, f }
    }

    pub fn components(&self) -> [&Mobinad; 3] {
        [&self.t, &self.i, &self.f]
    }
}

impl fmt::Display for NeutrosophicTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.t, self.i, self.f)
    }
}

/// A finite, nonempty collection of mobinads standing for one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Mobinad>", into = "Vec<Mobinad>")]
pub struct HesitantSet(Vec<Mobinad>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("hesitant set must contain at least one element")]
pub struct EmptyHesitantSet;

impl HesitantSet {
    pub fn new(elements: Vec<Mobinad>) -> Result<Self, EmptyHesitantSet> {
        if elements.is_empty() {
            Err(EmptyHesitantSet)
        } else {
            Ok(HesitantSet(elements))
        }
    }

    pub fn elements(&self) -> &[Mobinad] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept alongside `len` for API symmetry.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// A one-element set is just a mobinad.
    pub fn as_single(&self) -> Option<&Mobinad> {
        match self.0.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    pub fn contains(&self, m: &Mobinad) -> bool {
        self.0.contains(m)
    }
}

impl TryFrom<Vec<Mobinad>> for HesitantSet {
    type Error = EmptyHesitantSet;
    fn try_from(v: Vec<Mobinad>) -> Result<Self, Self::Error> {
        HesitantSet::new(v)
    }
}

impl From<HesitantSet> for Vec<Mobinad> {
    fn from(h: HesitantSet) -> Self {
        h.0
    }
}

/// Outcome of comparing two mobinads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderResult {
    Less,
    Greater,
    OrderEquivalent,
    Incomparable,
}

impl OrderResult {
    pub fn reverse(self) -> OrderResult {
        match self {
            OrderResult::Less => OrderResult::Greater,
            OrderResult::Greater => OrderResult::Less,
            other => other,
        }
    }
}
