//! The seven neighborhood shapes a mobinad can take around its standard part.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Which infinitesimal neighborhoods of a standard real `a` are included.
///
/// | mark  | text  | below | point | above |
/// |-------|-------|-------|-------|-------|
/// | `Std` | `0`   |       |   x   |       |
/// | `L`   | `-`   |   x   |       |       |
/// | `L0`  | `-0`  |   x   |   x   |       |
/// | `R`   | `+`   |       |       |   x   |
/// | `R0`  | `0+`  |       |   x   |   x   |
/// | `LR`  | `-+`  |   x   |       |   x   |
/// | `L0R` | `-0+` |   x   |   x   |   x   |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Mark {
    /// The plain real `a`.
    #[default]
    Std,
    /// Left monad `(a - ε, a)`.
    L,
    /// Left monad closed to the right `(a - ε, a]`.
    L0,
    /// Right monad `(a, a + ε)`.
    R,
    /// Right monad closed to the left `[a, a + ε)`.
    R0,
    /// Pierced binad `(a - ε, a) ∪ (a, a + ε)`.
    LR,
    /// Unpierced binad `(a - ε, a + ε)`.
    L0R,
}

impl Mark {
    pub const ALL: [Mark; 7] = [
        Mark::Std,
        Mark::L,
        Mark::L0,
        Mark::R,
        Mark::R0,
        Mark::LR,
        Mark::L0R,
    ];

    /// Marks without a binad shape; these form a chain under the order.
    pub const MONADIC: [Mark; 5] = [Mark::L, Mark::L0, Mark::Std, Mark::R0, Mark::R];

    pub fn components(self) -> ComponentSet {
        let (below, point, above) = match self {
            Mark::Std => (false, true, false),
            Mark::L => (true, false, false),
            Mark::L0 => (true, true, false),
            Mark::R => (false, false, true),
            Mark::R0 => (false, true, true),
            Mark::LR => (true, false, true),
            Mark::L0R => (true, true, true),
        };
        ComponentSet { below, point, above }
    }

    pub fn has_below(self) -> bool {
        self.components().below
    }

    pub fn has_point(self) -> bool {
        self.components().point
    }

    pub fn has_above(self) -> bool {
        self.components().above
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mark::Std => "0",
            Mark::L => "-",
            Mark::L0 => "-0",
            Mark::R => "+",
            Mark::R0 => "0+",
            Mark::LR => "-+",
            Mark::L0R => "-0+",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown mark `{0}` (expected one of 0, -, -0, +, 0+, -+, -0+)")]
pub struct ParseMarkError(pub String);

impl FromStr for Mark {
    type Err = ParseMarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mark::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| ParseMarkError(s.to_string()))
    }
}

impl Serialize for Mark {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Mark {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Direction of a deviation from the standard part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Below,
    Point,
    Above,
}

impl Component {
    pub fn sign(self) -> i8 {
        match self {
            Component::Below => -1,
            Component::Point => 0,
            Component::Above => 1,
        }
    }

    pub fn from_sign(sign: i8) -> Component {
        match sign.signum() {
            -1 => Component::Below,
            0 => Component::Point,
            _ => Component::Above,
        }
    }
}

/// A subset of `{below, point, above}`.
///
/// Only nonempty sets correspond to a [`Mark`]; the empty set exists so that
/// unions can be accumulated from nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ComponentSet {
    pub below: bool,
    pub point: bool,
    pub above: bool,
}

impl ComponentSet {
    pub const EMPTY: ComponentSet = ComponentSet {
        below: false,
        point: false,
        above: false,
    };

    pub const FULL: ComponentSet = ComponentSet {
        below: true,
        point: true,
        above: true,
    };

    pub fn new(below: bool, point: bool, above: bool) -> Self {
        ComponentSet {
            below,
            point,
            above,
        }
    }

    pub fn single(c: Component) -> Self {
        let mut s = ComponentSet::EMPTY;
        s.insert(c);
        s
    }

    pub fn insert(&mut self, c: Component) {
        match c {
            Component::Below => self.below = true,
            Component::Point => self.point = true,
            Component::Above => self.above = true,
        }
    }

    pub fn contains(&self, c: Component) -> bool {
        match c {
            Component::Below => self.below,
            Component::Point => self.point,
            Component::Above => self.above,
        }
    }

    pub fn union(self, other: ComponentSet) -> ComponentSet {
        ComponentSet {
            below: self.below || other.below,
            point: self.point || other.point,
            above: self.above || other.above,
        }
    }

    pub fn is_subset(&self, other: &ComponentSet) -> bool {
        (!self.below || other.below) && (!self.point || other.point) && (!self.above || other.above)
    }

    pub fn is_empty(&self) -> bool {
        !(self.below || self.point || self.above)
    }

    pub fn iter(self) -> impl Iterator<Item = Component> {
        [Component::Below, Component::Point, Component::Above]
            .into_iter()
            .filter(move |c| self.contains(*c))
    }

    /// The mark with exactly these components, or `None` for the empty set.
    pub fn to_mark(self) -> Option<Mark> {
        Some(match (self.below, self.point, self.above) {
            (false, true, false) => Mark::Std,
            (true, false, false) => Mark::L,
            (true, true, false) => Mark::L0,
            (false, false, true) => Mark::R,
            (false, true, true) => Mark::R0,
            (true, false, true) => Mark::LR,
            (true, true, true) => Mark::L0R,
            (false, false, false) => return None,
        })
    }

    /// All seven nonempty component sets.
    pub fn all_nonempty() -> impl Iterator<Item = ComponentSet> {
        Mark::ALL.into_iter().map(Mark::components)
    }
}

impl From<Mark> for ComponentSet {
    fn from(m: Mark) -> Self {
        m.components()
    }
}
