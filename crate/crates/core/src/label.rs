//! Labels and finite ground sets.
//!
//! Labels are integers or names. Integers sort before names, and each kind
//! sorts naturally, which fixes the canonical order used everywhere else.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    /// Parses a JSON object key: integer-looking keys become `Int`.
    pub fn from_key(key: &str) -> Label {
        match key.parse::<i64>() {
            Ok(i) => Label::Int(i),
            Err(_) => Label::Name(key.to_string()),
        }
    }

    pub fn key(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Label {
    fn from(i: i64) -> Self {
        Label::Int(i)
    }
}

impl From<i32> for Label {
    fn from(i: i32) -> Self {
        Label::Int(i as i64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Name(s.to_string())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label::Name(s)
    }
}

impl From<&Label> for Label {
    fn from(l: &Label) -> Self {
        l.clone()
    }
}

/// A finite set of labels kept in canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Label>", into = "Vec<Label>")]
pub struct GroundSet(Vec<Label>);

impl TryFrom<Vec<Label>> for GroundSet {
    type Error = Error;

    fn try_from(labels: Vec<Label>) -> Result<Self> {
        GroundSet::new(labels)
    }
}

impl From<GroundSet> for Vec<Label> {
    fn from(g: GroundSet) -> Self {
        g.0
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl GroundSet {
    pub fn new<L: Into<Label>>(labels: impl IntoIterator<Item = L>) -> Result<Self> {
        let mut v: Vec<Label> = labels.into_iter().map(Into::into).collect();
        v.sort();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0].to_string()));
        }
        Ok(GroundSet(v))
    }

    pub(crate) fn from_sorted_unchecked(v: Vec<Label>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        GroundSet(v)
    }

    pub fn empty() -> Self {
        GroundSet(Vec::new())
    }

    /// `{1, …, n}` with integer labels.
    pub fn range(n: usize) -> Self {
        GroundSet((1..=n as i64).map(Label::Int).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Label> {
        self.0.iter()
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.0.binary_search(l).is_ok()
    }

    pub fn index_of(&self, l: &Label) -> Option<usize> {
        self.0.binary_search(l).ok()
    }

    pub fn is_subset(&self, other: &GroundSet) -> bool {
        self.0.iter().all(|l| other.contains(l))
    }

    pub fn is_disjoint(&self, other: &GroundSet) -> bool {
        self.0.iter().all(|l| !other.contains(l))
    }

    pub fn union(&self, other: &GroundSet) -> GroundSet {
        let mut v: Vec<Label> = self.0.iter().chain(other.0.iter()).cloned().collect();
        v.sort();
        v.dedup();
        GroundSet(v)
    }

    pub fn intersection(&self, other: &GroundSet) -> GroundSet {
        GroundSet(self.0.iter().filter(|l| other.contains(l)).cloned().collect())
    }

    pub fn difference(&self, other: &GroundSet) -> GroundSet {
        GroundSet(self.0.iter().filter(|l| !other.contains(l)).cloned().collect())
    }

    /// Disjoint union; fails if the two sets share a label.
    pub fn disjoint_union(&self, other: &GroundSet) -> Result<GroundSet> {
        if !self.is_disjoint(other) {
            return Err(Error::Overlap(format!("{self} and {other}")));
        }
        Ok(self.union(other))
    }

    /// Checks that `(s, t)` is an ordered decomposition of `self` (blocks may be empty).
    pub fn check_decomposition(&self, s: &GroundSet, t: &GroundSet) -> Result<()> {
        if !s.is_disjoint(t) || s.len() + t.len() != self.len() || !s.is_subset(self) || !t.is_subset(self) {
            return Err(Error::BadDecomposition(format!("{s} ⊔ {t} ≠ {self}")));
        }
        Ok(())
    }

    pub fn check_subset(&self, s: &GroundSet) -> Result<()> {
        if s.is_subset(self) {
            Ok(())
        } else {
            Err(Error::NotSubset(format!("{s} ⊄ {self}")))
        }
    }

    /// Subset selected by the bits of `mask` (bit `i` is the `i`-th label).
    pub fn subset_from_mask(&self, mask: u64) -> GroundSet {
        GroundSet(self.0.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect())
    }

    pub fn mask_of(&self, s: &GroundSet) -> Result<u64> {
        let mut m = 0u64;
        for l in s.iter() {
            let i = self.index_of(l).ok_or_else(|| Error::NotSubset(format!("{s} ⊄ {self}")))?;
            m |= 1 << i;
        }
        Ok(m)
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    /// All subsets, in bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = GroundSet> + '_ {
        (0..=self.full_mask()).map(move |m| self.subset_from_mask(m))
    }
}

impl<'a> IntoIterator for &'a GroundSet {
    type Item = &'a Label;
    type IntoIter = std::slice::Iter<'a, Label>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
