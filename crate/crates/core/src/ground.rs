//! Ground sets of variable labels and bitmask subsets over them.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// Largest supported ground set. Dense points have `2^n - 1` entries.
pub const MAX_VARS: usize = 16;

/// A subset of a ground set, stored as a bitmask over the label order.
/// Bit `i` set means the `i`-th label is a member.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Position of this nonempty subset in a dense `2^n - 1` vector.
    pub fn dense_index(self) -> usize {
        debug_assert!(!self.is_empty());
        self.0 as usize - 1
    }

    /// All subsets of `self` (including empty and `self`), ascending by mask.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            // enumerate submasks in increasing order
            next = if cur == full {
                None
            } else {
                Some(((cur | !full).wrapping_add(1)) & full)
            };
            Some(Subset(cur))
        })
    }
}

/// Ordered list of distinct variable labels. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Arc<[String]>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyGround);
        }
        if labels.len() > MAX_VARS {
            return Err(Error::TooManyVariables { max: MAX_VARS, got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::UnknownLabel(String::new()));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels: labels.into() })
    }

    /// Ground set whose labels are the characters of `letters`, e.g. `"ABCDE"`.
    pub fn letters(letters: &str) -> Result<Self> {
        GroundSet::new(letters.chars().map(String::from))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    pub fn full(&self) -> Subset {
        Subset(((1u64 << self.len()) - 1) as u32)
    }

    /// Number of nonempty subsets, `2^n - 1`.
    pub fn dim(&self) -> usize {
        (1usize << self.len()) - 1
    }

    pub fn complement(&self, s: Subset) -> Subset {
        self.full().minus(s)
    }

    /// Nonempty subsets in ascending mask order.
    pub fn nonempty_subsets(&self) -> impl Iterator<Item = Subset> {
        (1..=self.full().0).map(Subset)
    }

    pub fn subset_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Subset> {
        let mut mask = 0u32;
        for l in labels {
            let i = self
                .index_of(l.as_ref())
                .ok_or_else(|| Error::UnknownLabel(l.as_ref().to_string()))?;
            mask |= 1 << i;
        }
        Ok(Subset(mask))
    }

    pub fn subset_labels(&self, s: Subset) -> Vec<&str> {
        s.indices().map(|i| self.label(i)).collect()
    }

    /// Key used in JSON reports: labels in ground order, concatenated when
    /// every label is a single character and comma-joined otherwise.
    pub fn subset_key(&self, s: Subset) -> String {
        let parts = self.subset_labels(s);
        if self.labels.iter().all(|l| l.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join(",")
        }
    }

    /// Inverse of [`GroundSet::subset_key`].
    pub fn parse_subset_key(&self, key: &str) -> Result<Subset> {
        if self.labels.iter().all(|l| l.chars().count() == 1) && !key.contains(',') {
            let parts: Vec<String> = key.chars().map(String::from).collect();
            self.subset_of(&parts)
        } else {
            let parts: Vec<&str> = key.split(',').map(str::trim).collect();
            self.subset_of(&parts)
        }
    }

    /// Labels of `self` followed by the labels of `other` not already present.
    pub fn union(&self, other: &GroundSet) -> Result<GroundSet> {
        let mut labels = self.labels.to_vec();
        labels.extend(other.labels.iter().filter(|l| !self.contains(l)).cloned());
        GroundSet::new(labels)
    }

    pub fn with_label(&self, label: &str) -> Result<GroundSet> {
        if self.contains(label) {
            return Err(Error::FreshLabelCollision(label.to_string()));
        }
        let mut labels = self.labels.to_vec();
        labels.push(label.to_string());
        GroundSet::new(labels)
    }

    /// Maps a subset of `self` into `wider`, matching labels by name.
    pub fn embed(&self, s: Subset, wider: &GroundSet) -> Result<Subset> {
        wider.subset_of(&self.subset_labels(s))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet[{}]", self.labels.join(","))
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_ground_sets() {
        assert_eq!(GroundSet::new(Vec::<String>::new()), Err(Error::EmptyGround));
        assert_eq!(GroundSet::letters("ABA"), Err(Error::DuplicateLabel("A".into())));
        assert!(GroundSet::new((0..17).map(|i| format!("X{i}"))).is_err());
    }

    #[test]
    fn subset_keys_round_trip() {
        let g = GroundSet::letters("ABCD").unwrap();
        let s = g.subset_of(&["D", "A", "C"]).unwrap();
        assert_eq!(g.subset_key(s), "ACD");
        assert_eq!(g.parse_subset_key("ACD").unwrap(), s);
        let g = GroundSet::new(["X1", "X2"]).unwrap();
        assert_eq!(g.subset_key(g.full()), "X1,X2");
        assert_eq!(g.parse_subset_key("X1,X2").unwrap(), g.full());
    }

    #[test]
    fn submask_enumeration_is_complete() {
        let s = Subset(0b1011);
        let all: Vec<u32> = s.subsets().map(Subset::bits).collect();
        assert_eq!(all, vec![0, 1, 2, 3, 8, 9, 10, 11]);
        assert_eq!(Subset(0).subsets().count(), 1);
    }

    #[test]
    fn unknown_label_is_reported() {
        let g = GroundSet::letters("AB").unwrap();
        assert_eq!(g.subset_of(&["Z"]), Err(Error::UnknownLabel("Z".into())));
        assert_eq!(g.dim(), 3);
        assert_eq!(g.complement(Subset(1)), Subset(2));
    }
}
