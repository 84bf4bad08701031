//! Action sets as bitsets over a sorted alphabet, and antichains of maximal
//! refusals.

use std::fmt;

/// A set of alphabet indices. Trailing zero words are trimmed so that the
/// derived `Eq`, `Ord` and `Hash` are set semantics.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionSet(Vec<u64>);

impl ActionSet {
    pub fn empty() -> Self {
        ActionSet(Vec::new())
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = ActionSet(vec![u64::MAX; n / 64]);
        if n % 64 != 0 {
            s.0.push((1u64 << (n % 64)) - 1);
        }
        s
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ActionSet::empty();
        for i in it {
            s.insert(i);
        }
        s
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.0.len() <= w {
            self.0.resize(w + 1, 0);
        }
        self.0[w] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(w) = self.0.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
        self.trim();
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &ActionSet) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn difference(&self, other: &ActionSet) -> ActionSet {
        let mut s = ActionSet(
            self.0
                .iter()
                .enumerate()
                .map(|(i, w)| w & !other.0.get(i).copied().unwrap_or(0))
                .collect(),
        );
        s.trim();
        s
    }

    pub fn union(&self, other: &ActionSet) -> ActionSet {
        let n = self.0.len().max(other.0.len());
        ActionSet(
            (0..n)
                .map(|i| self.0.get(i).copied().unwrap_or(0) | other.0.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

impl fmt::Debug for ActionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Pairwise incomparable refusal sets, denoting their downward closure.
/// The empty antichain is the empty family. Members are kept sorted.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RefusalAntichain(Vec<ActionSet>);

impl RefusalAntichain {
    pub fn empty() -> Self {
        RefusalAntichain(Vec::new())
    }

    /// Keeps only the maximal sets.
    pub fn from_sets(sets: impl IntoIterator<Item = ActionSet>) -> Self {
        let mut all: Vec<ActionSet> = sets.into_iter().collect();
        all.sort_by_key(|s| std::cmp::Reverse(s.len()));
        let mut keep: Vec<ActionSet> = Vec::new();
        for s in all {
            if !keep.iter().any(|k| s.is_subset(k)) {
                keep.push(s);
            }
        }
        keep.sort();
        RefusalAntichain(keep)
    }

    pub fn sets(&self) -> &[ActionSet] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Is `set` in the downward closure?
    pub fn admits(&self, set: &ActionSet) -> bool {
        self.0.iter().any(|r| set.is_subset(r))
    }

    /// Maps every maximal set and re-maximalizes. Only valid for monotone maps
    /// such as `R \ D`, which commute with downward closure.
    pub fn map(&self, f: impl Fn(&ActionSet) -> ActionSet) -> Self {
        RefusalAntichain::from_sets(self.0.iter().map(f))
    }

    /// Is the family denoted by `self` a subset of the one denoted by `other`?
    pub fn included_in(&self, other: &RefusalAntichain) -> bool {
        self.0.iter().all(|r| other.admits(r))
    }

    /// A maximal set of `self` outside `other`'s closure, if any.
    pub fn first_outside(&self, other: &RefusalAntichain) -> Option<&ActionSet> {
        self.0.iter().find(|r| !other.admits(r))
    }
}

impl fmt::Debug for RefusalAntichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}
