use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::nonempty;
use crate::index::SuffixArray;
use crate::limits::{Limits, ENV_ATTRACTOR, HARD_CAP};
use crate::text::SymbolString;

/// A set of 1-based positions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AttractorSet(BTreeSet<usize>);

impl AttractorSet {
    pub fn new(positions: impl IntoIterator<Item = usize>) -> Self {
        Self(positions.into_iter().collect())
    }

    /// Every position of a text of length `n`.
    pub fn all(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(&p)
    }

    pub fn insert(&mut self, p: usize) -> bool {
        self.0.insert(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<usize> for AttractorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for AttractorSet {
    /// Sorted, space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for AttractorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|e| Error::Input(format!("bad position {t:?}: {e}"))))
            .collect()
    }
}

/// Whether every distinct substring has an occurrence containing a position
/// of `gamma`. Positions outside `[1, n]` make the answer `false`.
pub fn is_attractor(text: &SymbolString, gamma: &AttractorSet) -> bool {
    let n = text.len();
    if gamma.iter().any(|p| p == 0 || p > n) {
        return false;
    }
    if n == 0 {
        return true;
    }
    // next[s]: smallest 0-based attractor position >= s.
    let mut next = vec![usize::MAX; n + 1];
    for s in (0..n).rev() {
        next[s] = if gamma.contains(s + 1) { s } else { next[s + 1] };
    }
    let idx = SuffixArray::new(text.as_slice());
    (1..=n).all(|k| {
        idx.groups_of_length(k)
            .iter()
            .all(|group| group.iter().any(|&s| next[s] < s + k))
    })
}

/// A minimum-size attractor under the default limit.
pub fn smallest_attractor(text: &SymbolString) -> Result<AttractorSet> {
    smallest_attractor_with_limit(text, Limits::default().attractor)
}

/// A minimum-size attractor; among those, the lexicographically smallest.
///
/// Each distinct substring contributes the union of its occurrence intervals
/// as a hitting-set constraint. Candidate sets are built in increasing
/// position order, and a branch dies as soon as some unhit constraint lies
/// entirely to the left of the next candidate.
pub fn smallest_attractor_with_limit(text: &SymbolString, limit: usize) -> Result<AttractorSet> {
    nonempty(text, "smallest attractor")?;
    let n = text.len();
    let cap = limit.min(HARD_CAP);
    if n > cap {
        return Err(Error::Capability { what: "smallest attractor", limit: cap, actual: n, env: ENV_ATTRACTOR });
    }
    let constraints = hitting_constraints(text);
    let lower = text.alphabet().len();
    for size in lower..=n {
        let mut chosen = Vec::with_capacity(size);
        if search(&constraints, 0, 0, size, n, &mut chosen) {
            return Ok(chosen.iter().map(|p| p + 1).collect());
        }
    }
    unreachable!("all positions always form an attractor")
}

/// Minimal occurrence-union masks, one per distinct substring whose mask is
/// not a superset of another's.
fn hitting_constraints(text: &SymbolString) -> Vec<u64> {
    let n = text.len();
    let idx = SuffixArray::new(text.as_slice());
    let mut masks: Vec<u64> = Vec::new();
    for k in 1..=n {
        let span = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        for group in idx.groups_of_length(k) {
            masks.push(group.iter().fold(0u64, |m, &s| m | (span << s)));
        }
    }
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    let mut minimal: Vec<u64> = Vec::new();
    for m in masks {
        if !minimal.iter().any(|&k| k & !m == 0) {
            minimal.push(m);
        }
    }
    minimal
}

fn search(constraints: &[u64], chosen_mask: u64, from: usize, left: usize, n: usize, chosen: &mut Vec<usize>) -> bool {
    // Highest position of the most urgent unhit constraint.
    let urgent = constraints
        .iter()
        .filter(|&&c| c & chosen_mask == 0)
        .map(|&c| 63 - c.leading_zeros() as usize)
        .min();
    let Some(limit) = urgent else {
        return true;
    };
    if left == 0 {
        return false;
    }
    for p in from..=limit.min(n - 1) {
        chosen.push(p);
        if search(constraints, chosen_mask | (1 << p), p + 1, left - 1, n, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
