//! Quiddity rows: the first nontrivial row `(a_i)` of a frieze, indexed by all
//! integers.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RowError {
    #[error("a quiddity row needs at least one entry")]
    Empty,
    #[error("quiddity entries must be positive, found 0 at offset {0}")]
    NonPositive(usize),
}

/// A quiddity row with total integer indexing.
///
/// `Periodic` rows repeat their entries (`a_i = entries[i mod n]`, with
/// `entries[0]` at index 0). `Windowed` rows hold explicit entries on
/// `lo..=hi` and read as 2 everywhere else.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum QuiddityRow {
    Periodic { entries: Vec<u64> },
    Windowed { lo: i64, entries: Vec<u64> },
}

fn validate(entries: &[u64]) -> Result<(), RowError> {
    if entries.is_empty() {
        return Err(RowError::Empty);
    }
    match entries.iter().position(|&a| a == 0) {
        Some(pos) => Err(RowError::NonPositive(pos)),
        None => Ok(()),
    }
}

impl QuiddityRow {
    pub fn periodic(entries: Vec<u64>) -> Result<Self, RowError> {
        validate(&entries)?;
        Ok(QuiddityRow::Periodic { entries })
    }

    pub fn windowed(lo: i64, entries: Vec<u64>) -> Result<Self, RowError> {
        validate(&entries)?;
        Ok(QuiddityRow::Windowed { lo, entries })
    }

    /// The entry `a_i`.
    pub fn get(&self, i: i64) -> u64 {
        match self {
            QuiddityRow::Periodic { entries } => {
                entries[i.rem_euclid(entries.len() as i64) as usize]
            }
            QuiddityRow::Windowed { lo, entries } => {
                let off = i - lo;
                if off >= 0 && (off as usize) < entries.len() {
                    entries[off as usize]
                } else {
                    2
                }
            }
        }
    }

    pub fn entries(&self) -> &[u64] {
        match self {
            QuiddityRow::Periodic { entries } | QuiddityRow::Windowed { entries, .. } => entries,
        }
    }

    /// Inclusive index window of a `Windowed` row.
    pub fn window(&self) -> Option<(i64, i64)> {
        match self {
            QuiddityRow::Periodic { .. } => None,
            QuiddityRow::Windowed { lo, entries } => Some((*lo, lo + entries.len() as i64 - 1)),
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, QuiddityRow::Periodic { .. })
    }
}

/// Smallest `r` dividing `entries.len()` such that the tuple is `r`-periodic.
pub fn shortest_period(entries: &[u64]) -> usize {
    let n = entries.len();
    assert!(n > 0, "shortest_period of an empty tuple");
    (1..=n)
        .filter(|r| n.is_multiple_of(*r))
        .find(|&r| (r..n).all(|i| entries[i] == entries[i - r]))
        .unwrap_or(n)
}

/// Rotate-invariant comparison of two cyclic tuples.
pub fn cyclically_equal(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i])))
}
