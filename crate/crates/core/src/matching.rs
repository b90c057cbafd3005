//! Matching numbers of strip triangulations: the number of ways to give each
//! lower vertex `i..=j` its own incident triangle.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::frieze::entry_recurrence;
use crate::row::QuiddityRow;
use crate::strip::{StripError, StripTriangulation, Triangle, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("j = {j} is below i - 2 = {}", i - 2)]
    BadRange { i: i64, j: i64 },
    #[error("the recurrence needs a triangulation without lower peripheral arcs")]
    LowerPeripheral,
    #[error(transparent)]
    Strip(#[from] StripError),
}

fn conventions(i: i64, j: i64) -> Result<Option<BigInt>, MatchingError> {
    match j - i {
        d if d < -2 => Err(MatchingError::BadRange { i, j }),
        -2 => Ok(Some(BigInt::zero())),
        -1 => Ok(Some(BigInt::one())),
        _ => Ok(None),
    }
}

fn lower_corners(t: &Triangle) -> impl Iterator<Item = i64> + '_ {
    t.iter().filter_map(|v| match v {
        Vertex::Lower(x) => Some(*x),
        Vertex::Upper(_) => None,
    })
}

/// `|M_{i,j}|`, with `|M_{i,i-1}| = 1` and `|M_{i,i-2}| = 0`.
///
/// Vertices are matched left to right; the state is the set of already used
/// triangles that later vertices could still reach.
pub fn count_matchings(t: &StripTriangulation, i: i64, j: i64) -> Result<BigInt, MatchingError> {
    if let Some(v) = conventions(i, j)? {
        return Ok(v);
    }
    let tris = t.triangles_in_range(i, j)?;
    let last_use: Vec<i64> = tris.iter().map(|tri| lower_corners(tri).filter(|&x| x <= j).max().unwrap()).collect();
    let mut states: BTreeMap<BTreeSet<usize>, BigInt> = BTreeMap::new();
    states.insert(BTreeSet::new(), BigInt::one());
    for x in i..=j {
        let options: Vec<usize> =
            (0..tris.len()).filter(|&k| tris[k].contains(&Vertex::Lower(x))).collect();
        let mut next: BTreeMap<BTreeSet<usize>, BigInt> = BTreeMap::new();
        for (used, count) in &states {
            for &k in options.iter().filter(|k| !used.contains(k)) {
                let mut key: BTreeSet<usize> = used.iter().copied().filter(|&u| last_use[u] > x).collect();
                if last_use[k] > x {
                    key.insert(k);
                }
                *next.entry(key).or_insert_with(BigInt::zero) += count;
            }
        }
        states = next;
    }
    Ok(states.into_values().sum())
}

/// Plain backtracking over all assignments; exponential, for cross-checks.
pub fn count_matchings_naive(t: &StripTriangulation, i: i64, j: i64) -> Result<BigInt, MatchingError> {
    if let Some(v) = conventions(i, j)? {
        return Ok(v);
    }
    let tris = t.triangles_in_range(i, j)?;
    fn go(x: i64, j: i64, tris: &[Triangle], used: &mut Vec<bool>) -> u64 {
        if x > j {
            return 1;
        }
        let mut total = 0;
        for k in 0..tris.len() {
            if !used[k] && tris[k].contains(&Vertex::Lower(x)) {
                used[k] = true;
                total += go(x + 1, j, tris, used);
                used[k] = false;
            }
        }
        total
    }
    Ok(BigInt::from(go(i, j, &tris, &mut vec![false; tris.len()])))
}

/// `|M_{i,j}|` from the quiddity alone, valid when there are no lower
/// peripheral arcs:
/// `|M_{i,j}| = (a_i-1)|M_{i+1,j}| + Σ_{i<k<j} (a_k-2)|M_{k+1,j}| + a_j - 1`.
pub fn count_by_recurrence(t: &StripTriangulation, i: i64, j: i64) -> Result<BigInt, MatchingError> {
    if t.has_lower_peripheral() {
        return Err(MatchingError::LowerPeripheral);
    }
    if let Some(v) = conventions(i, j)? {
        return Ok(v);
    }
    let a: Vec<BigInt> = t.strip_quiddity(i, j)?.into_iter().map(BigInt::from).collect();
    let len = a.len();
    // m[x] = |M_{i+x, j}|, m[len] = 1
    let mut m = vec![BigInt::zero(); len + 1];
    m[len] = BigInt::one();
    m[len - 1] = a[len - 1].clone();
    let one = BigInt::one();
    let two = BigInt::from(2);
    for x in (0..len - 1).rev() {
        let mut v = (&a[x] - &one) * &m[x + 1];
        for k in x + 1..len - 1 {
            v += (&a[k] - &two) * &m[k + 1];
        }
        v += &a[len - 1] - &one;
        m[x] = v;
    }
    Ok(m[0].clone())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub i: i64,
    pub j: i64,
    pub matchings: BigInt,
    pub expected: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchingReport {
    pub checked: usize,
    /// `count_matchings` against the frieze entry.
    pub mismatches: Vec<Mismatch>,
    /// `count_by_recurrence` against the frieze entry, when applicable.
    pub recurrence_mismatches: Vec<Mismatch>,
    pub recurrence_checked: usize,
}

impl MatchingReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.recurrence_mismatches.is_empty()
    }
}

/// Compare matching numbers with frieze entries for every `i` in `range`
/// and `0 <= j-i <= depth` with `j` in the core.
pub fn verify_matching_theorem(
    t: &StripTriangulation,
    range: (i64, i64),
    depth: i64,
) -> Result<MatchingReport, MatchingError> {
    let (core_lo, core_hi) = t.core;
    let row = QuiddityRow::windowed(core_lo, t.strip_quiddity(core_lo, core_hi)?)
        .map_err(|e| StripError::Invalid(e.to_string()))?;
    let with_recurrence = !t.has_lower_peripheral();
    let mut report = MatchingReport::default();
    for i in range.0..=range.1 {
        for j in i..=(i + depth).min(core_hi) {
            let expected = entry_recurrence(&row, i, j).expect("j >= i");
            let matchings = count_matchings(t, i, j)?;
            report.checked += 1;
            if matchings != expected {
                report.mismatches.push(Mismatch { i, j, matchings, expected: expected.clone() });
            }
            if with_recurrence {
                let rec = count_by_recurrence(t, i, j)?;
                report.recurrence_checked += 1;
                if rec != expected {
                    report.recurrence_mismatches.push(Mismatch { i, j, matchings: rec, expected });
                }
            }
        }
    }
    Ok(report)
}
