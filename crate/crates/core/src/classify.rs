//! Deciding whether a periodic quiddity sequence gives a finite frieze, an
//! infinite frieze, or no frieze at all.
//!
//! The decision repeatedly removes an entry equal to 1 (decrementing its two
//! cyclic neighbours) and re-normalizes to the shortest period until one of
//! the base shapes is reached.

use serde::Serialize;
use thiserror::Error;

use crate::frieze::fragment;
use crate::polygon::{PolygonError, TriangulatedPolygon};
use crate::row::{shortest_period, QuiddityRow, RowError};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Row(#[from] RowError),
    #[error("sequence is {0}, expected an infinite frieze")]
    NotInfinite(&'static str),
    #[error("sequence is {0}, expected a finite frieze")]
    NotFinite(&'static str),
    #[error("no polygon order found below the cap of {cap} rows")]
    OrderCapExceeded { cap: usize },
    #[error("polygon witness failed: {0}")]
    Polygon(#[from] PolygonError),
}

/// One removal of a 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    /// The sequence before the step, at its shortest period.
    pub before: Vec<u64>,
    /// 0-based position of the removed 1 within `before`.
    pub removed: usize,
    /// The reduced sequence is this many copies of the next step's `before`
    /// (or of the base).
    pub multiplicity: usize,
}

/// Which stopping condition ended the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseKind {
    /// `(1)`
    Triangle,
    /// `(1,2)` or `(1,3)` up to rotation
    SmallFinite,
    /// `(1,a)` with `a >= 4`, up to rotation
    OneAndLarge,
    /// every entry at least 2
    AllAtLeastTwo,
    /// cyclically adjacent 1s at shortest period >= 3
    AdjacentOnes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    /// Input length divided by its shortest period.
    pub initial_multiplicity: usize,
    pub steps: Vec<ReductionStep>,
    pub base: Vec<u64>,
    pub base_kind: BaseKind,
}

impl ReductionTrace {
    /// Sequences visited, starting at the normalized input and ending at the
    /// base.
    pub fn sequences(&self) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = self.steps.iter().map(|s| s.before.clone()).collect();
        out.push(self.base.clone());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Finite { polygon_order: usize, witness: TriangulatedPolygon },
    Infinite { minimal_inner_points: u64 },
    /// `witness` is the first entry `m_ij <= 0` (depth-major scan) of the
    /// frieze built on the input.
    NotAFrieze { witness: Option<(i64, i64)> },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::Finite { .. } => "finite",
            Outcome::Infinite { .. } => "infinite",
            Outcome::NotAFrieze { .. } => "not a frieze",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub outcome: Outcome,
    pub shortest_period: usize,
    pub trace: ReductionTrace,
}

/// Safety cap on rows searched for the finite-frieze terminating rows.
pub const ORDER_CAP_FACTOR: usize = 64;

fn validated(entries: &[u64]) -> Result<(), ClassifyError> {
    QuiddityRow::periodic(entries.to_vec())?;
    Ok(())
}

/// Run the reduction without building witnesses.
pub fn reduce(entries: &[u64]) -> Result<ReductionTrace, ClassifyError> {
    validated(entries)?;
    let r0 = shortest_period(entries);
    let mut seq = entries[..r0].to_vec();
    let mut steps = Vec::new();
    let base_kind = loop {
        let p = seq.len();
        let ones = seq.iter().filter(|&&a| a == 1).count();
        if ones == 0 {
            break BaseKind::AllAtLeastTwo;
        }
        if p == 1 {
            break BaseKind::Triangle;
        }
        if p == 2 {
            let other = seq[0].max(seq[1]);
            break if other <= 3 { BaseKind::SmallFinite } else { BaseKind::OneAndLarge };
        }
        if (0..p).any(|i| seq[i] == 1 && seq[(i + 1) % p] == 1) {
            break BaseKind::AdjacentOnes;
        }
        let k = seq.iter().position(|&a| a == 1).unwrap();
        let mut reduced = seq.clone();
        reduced[(k + p - 1) % p] -= 1;
        reduced[(k + 1) % p] -= 1;
        reduced.remove(k);
        let r = shortest_period(&reduced);
        steps.push(ReductionStep { before: seq, removed: k, multiplicity: reduced.len() / r });
        reduced.truncate(r);
        seq = reduced;
    };
    Ok(ReductionTrace { initial_multiplicity: entries.len() / r0, steps, base: seq, base_kind })
}

/// Inner marked points used by the base realization, before multiplicities.
fn base_inner_points(base: &[u64], kind: BaseKind) -> u64 {
    match kind {
        BaseKind::OneAndLarge => base.iter().max().unwrap() - 4,
        _ => base.iter().map(|&b| b - 2).sum(),
    }
}

/// Smallest `N >= 3` where rows `N-3` and `N-2` are all 1 and all 0.
fn find_polygon_order(entries: &[u64]) -> Result<usize, ClassifyError> {
    let n = entries.len();
    let cap = n * ORDER_CAP_FACTOR;
    let f = fragment(&QuiddityRow::Periodic { entries: entries.to_vec() }, 0..=(n as i64 - 1), cap as i64);
    let zero = BigInt::from(0);
    for order in 3..=cap + 2 {
        let ones = f.row(order as i64 - 3).unwrap();
        let zeros = f.row(order as i64 - 2).unwrap();
        if ones.iter().all(One::is_one) && zeros.iter().all(|v| *v == zero) {
            return Ok(order);
        }
    }
    Err(ClassifyError::OrderCapExceeded { cap })
}

/// Order of the polygon obtained by re-inserting the removed ears, or `None`
/// when a step inserts one ear every `p-1` vertices into a polygon whose
/// order is not a multiple of `p-1`. The row is then not a frieze.
fn lifted_order(trace: &ReductionTrace) -> Option<usize> {
    let mut order = match trace.base_kind {
        BaseKind::Triangle => 3,
        BaseKind::SmallFinite if trace.base.contains(&2) => 4,
        BaseKind::SmallFinite => 6,
        _ => return None,
    };
    for step in trace.steps.iter().rev() {
        let reduced = step.before.len() - 1;
        if order % reduced != 0 {
            return None;
        }
        order += order / reduced;
    }
    Some(order)
}

fn first_nonpositive(entries: &[u64]) -> Option<(i64, i64)> {
    let n = entries.len();
    let f = fragment(
        &QuiddityRow::Periodic { entries: entries.to_vec() },
        0..=(n as i64 - 1),
        (n * ORDER_CAP_FACTOR) as i64,
    );
    f.first_nonpositive()
}

pub fn classify(entries: &[u64]) -> Result<Classification, ClassifyError> {
    let trace = reduce(entries)?;
    let shortest = shortest_period(entries);
    let outcome = match trace.base_kind {
        BaseKind::Triangle | BaseKind::SmallFinite => match lifted_order(&trace) {
            Some(polygon_order) => {
                debug_assert_eq!(polygon_order % shortest, 0);
                let full: Vec<u64> = (0..polygon_order).map(|i| entries[i % entries.len()]).collect();
                let witness = TriangulatedPolygon::from_quiddity(&full)?;
                Outcome::Finite { polygon_order, witness }
            }
            None => Outcome::NotAFrieze { witness: first_nonpositive(entries) },
        },
        BaseKind::OneAndLarge | BaseKind::AllAtLeastTwo => {
            let mult: u64 = trace.steps.iter().map(|s| s.multiplicity as u64).product::<u64>()
                * trace.initial_multiplicity as u64;
            Outcome::Infinite { minimal_inner_points: base_inner_points(&trace.base, trace.base_kind) * mult }
        }
        BaseKind::AdjacentOnes => Outcome::NotAFrieze { witness: first_nonpositive(entries) },
    };
    Ok(Classification { outcome, shortest_period: shortest, trace })
}

/// Inner marked points of the annulus realization built by
/// [`crate::annulus::realize`]; for a shortest-period input this is the
/// minimum over all realizations.
pub fn minimal_inner_points(entries: &[u64]) -> Result<u64, ClassifyError> {
    match classify(entries)?.outcome {
        Outcome::Infinite { minimal_inner_points } => Ok(minimal_inner_points),
        other => Err(ClassifyError::NotInfinite(other.name())),
    }
}

/// Smallest `N >= 3` such that rows `N-3` and `N-2` of the frieze are all
/// 1 and all 0.
pub fn polygon_order(entries: &[u64]) -> Result<usize, ClassifyError> {
    match classify(entries)?.outcome {
        Outcome::Finite { polygon_order, .. } => {
            let scanned = find_polygon_order(entries)?;
            assert_eq!(scanned, polygon_order, "ear count and frieze rows disagree for {entries:?}");
            assert_eq!(scanned % shortest_period(entries), 0);
            Ok(scanned)
        }
        other => Err(ClassifyError::NotFinite(other.name())),
    }
}

pub fn realize_polygon(entries: &[u64]) -> Result<TriangulatedPolygon, ClassifyError> {
    match classify(entries)?.outcome {
        Outcome::Finite { witness, .. } => Ok(witness),
        other => Err(ClassifyError::NotFinite(other.name())),
    }
}
