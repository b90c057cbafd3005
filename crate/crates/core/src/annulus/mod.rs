//! Marked annuli `A_{n,m}`: arcs, triangulations and their outer quiddity
//! sequences.
//!
//! Outer marked points are `1..=n`, inner ones `n+1..=n+m`. All geometry is
//! done in the universal cover, where outer point `i` lifts to the lower
//! integers `ℓ ≡ i-1 (mod n)` and inner point `n+1+ρ` to the upper integers
//! `u ≡ ρ (mod m)`. The deck transformation shifts `(ℓ, u)` by `(n, m)`.

mod cover;
mod disc;
mod realize;
mod surgery;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::classify::ClassifyError;

pub use cover::{CoverLayout, Lift};
pub use disc::{annulus0_to_disc, disc_to_annulus, DiscArc, PuncturedDisc};
pub use realize::{multiply_period, realize};
pub use surgery::{asymptotic_reduction, bump_realization};

/// Default bound on the winding number of bridging arcs.
pub const DEFAULT_WINDING_BOUND: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Boundary {
    Outer,
    Inner,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MarkedPoint {
    pub boundary: Boundary,
    pub index: usize,
}

/// Which way an asymptotic arc runs off in the cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AsymptoticKind {
    Pruefer,
    Adic,
}

impl AsymptoticKind {
    /// Cover direction at a point on `boundary`. Outer adic and inner
    /// Prüfer arcs run to the left.
    pub fn direction(self, boundary: Boundary) -> Direction {
        match (self, boundary) {
            (AsymptoticKind::Adic, Boundary::Outer) | (AsymptoticKind::Pruefer, Boundary::Inner) => Direction::Left,
            _ => Direction::Right,
        }
    }

    pub fn from_direction(dir: Direction, boundary: Boundary) -> Self {
        if AsymptoticKind::Adic.direction(boundary) == dir {
            AsymptoticKind::Adic
        } else {
            AsymptoticKind::Pruefer
        }
    }
}

/// An arc of `A_{n,m}` in canonical form.
///
/// A peripheral arc starts at `from` and runs `span` boundary segments in the
/// increasing direction; `span` equal to the number of points on that
/// boundary is a loop. A bridging arc lifts to `(outer-1, ρ + winding·m)` where
/// `inner = n+1+ρ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    Peripheral { boundary: Boundary, from: usize, span: usize },
    Bridging { outer: usize, inner: usize, winding: i64 },
    Asymptotic { at: usize, kind: AsymptoticKind },
}

impl Arc {
    /// Endpoint reached after `span` steps.
    pub fn peripheral_to(&self, n: usize, m: usize) -> Option<usize> {
        match *self {
            Arc::Peripheral { boundary: Boundary::Outer, from, span } => Some((from - 1 + span) % n + 1),
            Arc::Peripheral { boundary: Boundary::Inner, from, span } => Some((from - n - 1 + span) % m + n + 1),
            _ => None,
        }
    }

    pub fn is_bridging(&self) -> bool {
        matches!(self, Arc::Bridging { .. })
    }

    pub fn is_asymptotic(&self) -> bool {
        matches!(self, Arc::Asymptotic { .. })
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Peripheral { boundary, from, span } => {
                let side = if boundary == Boundary::Outer { "outer" } else { "inner" };
                write!(f, "{side} peripheral from {from} over {span} segments")
            }
            Arc::Bridging { outer, inner, winding } => write!(f, "bridging [{outer},{inner}] winding {winding}"),
            Arc::Asymptotic { at, kind: AsymptoticKind::Adic } => write!(f, "adic arc at {at}"),
            Arc::Asymptotic { at, kind: AsymptoticKind::Pruefer } => write!(f, "Prüfer arc at {at}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    InvalidArc { arc: Arc, reason: String },
    WindingTooLarge { arc: Arc, bound: i64 },
    Duplicate(Arc),
    Crossing(Arc, Arc),
    WrongCount { expected: usize, found: usize },
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::InvalidArc { arc, reason } => write!(f, "invalid arc ({arc}): {reason}"),
            Failure::WindingTooLarge { arc, bound } => write!(f, "{arc} exceeds winding bound {bound}"),
            Failure::Duplicate(a) => write!(f, "duplicate arc ({a})"),
            Failure::Crossing(a, b) => write!(f, "arcs cross: ({a}) and ({b})"),
            Failure::WrongCount { expected, found } => write!(f, "expected {expected} arcs, found {found}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriangulationReport {
    pub failures: Vec<Failure>,
}

impl TriangulationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for TriangulationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "ok");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnulusError {
    #[error("invalid triangulation: {0}")]
    Invalid(TriangulationReport),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("sequence is {0}, expected an infinite frieze")]
    NotInfinite(&'static str),
    #[error("multiplier must be at least 1")]
    ZeroMultiplier,
    #[error("outer index {0} out of range")]
    OuterIndex(usize),
    #[error("{0}")]
    Unsupported(String),
}

/// A collection of arcs on `A_{n,m}`; a triangulation once
/// [`AnnulusTriangulation::check`] passes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnulusTriangulation {
    pub n: usize,
    pub m: usize,
    pub arcs: Vec<Arc>,
    pub winding_bound: i64,
}

impl AnnulusTriangulation {
    pub fn new(n: usize, m: usize, arcs: Vec<Arc>) -> Self {
        AnnulusTriangulation { n, m, arcs, winding_bound: DEFAULT_WINDING_BOUND }
    }

    pub fn with_winding_bound(mut self, bound: i64) -> Self {
        self.winding_bound = bound;
        self
    }

    /// Sort arcs so equal triangulations compare equal.
    pub fn normalized(mut self) -> Self {
        self.arcs.sort();
        self
    }

    fn arc_problem(&self, arc: &Arc) -> Option<String> {
        let (n, m) = (self.n, self.m);
        let outer = |i: usize| (1..=n).contains(&i);
        let inner = |i: usize| (n + 1..=n + m).contains(&i);
        match *arc {
            Arc::Peripheral { boundary, from, span } => {
                let (ok, count) = match boundary {
                    Boundary::Outer => (outer(from), n),
                    Boundary::Inner => (inner(from), m),
                };
                if !ok {
                    Some(format!("point {from} is not on the {:?} boundary", boundary).to_lowercase())
                } else if span < 2 || span > count {
                    Some(format!("span {span} outside 2..={count}"))
                } else {
                    None
                }
            }
            Arc::Bridging { outer: o, inner: i, .. } => {
                if m == 0 {
                    Some("no inner marked points".into())
                } else if !outer(o) || !inner(i) {
                    Some(format!("endpoints {o}, {i} out of range"))
                } else {
                    None
                }
            }
            Arc::Asymptotic { at, .. } => (!outer(at) && !inner(at)).then(|| format!("point {at} out of range")),
        }
    }

    /// Compatibility, winding and arc-count checks.
    pub fn check(&self) -> TriangulationReport {
        let mut failures = Vec::new();
        if self.n == 0 {
            failures.push(Failure::WrongCount { expected: 0, found: self.arcs.len() });
            return TriangulationReport { failures };
        }
        let mut valid = Vec::new();
        let mut seen = BTreeSet::new();
        for arc in &self.arcs {
            if let Some(reason) = self.arc_problem(arc) {
                failures.push(Failure::InvalidArc { arc: *arc, reason });
                continue;
            }
            if let Arc::Bridging { winding, .. } = arc {
                if winding.abs() > self.winding_bound {
                    failures.push(Failure::WindingTooLarge { arc: *arc, bound: self.winding_bound });
                }
            }
            if !seen.insert(*arc) {
                failures.push(Failure::Duplicate(*arc));
                continue;
            }
            valid.push(*arc);
        }
        let max_w = valid
            .iter()
            .filter_map(|a| match a {
                Arc::Bridging { winding, .. } => Some(winding.abs()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
            .max(self.winding_bound);
        let radius = 2 * max_w + 4;
        let lifts: Vec<Lift> = valid.iter().map(|a| Lift::of(a, self.n, self.m)).collect();
        for (x, a) in lifts.iter().enumerate() {
            for (y, b) in lifts.iter().enumerate().skip(x) {
                let crossing = (-radius..=radius).filter(|&k| x != y || k != 0).any(|k| {
                    a.crosses(&b.translate(k, self.n as i64, self.m as i64))
                });
                if crossing {
                    failures.push(Failure::Crossing(valid[x], valid[y]));
                }
            }
        }
        if self.arcs.len() != self.n + self.m {
            failures.push(Failure::WrongCount { expected: self.n + self.m, found: self.arcs.len() });
        }
        TriangulationReport { failures }
    }

    pub fn validate(&self) -> Result<(), AnnulusError> {
        let report = self.check();
        if report.passed() {
            Ok(())
        } else {
            Err(AnnulusError::Invalid(report))
        }
    }

    /// Arc ends at each outer point, counting every translate.
    fn outer_degrees(&self) -> Vec<u64> {
        let mut deg = vec![0u64; self.n];
        for arc in &self.arcs {
            match *arc {
                Arc::Peripheral { boundary: Boundary::Outer, from, span } => {
                    deg[from - 1] += 1;
                    deg[(from - 1 + span) % self.n] += 1;
                }
                Arc::Bridging { outer, .. } => deg[outer - 1] += 1,
                Arc::Asymptotic { at, .. } if at <= self.n => deg[at - 1] += 1,
                _ => {}
            }
        }
        deg
    }

    /// Triangles at each outer point: one more than its number of arc ends.
    /// Does not validate; see [`outer_quiddity`].
    pub fn outer_quiddity_unchecked(&self) -> Vec<u64> {
        self.outer_degrees().into_iter().map(|d| d + 1).collect()
    }

    /// Number of bridging arcs at each outer point.
    pub fn bridging_degrees(&self) -> Vec<usize> {
        let mut r = vec![0; self.n];
        for arc in &self.arcs {
            if let Arc::Bridging { outer, .. } = arc {
                r[outer - 1] += 1;
            }
        }
        r
    }

    pub fn has_inner_peripheral(&self) -> bool {
        self.arcs.iter().any(|a| matches!(a, Arc::Peripheral { boundary: Boundary::Inner, .. }))
    }

    pub fn is_asymptotic(&self) -> bool {
        self.arcs.iter().any(Arc::is_asymptotic)
    }

    pub(crate) fn lifts(&self) -> Vec<Lift> {
        self.arcs.iter().map(|a| Lift::of(a, self.n, self.m)).collect()
    }

    pub(crate) fn from_lifts(n: usize, m: usize, lifts: &[Lift]) -> Self {
        let arcs = lifts.iter().map(|l| l.to_arc(n, m)).collect();
        AnnulusTriangulation::new(n, m, arcs).normalized()
    }
}

/// The outer quiddity sequence of a valid triangulation.
pub fn outer_quiddity(t: &AnnulusTriangulation) -> Result<Vec<u64>, AnnulusError> {
    t.validate()?;
    Ok(t.outer_quiddity_unchecked())
}

pub fn check_triangulation(t: &AnnulusTriangulation) -> TriangulationReport {
    t.check()
}
