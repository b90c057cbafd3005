//! Triangulations of the infinite strip of height one, stored on a finite
//! stretch of the lower boundary.
//!
//! Lower vertices are the integers in `lower`; upper vertices sit at rational
//! positions. Outside the stored stretch the quiddity row reads 2.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use thiserror::Error;

use crate::annulus::{AnnulusTriangulation, Direction, Lift};
use crate::row::QuiddityRow;

/// Default number of untouched padding vertices kept beyond the peeling
/// reach on each side.
pub const DEFAULT_MARGIN: i64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StripError {
    #[error("strip realization needs a windowed row")]
    NotWindowed,
    #[error("adjacent entries equal to 1 at {position} and its right neighbour: not a frieze")]
    AdjacentOnes { position: i64 },
    #[error("entry at {position} drops to 0 while peeling: not a frieze")]
    ZeroEntry { position: i64 },
    #[error("peeling did not stabilize within {rounds} rounds")]
    RoundLimitExceeded { rounds: usize },
    #[error("range {i}..={j} is outside the core {core_lo}..={core_hi}")]
    OutsideCore { i: i64, j: i64, core_lo: i64, core_hi: i64 },
    #[error("invalid strip triangulation: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Lower(i64),
    /// Index into [`StripTriangulation::upper`].
    Upper(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StripArc {
    Lower(i64, i64),
    Upper(usize, usize),
    Bridge { lower: i64, upper: usize },
}

impl StripArc {
    fn ends(&self) -> (Vertex, Vertex) {
        match *self {
            StripArc::Lower(a, b) => (Vertex::Lower(a), Vertex::Lower(b)),
            StripArc::Upper(a, b) => (Vertex::Upper(a), Vertex::Upper(b)),
            StripArc::Bridge { lower, upper } => (Vertex::Lower(lower), Vertex::Upper(upper)),
        }
    }

    fn crosses(&self, other: &StripArc) -> bool {
        use StripArc::*;
        let inside = |x: i64, a: i64, b: i64| a < x && x < b;
        let interleave = |a: i64, b: i64, c: i64, d: i64| (a < c && c < b && b < d) || (c < a && a < d && d < b);
        match (*self, *other) {
            (Lower(a, b), Lower(c, d)) => interleave(a, b, c, d),
            (Upper(a, b), Upper(c, d)) => interleave(a as i64, b as i64, c as i64, d as i64),
            (Bridge { lower: l1, upper: u1 }, Bridge { lower: l2, upper: u2 }) => {
                (l1 - l2) * (u1 as i64 - u2 as i64) < 0
            }
            (Bridge { lower, .. }, Lower(a, b)) | (Lower(a, b), Bridge { lower, .. }) => inside(lower, a, b),
            (Bridge { upper, .. }, Upper(a, b)) | (Upper(a, b), Bridge { upper, .. }) => {
                inside(upper as i64, a as i64, b as i64)
            }
            (Lower(..), Upper(..)) | (Upper(..), Lower(..)) => false,
        }
    }
}

/// A face, with its corners sorted.
pub type Triangle = [Vertex; 3];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripTriangulation {
    /// The quiddity row the triangulation was built for.
    pub row: QuiddityRow,
    /// Stored lower vertices `lower.0..=lower.1`.
    pub lower: (i64, i64),
    /// Upper vertex positions, increasing.
    pub upper: Vec<Ratio<i64>>,
    pub arcs: Vec<StripArc>,
    /// Lower vertices whose incident triangles are all stored.
    pub core: (i64, i64),
    /// How far peeling reached beyond the row window.
    pub spill: i64,
}

/// Iterative removal of the entries equal to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelingState {
    round: usize,
    /// Surviving `(index, reduced entry)`, first and last are untouched 2s.
    surviving: Vec<(i64, u64)>,
    layers: Vec<Vec<(i64, i64)>>,
    touched: (i64, i64),
}

impl PeelingState {
    pub fn new(lo: i64, entries: &[u64]) -> Self {
        let mut surviving = vec![(lo - 1, 2)];
        surviving.extend(entries.iter().enumerate().map(|(k, &a)| (lo + k as i64, a)));
        surviving.push((lo + entries.len() as i64, 2));
        PeelingState { round: 0, surviving, layers: Vec::new(), touched: (lo, lo + entries.len() as i64 - 1) }
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn surviving(&self) -> &[(i64, u64)] {
        &self.surviving
    }

    /// Peripheral arcs added in each round.
    pub fn layers(&self) -> &[Vec<(i64, i64)>] {
        &self.layers
    }

    /// Smallest and largest index changed so far (the row window included).
    pub fn touched(&self) -> (i64, i64) {
        self.touched
    }

    pub fn is_done(&self) -> bool {
        self.surviving.iter().all(|&(_, a)| a != 1)
    }

    fn ensure_sentinels(&mut self) {
        let (first, last) = (self.surviving[0], *self.surviving.last().unwrap());
        if first.1 != 2 || first.0 >= self.touched.0 {
            self.surviving.insert(0, (first.0.min(self.touched.0) - 1, 2));
        }
        if last.1 != 2 || last.0 <= self.touched.1 {
            self.surviving.push((last.0.max(self.touched.1) + 1, 2));
        }
    }

    /// Peel every current 1 at once; `Ok(false)` when none is left.
    pub fn step(&mut self) -> Result<bool, StripError> {
        let s = &self.surviving;
        if let Some(w) = s.windows(2).find(|w| w[0].1 == 1 && w[1].1 == 1) {
            return Err(StripError::AdjacentOnes { position: w[0].0 });
        }
        let ones: Vec<usize> = (0..s.len()).filter(|&p| s[p].1 == 1).collect();
        if ones.is_empty() {
            return Ok(false);
        }
        let mut layer = Vec::with_capacity(ones.len());
        for &p in &ones {
            let (left, right) = (p - 1, p + 1);
            layer.push((self.surviving[left].0, self.surviving[right].0));
            for q in [left, right] {
                let (idx, val) = &mut self.surviving[q];
                if *val == 1 {
                    return Err(StripError::ZeroEntry { position: *idx });
                }
                *val -= 1;
                self.touched = (self.touched.0.min(*idx), self.touched.1.max(*idx));
            }
        }
        for &p in ones.iter().rev() {
            if self.surviving[p].1 == 0 {
                return Err(StripError::ZeroEntry { position: self.surviving[p].0 });
            }
            self.surviving.remove(p);
        }
        if let Some(&(position, _)) = self.surviving.iter().find(|&&(_, a)| a == 0) {
            return Err(StripError::ZeroEntry { position });
        }
        self.layers.push(layer);
        self.round += 1;
        self.ensure_sentinels();
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StripOptions {
    pub margin: i64,
    /// Overrides the default cap of `10·len + 100` peeling rounds.
    pub peel_cap: Option<usize>,
}

impl Default for StripOptions {
    fn default() -> Self {
        StripOptions { margin: DEFAULT_MARGIN, peel_cap: None }
    }
}

pub fn realize_strip(q: &QuiddityRow) -> Result<StripTriangulation, StripError> {
    realize_strip_with(q, StripOptions::default())
}

/// Peel the 1s round by round, then join what is left with a fan of bridging
/// arcs: `c-2` new upper vertices above each surviving entry `c`.
pub fn realize_strip_with(q: &QuiddityRow, opts: StripOptions) -> Result<StripTriangulation, StripError> {
    let (lo, hi) = q.window().ok_or(StripError::NotWindowed)?;
    let cap = opts.peel_cap.unwrap_or(10 * q.entries().len() + 100);
    let mut state = PeelingState::new(lo, q.entries());
    while state.step()? {
        if state.round() > cap {
            return Err(StripError::RoundLimitExceeded { rounds: cap });
        }
    }
    let (tl, tr) = state.touched();
    let margin = opts.margin.max(1);
    let (l, r) = (tl.min(lo) - margin, tr.max(hi) + margin);
    let spill = (lo - tl).max(tr - hi).max(0);

    let mut arcs: Vec<StripArc> =
        state.layers().iter().flatten().map(|&(a, b)| StripArc::Lower(a, b)).collect();
    let reduced: BTreeMap<i64, u64> = state.surviving().iter().copied().collect();
    let surviving: Vec<(i64, u64)> = (l..=r)
        .filter_map(|x| match reduced.get(&x) {
            Some(&c) => Some((x, c)),
            None if x < tl || x > tr => Some((x, 2)),
            None => None,
        })
        .collect();

    let mut upper = Vec::new();
    let mut group_start = Vec::with_capacity(surviving.len());
    for &(x, c) in &surviving {
        group_start.push(upper.len());
        let c = c as i64;
        upper.extend((1..=c - 2).map(|k| Ratio::new(x * (c - 1) + k, c - 1)));
    }
    upper.push(Ratio::from_integer(r + 1));
    for (idx, &(x, c)) in surviving.iter().enumerate() {
        let start = group_start[idx];
        // own group, then the first vertex of the next nonempty group
        for u in start..=start + (c as usize - 2) {
            arcs.push(StripArc::Bridge { lower: x, upper: u });
        }
    }
    arcs.sort();
    let t = StripTriangulation { row: q.clone(), lower: (l, r), upper, arcs, core: (l + 1, r - 1), spill };
    debug_assert!(t.check().is_ok(), "{:?}", t.check());
    Ok(t)
}

impl StripTriangulation {
    pub fn check(&self) -> Result<(), StripError> {
        let (l, r) = self.lower;
        let nu = self.upper.len();
        if self.upper.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StripError::Invalid("upper positions not increasing".into()));
        }
        let mut seen = BTreeSet::new();
        for arc in &self.arcs {
            let ok = match *arc {
                StripArc::Lower(a, b) => l <= a && a + 1 < b && b <= r,
                StripArc::Upper(a, b) => a + 1 < b && b < nu,
                StripArc::Bridge { lower, upper } => l <= lower && lower <= r && upper < nu,
            };
            if !ok {
                return Err(StripError::Invalid(format!("arc {arc:?} out of range")));
            }
            if !seen.insert(*arc) {
                return Err(StripError::Invalid(format!("duplicate arc {arc:?}")));
            }
        }
        for (x, a) in self.arcs.iter().enumerate() {
            if let Some(b) = self.arcs[x + 1..].iter().find(|b| a.crosses(b)) {
                return Err(StripError::Invalid(format!("arcs {a:?} and {b:?} cross")));
            }
        }
        Ok(())
    }

    fn neighbours(&self) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        let mut add = |a: Vertex, b: Vertex| {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        };
        for x in self.lower.0..self.lower.1 {
            add(Vertex::Lower(x), Vertex::Lower(x + 1));
        }
        for u in 1..self.upper.len() {
            add(Vertex::Upper(u - 1), Vertex::Upper(u));
        }
        for arc in &self.arcs {
            let (a, b) = arc.ends();
            add(a, b);
        }
        adj
    }

    fn check_core(&self, i: i64, j: i64) -> Result<(), StripError> {
        let (core_lo, core_hi) = self.core;
        if i < core_lo || j > core_hi || i > j {
            return Err(StripError::OutsideCore { i, j, core_lo, core_hi });
        }
        Ok(())
    }

    /// Faces with a corner among the lower vertices `i..=j`. In the strip
    /// every 3-cycle of arcs and boundary segments bounds a face.
    pub fn triangles_in_range(&self, i: i64, j: i64) -> Result<Vec<Triangle>, StripError> {
        self.check_core(i, j)?;
        let adj = self.neighbours();
        let mut out = BTreeSet::new();
        for x in i..=j {
            let v = Vertex::Lower(x);
            let Some(ns) = adj.get(&v) else { continue };
            let ns: Vec<Vertex> = ns.iter().copied().collect();
            for (p, &a) in ns.iter().enumerate() {
                for &b in &ns[p + 1..] {
                    if adj[&a].contains(&b) {
                        let mut tri = [v, a, b];
                        tri.sort();
                        out.insert(tri);
                    }
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// Triangles at each lower vertex of `i..=j`.
    pub fn strip_quiddity(&self, i: i64, j: i64) -> Result<Vec<u64>, StripError> {
        let tris = self.triangles_in_range(i, j)?;
        Ok((i..=j)
            .map(|x| tris.iter().filter(|t| t.contains(&Vertex::Lower(x))).count() as u64)
            .collect())
    }

    pub fn has_lower_peripheral(&self) -> bool {
        self.arcs.iter().any(|a| matches!(a, StripArc::Lower(..)))
    }

    /// The universal cover of an annulus triangulation over `copies`
    /// fundamental domains. Asymptotic arcs become bridging arcs to a single
    /// upper vertex far to the side they run off to; the inner boundary is
    /// then dropped.
    pub fn from_annulus(t: &AnnulusTriangulation, copies: usize) -> Result<Self, StripError> {
        t.validate().map_err(|e| StripError::Invalid(e.to_string()))?;
        let (n, m) = (t.n as i64, t.m as i64);
        let copies = copies.max(3) as i64;
        let (l, r) = (0, copies * n);
        let lifts = t.lifts();
        let translates = |lift: &Lift| {
            let lift = *lift;
            (-1..=copies + 1).map(move |k| lift.translate(k, n, m))
        };
        let mut lower_arcs = Vec::new();
        let mut bridges = Vec::new();
        let mut upper_arcs = Vec::new();
        let mut asym = Vec::new();
        for lift in &lifts {
            for x in translates(lift) {
                match x {
                    Lift::Lower(a, b) if l <= a && b <= r => lower_arcs.push((a, b)),
                    Lift::Bridge { lower, upper } if (l..=r).contains(&lower) => bridges.push((lower, upper)),
                    Lift::Upper(a, b) => upper_arcs.push((a, b)),
                    Lift::LowerAsym { at, dir } if (l..=r).contains(&at) => asym.push((at, dir)),
                    _ => {}
                }
            }
        }
        let row_entries: Vec<u64> =
            (l..=r).map(|x| t.outer_quiddity_unchecked()[x.rem_euclid(n) as usize]).collect();
        let row = QuiddityRow::Windowed { lo: l, entries: row_entries };
        let mut arcs: Vec<StripArc> = lower_arcs.iter().map(|&(a, b)| StripArc::Lower(a, b)).collect();
        let upper: Vec<Ratio<i64>>;
        if !asym.is_empty() {
            let far = match asym[0].1 {
                Direction::Left => Ratio::from_integer(l - 1),
                Direction::Right => Ratio::from_integer(r + 1),
            };
            upper = vec![far];
            arcs.extend(asym.iter().map(|&(at, _)| StripArc::Bridge { lower: at, upper: 0 }));
        } else {
            let (umin, umax) = bridges.iter().fold((i64::MAX, i64::MIN), |(a, b), &(_, u)| (a.min(u), b.max(u)));
            upper = (umin..=umax).map(|u| Ratio::new(u * n, m)).collect();
            arcs.extend(bridges.iter().map(|&(lower, u)| StripArc::Bridge { lower, upper: (u - umin) as usize }));
            arcs.extend(
                upper_arcs
                    .iter()
                    .filter(|&&(a, b)| umin <= a && b <= umax)
                    .map(|&(a, b)| StripArc::Upper((a - umin) as usize, (b - umin) as usize)),
            );
        }
        arcs.sort();
        arcs.dedup();
        let s = StripTriangulation { row, lower: (l, r), upper, arcs, core: (n, (copies - 1) * n), spill: 0 };
        s.check()?;
        Ok(s)
    }
}
