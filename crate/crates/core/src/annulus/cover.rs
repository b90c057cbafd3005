use super::{Arc, AsymptoticKind, Boundary, Direction, MarkedPoint};

/// An arc lifted to the universal cover. Lower endpoints are integers `ℓ`,
/// upper endpoints integers `u`; peripheral lifts store `(left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lift {
    Lower(i64, i64),
    Upper(i64, i64),
    Bridge { lower: i64, upper: i64 },
    LowerAsym { at: i64, dir: Direction },
    UpperAsym { at: i64, dir: Direction },
}

impl Lift {
    /// The canonical lift of `arc` on `A_{n,m}`.
    pub fn of(arc: &Arc, n: usize, m: usize) -> Lift {
        let n1 = n as i64 + 1;
        match *arc {
            Arc::Peripheral { boundary: Boundary::Outer, from, span } => {
                let a = from as i64 - 1;
                Lift::Lower(a, a + span as i64)
            }
            Arc::Peripheral { boundary: Boundary::Inner, from, span } => {
                let a = from as i64 - n1;
                Lift::Upper(a, a + span as i64)
            }
            Arc::Bridging { outer, inner, winding } => Lift::Bridge {
                lower: outer as i64 - 1,
                upper: inner as i64 - n1 + winding * m as i64,
            },
            Arc::Asymptotic { at, kind } if at <= n => {
                Lift::LowerAsym { at: at as i64 - 1, dir: kind.direction(Boundary::Outer) }
            }
            Arc::Asymptotic { at, kind } => {
                Lift::UpperAsym { at: at as i64 - n1, dir: kind.direction(Boundary::Inner) }
            }
        }
    }

    /// Project back to an arc of `A_{n,m}`.
    pub fn to_arc(&self, n: usize, m: usize) -> Arc {
        let (ni, mi) = (n as i64, m as i64);
        let outer = |l: i64| (l.rem_euclid(ni) + 1) as usize;
        let inner = |u: i64| (u.rem_euclid(mi) + ni + 1) as usize;
        match *self {
            Lift::Lower(a, b) => Arc::Peripheral { boundary: Boundary::Outer, from: outer(a), span: (b - a) as usize },
            Lift::Upper(a, b) => Arc::Peripheral { boundary: Boundary::Inner, from: inner(a), span: (b - a) as usize },
            Lift::Bridge { lower, upper } => {
                let q = lower.div_euclid(ni);
                let u = upper - q * mi;
                Arc::Bridging { outer: outer(lower), inner: inner(u), winding: u.div_euclid(mi) }
            }
            Lift::LowerAsym { at, dir } => {
                Arc::Asymptotic { at: outer(at), kind: AsymptoticKind::from_direction(dir, Boundary::Outer) }
            }
            Lift::UpperAsym { at, dir } => {
                Arc::Asymptotic { at: inner(at), kind: AsymptoticKind::from_direction(dir, Boundary::Inner) }
            }
        }
    }

    /// Apply the deck transformation `k` times.
    pub fn translate(&self, k: i64, n: i64, m: i64) -> Lift {
        let (dl, du) = (k * n, k * m);
        match *self {
            Lift::Lower(a, b) => Lift::Lower(a + dl, b + dl),
            Lift::Upper(a, b) => Lift::Upper(a + du, b + du),
            Lift::Bridge { lower, upper } => Lift::Bridge { lower: lower + dl, upper: upper + du },
            Lift::LowerAsym { at, dir } => Lift::LowerAsym { at: at + dl, dir },
            Lift::UpperAsym { at, dir } => Lift::UpperAsym { at: at + du, dir },
        }
    }

    /// Whether the two lifts have no disjoint representatives.
    pub fn crosses(&self, other: &Lift) -> bool {
        use Lift::*;
        let inside = |x: i64, a: i64, b: i64| a < x && x < b;
        let interleave = |a: i64, b: i64, c: i64, d: i64| (a < c && c < b && b < d) || (c < a && a < d && d < b);
        match (*self, *other) {
            (Lower(a, b), Lower(c, d)) | (Upper(a, b), Upper(c, d)) => interleave(a, b, c, d),
            (Lower(..), Upper(..)) | (Upper(..), Lower(..)) => false,
            (Bridge { lower: l1, upper: u1 }, Bridge { lower: l2, upper: u2 }) => (l1 - l2) * (u1 - u2) < 0,
            (Bridge { lower, .. }, Lower(a, b)) | (Lower(a, b), Bridge { lower, .. }) => inside(lower, a, b),
            (Bridge { upper, .. }, Upper(a, b)) | (Upper(a, b), Bridge { upper, .. }) => inside(upper, a, b),
            (Bridge { .. }, LowerAsym { .. } | UpperAsym { .. })
            | (LowerAsym { .. } | UpperAsym { .. }, Bridge { .. }) => true,
            (LowerAsym { dir: d1, .. } | UpperAsym { dir: d1, .. }, LowerAsym { dir: d2, .. } | UpperAsym { dir: d2, .. }) => {
                d1 != d2
            }
            (LowerAsym { at, .. }, Lower(a, b)) | (Lower(a, b), LowerAsym { at, .. }) => inside(at, a, b),
            (UpperAsym { at, .. }, Upper(a, b)) | (Upper(a, b), UpperAsym { at, .. }) => inside(at, a, b),
            (LowerAsym { .. }, Upper(..))
            | (Upper(..), LowerAsym { .. })
            | (UpperAsym { .. }, Lower(..))
            | (Lower(..), UpperAsym { .. }) => false,
        }
    }
}

/// Coordinates of the cut-open universal cover: lower lifts at height 0,
/// upper lifts at height 1, with one fundamental domain `width` wide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverLayout {
    pub n: usize,
    pub m: usize,
}

impl CoverLayout {
    pub fn new(n: usize, m: usize) -> Self {
        CoverLayout { n, m }
    }

    pub fn width(&self) -> i64 {
        (self.n * self.m.max(1)) as i64
    }

    pub fn lower_x(&self, l: i64) -> i64 {
        l * self.m.max(1) as i64
    }

    pub fn upper_x(&self, u: i64) -> i64 {
        u * self.n as i64
    }

    /// The `k`-th lift of a marked point, as `(x, height)`.
    pub fn lift(&self, p: MarkedPoint, k: i64) -> (i64, i64) {
        match p.boundary {
            Boundary::Outer => (self.lower_x(p.index as i64 - 1 + k * self.n as i64), 0),
            Boundary::Inner => (self.upper_x(p.index as i64 - self.n as i64 - 1 + k * self.m as i64), 1),
        }
    }

    pub fn project(&self, (x, height): (i64, i64)) -> Option<MarkedPoint> {
        if height == 0 {
            let step = self.m.max(1) as i64;
            (x % step == 0).then(|| MarkedPoint {
                boundary: Boundary::Outer,
                index: ((x / step).rem_euclid(self.n as i64) + 1) as usize,
            })
        } else if height == 1 && self.m > 0 {
            let step = self.n as i64;
            (x % step == 0).then(|| MarkedPoint {
                boundary: Boundary::Inner,
                index: ((x / step).rem_euclid(self.m as i64) + self.n as i64 + 1) as usize,
            })
        } else {
            None
        }
    }
}
