//! Local modifications of triangulations: raising one quiddity entry, and
//! trading bridging arcs for asymptotic ones.

use std::collections::BTreeSet;

use super::{AnnulusError, AnnulusTriangulation, Arc, AsymptoticKind, Boundary, Lift};

/// Keep the outer peripheral and outer asymptotic arcs, put an adic arc at
/// every outer point carrying a bridging arc, and forget the inner boundary.
/// The result lives on `A_{n,0}` and has `b_i = a_i - max(r_i - 1, 0)` where
/// `r_i` counts bridging arcs at `i`.
pub fn asymptotic_reduction(t: &AnnulusTriangulation) -> Result<AnnulusTriangulation, AnnulusError> {
    t.validate()?;
    let mut arcs: Vec<Arc> = t
        .arcs
        .iter()
        .copied()
        .filter(|a| match a {
            Arc::Peripheral { boundary, .. } => *boundary == Boundary::Outer,
            Arc::Asymptotic { at, .. } => *at <= t.n,
            Arc::Bridging { .. } => false,
        })
        .collect();
    for (i, &r) in t.bridging_degrees().iter().enumerate() {
        if r > 0 {
            arcs.push(Arc::Asymptotic { at: i + 1, kind: AsymptoticKind::Adic });
        }
    }
    Ok(AnnulusTriangulation::new(t.n, 0, arcs).normalized().with_winding_bound(t.winding_bound))
}

/// Working copy of a triangulation as canonical lifts.
struct Cover {
    n: i64,
    m: i64,
    lifts: Vec<Lift>,
}

impl Cover {
    fn of(t: &AnnulusTriangulation) -> Self {
        Cover { n: t.n as i64, m: t.m as i64, lifts: t.lifts() }
    }

    /// Upper endpoints of bridging lifts whose lower end is `l`.
    fn bridges_at(&self, l: i64) -> Vec<i64> {
        let mut out: Vec<i64> = self
            .lifts
            .iter()
            .filter_map(|lift| match *lift {
                Lift::Bridge { lower, upper } if (l - lower).rem_euclid(self.n) == 0 => {
                    Some(upper + (l - lower) / self.n * self.m)
                }
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Left ends of lower peripheral lifts ending at `l`.
    fn lower_ending_at(&self, l: i64) -> Vec<i64> {
        self.lifts
            .iter()
            .filter_map(|lift| match *lift {
                Lift::Lower(a, b) if (l - b).rem_euclid(self.n) == 0 => Some(a + (l - b)),
                _ => None,
            })
            .collect()
    }

    /// Lower peripheral lifts strictly covering `l`, as (index, left, right).
    fn lower_covering(&self, l: i64) -> Vec<(usize, i64, i64)> {
        self.lifts
            .iter()
            .enumerate()
            .filter_map(|(idx, lift)| match *lift {
                Lift::Lower(a, b) => {
                    let c = (l - a - 1).div_euclid(self.n);
                    let (a, b) = (a + c * self.n, b + c * self.n);
                    (a < l && l < b).then_some((idx, a, b))
                }
                _ => None,
            })
            .collect()
    }

    /// Right ends of upper peripheral lifts starting at `u`.
    fn upper_starting_at(&self, u: i64) -> Vec<i64> {
        self.lifts
            .iter()
            .filter_map(|lift| match *lift {
                Lift::Upper(a, b) if (u - a).rem_euclid(self.m) == 0 => Some(b + (u - a)),
                _ => None,
            })
            .collect()
    }

    fn upper_index(&self, a: i64, b: i64) -> Option<usize> {
        self.lifts.iter().position(|lift| match *lift {
            Lift::Upper(x, y) => y - x == b - a && (a - x).rem_euclid(self.m) == 0,
            _ => false,
        })
    }

    fn finish(self, m: usize, bound: i64) -> AnnulusTriangulation {
        AnnulusTriangulation::from_lifts(self.n as usize, m, &self.lifts).with_winding_bound(bound)
    }
}

/// `insert` new upper points right after the point of residue `rho`
/// (`rho = -1` inserts before residue 0).
fn upper_map(u: i64, m: i64, rho: i64, insert: i64) -> i64 {
    let (q, r) = (u.div_euclid(m), u.rem_euclid(m));
    q * (m + insert) + r + if r > rho { insert } else { 0 }
}

/// A triangulation whose outer quiddity agrees with that of `t` except for
/// one more triangle at outer point `j`.
pub fn bump_realization(t: &AnnulusTriangulation, j: usize) -> Result<AnnulusTriangulation, AnnulusError> {
    t.validate()?;
    if j == 0 || j > t.n {
        return Err(AnnulusError::OuterIndex(j));
    }
    let cover = Cover::of(t);
    let lj = j as i64 - 1;
    let at_j = cover.bridges_at(lj);
    let asym_at_j = cover.lifts.iter().any(|l| matches!(*l, Lift::LowerAsym { at, .. } if at == lj));
    let out = if asym_at_j {
        asymptotic_at_j(cover, lj, t.winding_bound)
    } else if at_j.len() >= 2 {
        several_bridges(cover, lj, &at_j, t.winding_bound)
    } else if at_j.len() == 1 {
        one_bridge(cover, lj, at_j[0], t.winding_bound)?
    } else {
        only_peripheral(cover, lj, t.winding_bound)?
    };
    Ok(out)
}

/// Replace the outer asymptotic arcs by bridging arcs to a single inner
/// point; `j` gets a second one. Inner points are kept and fanned out.
fn asymptotic_at_j(cover: Cover, lj: i64, bound: i64) -> AnnulusTriangulation {
    let (n, m) = (cover.n, cover.m.max(1));
    let mut lifts = Vec::new();
    for lift in cover.lifts {
        match lift {
            Lift::Lower(..) => lifts.push(lift),
            Lift::LowerAsym { at, .. } => lifts.push(Lift::Bridge { lower: lj + (at - lj).rem_euclid(n), upper: 0 }),
            _ => {}
        }
    }
    lifts.push(Lift::Bridge { lower: lj + n, upper: 0 });
    lifts.extend((2..=m).map(|x| Lift::Upper(0, x)));
    AnnulusTriangulation::from_lifts(n as usize, m as usize, &lifts).with_winding_bound(bound)
}

/// Flip an inner arc of a triangle at `j`, or split one of its inner
/// boundary segments.
fn several_bridges(mut cover: Cover, lj: i64, uppers: &[i64], bound: i64) -> AnnulusTriangulation {
    let m = cover.m;
    for w in uppers.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a >= 2 {
            let apex = cover.upper_starting_at(a).into_iter().filter(|&x| x < b).max().unwrap_or(a + 1);
            let gamma = cover.upper_index(a, b).expect("inner side of the triangle is an arc");
            cover.lifts[gamma] = Lift::Bridge { lower: lj, upper: apex };
            return cover.finish(m as usize, bound);
        }
    }
    let rho = uppers[0].rem_euclid(m);
    let map = |u: i64| upper_map(u, m, rho, 1);
    let mut lifts: Vec<Lift> = cover.lifts.iter().map(|l| remap_upper(*l, map)).collect();
    lifts.push(Lift::Bridge { lower: lj, upper: map(uppers[0]) + 1 });
    cover.lifts = lifts;
    cover.finish(m as usize + 1, bound)
}

fn remap_upper(lift: Lift, map: impl Fn(i64) -> i64) -> Lift {
    match lift {
        Lift::Upper(a, b) => Lift::Upper(map(a), map(b)),
        Lift::Bridge { lower, upper } => Lift::Bridge { lower, upper: map(upper) },
        Lift::UpperAsym { at, dir } => Lift::UpperAsym { at: map(at), dir },
        other => other,
    }
}

/// `j` has the single bridging arc `(lj, r)`: add an inner point just left
/// of `r`, move the part of the fan at `r` left of the triangle at `j` onto
/// it, and join it to `j`.
fn one_bridge(mut cover: Cover, lj: i64, r: i64, bound: i64) -> Result<AnnulusTriangulation, AnnulusError> {
    let (n, m) = (cover.n, cover.m);
    let p = cover.lower_ending_at(lj).into_iter().chain([lj - 1]).min().unwrap();
    if !cover.bridges_at(p).contains(&r) {
        return Err(AnnulusError::Unsupported(format!("no triangle left of the bridging arc at {}", lj + 1)));
    }
    let rho = r.rem_euclid(m);
    let map = |u: i64| upper_map(u, m, rho - 1, 1);
    let at_r = |u: i64| (u - r).rem_euclid(m) == 0;
    let mut lifts: Vec<Lift> = cover
        .lifts
        .iter()
        .map(|l| match *l {
            Lift::Bridge { lower, upper } if at_r(upper) && lower - (upper - r) / m * n <= p => {
                Lift::Bridge { lower, upper: map(upper) - 1 }
            }
            Lift::Upper(a, b) if at_r(b) => Lift::Upper(map(a), map(b) - 1),
            other => remap_upper(other, map),
        })
        .collect();
    lifts.push(Lift::Bridge { lower: lj, upper: map(r) - 1 });
    cover.lifts = lifts;
    Ok(cover.finish(m as usize + 1, bound))
}

/// Lower path under the peripheral arcs over `j`: the vertices `P_0 < … <
/// P_K` with the number of removed arc ends at each.
struct Staircase {
    removed: BTreeSet<usize>,
    path: Vec<(i64, usize)>,
}

impl Staircase {
    fn over(cover: &Cover, lj: i64) -> Result<Self, AnnulusError> {
        let covering = cover.lower_covering(lj);
        if covering.is_empty() {
            return Err(AnnulusError::Unsupported(format!("outer point {} touches no arc", lj + 1)));
        }
        let mut ends = std::collections::BTreeMap::new();
        ends.insert(lj, 0usize);
        for &(_, a, b) in &covering {
            *ends.entry(a).or_insert(0) += 1;
            *ends.entry(b).or_insert(0) += 1;
        }
        Ok(Staircase { removed: covering.iter().map(|c| c.0).collect(), path: ends.into_iter().collect() })
    }

    fn k(&self) -> usize {
        self.removed.len()
    }

    /// Bridging lifts triangulating the region between the lower path and
    /// the upper points `top(0..=k+1)`, except the two outer sides.
    fn bridges(&self, lj: i64, top: impl Fn(i64) -> i64) -> Vec<Lift> {
        let last = self.path.len() - 1;
        let t = self.k() as i64 + 1;
        let mut out = Vec::new();
        let mut s = 0i64;
        for (i, &(p, delta)) in self.path.iter().enumerate() {
            let e = delta as i64 + i64::from(i == 0) + i64::from(i == last) + i64::from(p == lj);
            for x in s..s + e {
                if !((i == 0 && x == 0) || (i == last && x == t)) {
                    out.push(Lift::Bridge { lower: p, upper: top(x) });
                }
            }
            s += e - 1;
        }
        debug_assert_eq!(s, t);
        out
    }
}

/// Only peripheral arcs at `j`: replace the `k` arcs over `j` by a staircase
/// of bridging arcs to `k+1` new inner points.
fn only_peripheral(mut cover: Cover, lj: i64, bound: i64) -> Result<AnnulusTriangulation, AnnulusError> {
    let (n, m) = (cover.n, cover.m);
    let stairs = Staircase::over(&cover, lj)?;
    let (left, right) = (stairs.path[0].0, stairs.path.last().unwrap().0);
    let t = stairs.k() as i64 + 1;
    if cover.is_asymptotic() {
        // outer asymptotic points left of j go to inner point 0, those right
        // of j to its next lift, with k new inner points in between
        let mut lifts = Vec::new();
        for (idx, lift) in cover.lifts.iter().enumerate() {
            match *lift {
                Lift::Lower(..) if !stairs.removed.contains(&idx) => lifts.push(*lift),
                Lift::LowerAsym { at, .. } => {
                    lifts.push(Lift::Bridge { lower: lj - n + (at - lj).rem_euclid(n), upper: 0 })
                }
                _ => {}
            }
        }
        lifts.extend(stairs.bridges(lj, |s| s));
        return Ok(AnnulusTriangulation::from_lifts(n as usize, t as usize, &lifts).with_winding_bound(bound));
    }
    let from_left: BTreeSet<i64> = cover.bridges_at(left).into_iter().collect();
    let r = cover
        .bridges_at(right)
        .into_iter()
        .find(|u| from_left.contains(u))
        .ok_or_else(|| AnnulusError::Unsupported(format!("no triangle above the arcs over {}", lj + 1)))?;
    let rho = r.rem_euclid(m);
    let map = |u: i64| upper_map(u, m, rho, t);
    let at_r = |u: i64| (u - r).rem_euclid(m) == 0;
    let mut lifts: Vec<Lift> = cover
        .lifts
        .iter()
        .enumerate()
        .filter(|(idx, _)| !stairs.removed.contains(idx))
        .map(|(_, l)| match *l {
            Lift::Bridge { lower, upper } if at_r(upper) && lower - (upper - r) / m * n > left => {
                Lift::Bridge { lower, upper: map(upper) + t }
            }
            Lift::Upper(a, b) if at_r(a) => Lift::Upper(map(a) + t, map(b)),
            other => remap_upper(other, map),
        })
        .collect();
    let base = map(r);
    lifts.extend(stairs.bridges(lj, |s| base + s));
    cover.lifts = lifts;
    Ok(cover.finish((m + t) as usize, bound))
}

impl Cover {
    fn is_asymptotic(&self) -> bool {
        self.lifts.iter().any(|l| matches!(l, Lift::LowerAsym { .. } | Lift::UpperAsym { .. }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{outer_quiddity, realize};
    use crate::classify::{classify, Outcome};

    fn bumped(t: &AnnulusTriangulation, j: usize) -> AnnulusTriangulation {
        let before = outer_quiddity(t).unwrap();
        let b = bump_realization(t, j).unwrap();
        let report = b.check();
        assert!(report.passed(), "bump at {j} of {:?}: {report}\n{:?}", t.arcs, b.arcs);
        let mut expect = before;
        expect[j - 1] += 1;
        assert_eq!(b.outer_quiddity_unchecked(), expect, "{:?} -> {:?}", t.arcs, b.arcs);
        b
    }

    #[test]
    fn example_bump_of_one_inner_point() {
        let t = realize(&[4, 1, 5, 1]).unwrap();
        let b = bumped(&t, 1);
        assert_eq!((b.n, b.m), (4, 2));
        assert_eq!(b.outer_quiddity_unchecked(), vec![5, 1, 5, 1]);
    }

    #[test]
    fn all_adic_gains_an_inner_point() {
        let t = realize(&[2, 2, 2]).unwrap();
        let b = bumped(&t, 2);
        assert_eq!((b.n, b.m), (3, 1));
        assert_eq!(b.outer_quiddity_unchecked(), vec![2, 3, 2]);
    }

    #[test]
    fn every_case_on_small_realizations() {
        let seqs: &[&[u64]] = &[
            &[1, 4],
            &[1, 5],
            &[2, 2, 2],
            &[3, 3, 3],
            &[4, 1, 5, 1],
            &[2, 1, 7, 1, 3],
            &[3, 1, 3, 2],
            &[1, 4, 1, 4],
            &[3, 2, 1, 6, 1, 4],
            &[5],
            &[2, 4],
        ];
        for q in seqs {
            let t = realize(q).unwrap();
            for j in 1..=t.n {
                let b = bumped(&t, j);
                assert!(matches!(classify(&b.outer_quiddity_unchecked()).unwrap().outcome, Outcome::Infinite { .. }));
                for j2 in 1..=b.n {
                    bumped(&b, j2);
                }
            }
        }
    }

    #[test]
    fn figure_triangulations_bump() {
        let t = crate::annulus::tests::bridged_a32();
        for j in 1..=3 {
            bumped(&t, j);
        }
        let t = crate::annulus::tests::asymptotic_a32();
        for j in 1..=3 {
            bumped(&t, j);
        }
    }

    #[test]
    fn reduction_of_fan_is_all_adic() {
        let t = realize(&[3, 3, 3]).unwrap();
        let a = asymptotic_reduction(&t).unwrap();
        assert!(a.check().passed());
        assert_eq!(a.outer_quiddity_unchecked(), vec![2, 2, 2]);
    }

    #[test]
    fn reduction_of_bridged_figure() {
        let a = asymptotic_reduction(&crate::annulus::tests::bridged_a32()).unwrap();
        assert_eq!(
            a.arcs,
            vec![
                Arc::Peripheral { boundary: Boundary::Outer, from: 1, span: 2 },
                Arc::Asymptotic { at: 1, kind: AsymptoticKind::Adic },
                Arc::Asymptotic { at: 3, kind: AsymptoticKind::Adic },
            ]
        );
        assert!(a.check().passed());
    }

    #[test]
    fn reduction_keeps_asymptotic_outer_arcs() {
        let t = crate::annulus::tests::asymptotic_a32();
        let a = asymptotic_reduction(&t).unwrap();
        let outer: Vec<Arc> =
            t.clone().normalized().arcs.into_iter().filter(|a| !matches!(a, Arc::Peripheral { boundary: Boundary::Inner, .. }) && !matches!(a, Arc::Asymptotic { at, .. } if *at > 3)).collect();
        assert_eq!(a.arcs, outer);
        assert!(a.check().passed());
    }
}
