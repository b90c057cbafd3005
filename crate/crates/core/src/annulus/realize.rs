use super::{AnnulusError, AnnulusTriangulation, Arc, AsymptoticKind, Boundary, Lift};
use crate::classify::{reduce, BaseKind};

/// The `s`-fold cover of `t`: `A_{sn,sm}` carrying `s` copies of a
/// fundamental domain.
pub fn multiply_period(t: &AnnulusTriangulation, s: usize) -> Result<AnnulusTriangulation, AnnulusError> {
    if s == 0 {
        return Err(AnnulusError::ZeroMultiplier);
    }
    let (n, m) = (t.n as i64, t.m as i64);
    let lifts: Vec<Lift> =
        t.lifts().iter().flat_map(|l| (0..s as i64).map(move |c| l.translate(c, n, m))).collect();
    Ok(AnnulusTriangulation::from_lifts(t.n * s, t.m * s, &lifts).with_winding_bound(t.winding_bound))
}

/// Insert a new outer point so that it becomes point `pos+1`; old points at
/// `pos+1..` shift up by one.
pub(crate) fn insert_outer(t: &AnnulusTriangulation, pos: usize) -> AnnulusTriangulation {
    let (n, pos) = (t.n as i64, pos as i64);
    let map = |l: i64| {
        let (q, r) = (l.div_euclid(n), l.rem_euclid(n));
        q * (n + 1) + r + i64::from(r >= pos)
    };
    let lifts: Vec<Lift> = t
        .lifts()
        .into_iter()
        .map(|l| match l {
            Lift::Lower(a, b) => Lift::Lower(map(a), map(b)),
            Lift::Bridge { lower, upper } => Lift::Bridge { lower: map(lower), upper },
            Lift::LowerAsym { at, dir } => Lift::LowerAsym { at: map(at), dir },
            other => other,
        })
        .collect();
    AnnulusTriangulation::from_lifts(t.n + 1, t.m, &lifts).with_winding_bound(t.winding_bound)
}

fn base_realization(base: &[u64], kind: BaseKind) -> AnnulusTriangulation {
    let r = base.len();
    match kind {
        BaseKind::AllAtLeastTwo if base.iter().all(|&b| b == 2) => AnnulusTriangulation::new(
            r,
            0,
            (1..=r).map(|at| Arc::Asymptotic { at, kind: AsymptoticKind::Adic }).collect(),
        ),
        BaseKind::AllAtLeastTwo => {
            // above each outer point i sit b_i - 2 inner points; i is joined to
            // them and to the first inner point of the next nonempty group
            let m: i64 = base.iter().map(|&b| b as i64 - 2).sum();
            let mut lifts = Vec::new();
            let mut offset = 0i64;
            for (i, &b) in base.iter().enumerate() {
                let d = b as i64 - 2;
                for u in offset..=offset + d {
                    lifts.push(Lift::Bridge { lower: i as i64, upper: u });
                }
                offset += d;
            }
            AnnulusTriangulation::from_lifts(r, m as usize, &lifts)
        }
        BaseKind::OneAndLarge => {
            let q = base.iter().position(|&a| a != 1).unwrap() as i64;
            let a = base[q as usize] as i64;
            let m = a - 4;
            let mut lifts = vec![Lift::Lower(q, q + 2)];
            if m == 0 {
                lifts.push(Lift::LowerAsym { at: q, dir: AsymptoticKind::Adic.direction(Boundary::Outer) });
            } else {
                lifts.extend((0..=m).map(|u| Lift::Bridge { lower: q, upper: u }));
            }
            AnnulusTriangulation::from_lifts(2, m as usize, &lifts)
        }
        BaseKind::Triangle | BaseKind::SmallFinite | BaseKind::AdjacentOnes => {
            unreachable!("not an infinite base")
        }
    }
}

/// A triangulation of `A_{n,m}` with outer quiddity `entries`, where `m` is
/// [`crate::classify::minimal_inner_points`] and no inner peripheral arcs
/// are used.
pub fn realize(entries: &[u64]) -> Result<AnnulusTriangulation, AnnulusError> {
    let trace = reduce(entries)?;
    match trace.base_kind {
        BaseKind::OneAndLarge | BaseKind::AllAtLeastTwo => {}
        BaseKind::AdjacentOnes => return Err(AnnulusError::NotInfinite("not a frieze")),
        BaseKind::Triangle | BaseKind::SmallFinite => return Err(AnnulusError::NotInfinite("finite")),
    }
    let mut t = base_realization(&trace.base, trace.base_kind);
    for step in trace.steps.iter().rev() {
        t = multiply_period(&t, step.multiplicity)?;
        let k = step.removed;
        t = insert_outer(&t, k);
        let left = (k + t.n - 1) % t.n + 1;
        t.arcs.push(Arc::Peripheral { boundary: Boundary::Outer, from: left, span: 2 });
        t = t.normalized();
    }
    multiply_period(&t, trace.initial_multiplicity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::outer_quiddity;
    use crate::classify::minimal_inner_points;

    fn roundtrip(q: &[u64]) -> AnnulusTriangulation {
        let t = realize(q).unwrap();
        assert!(t.check().passed(), "{q:?}: {}\n{:?}", t.check(), t.arcs);
        assert_eq!(outer_quiddity(&t).unwrap(), q, "{:?}", t.arcs);
        assert_eq!(t.m as u64, minimal_inner_points(q).unwrap());
        assert!(!t.has_inner_peripheral());
        t
    }

    #[test]
    fn one_four_is_loop_and_adic() {
        let t = roundtrip(&[1, 4]);
        assert_eq!((t.n, t.m), (2, 0));
        assert_eq!(
            t.arcs,
            vec![
                Arc::Peripheral { boundary: Boundary::Outer, from: 2, span: 2 },
                Arc::Asymptotic { at: 2, kind: AsymptoticKind::Adic },
            ]
        );
    }

    #[test]
    fn fan_uses_only_bridging_arcs() {
        let t = roundtrip(&[3, 3, 3]);
        assert_eq!((t.n, t.m), (3, 3));
        assert!(t.arcs.iter().all(Arc::is_bridging));
    }

    #[test]
    fn examples() {
        let t = roundtrip(&[4, 1, 5, 1]);
        assert_eq!((t.n, t.m), (4, 1));
        assert_eq!(t.arcs.len(), 5);
        let t = roundtrip(&[5, 1, 5, 1]);
        assert_eq!((t.n, t.m), (4, 2));
        let t = roundtrip(&[5, 1]);
        assert_eq!((t.n, t.m), (2, 1));
        for q in [&[1, 7][..], &[7, 1], &[2, 2, 2], &[2, 5, 3], &[3, 1, 4], &[4, 1, 4, 1], &[2, 1, 7, 1, 3], &[6]] {
            roundtrip(q);
        }
    }

    #[test]
    fn multiply_period_repeats_quiddity() {
        let t = realize(&[1, 4]).unwrap();
        let t3 = multiply_period(&t, 3).unwrap();
        assert_eq!((t3.n, t3.m), (6, 0));
        assert_eq!(outer_quiddity(&t3).unwrap(), vec![1, 4, 1, 4, 1, 4]);
        let fan = realize(&[3]).unwrap();
        let fan2 = multiply_period(&fan, 2).unwrap();
        assert_eq!((fan2.n, fan2.m), (2, 2));
        assert_eq!(outer_quiddity(&fan2).unwrap(), vec![3, 3]);
        assert_eq!(multiply_period(&fan, 1).unwrap(), fan);
        assert!(multiply_period(&fan, 0).is_err());
    }

    #[test]
    fn rejects_non_infinite() {
        assert!(matches!(realize(&[1, 3]), Err(AnnulusError::NotInfinite(_))));
        assert!(matches!(realize(&[2, 1, 1]), Err(AnnulusError::NotInfinite(_))));
    }
}
