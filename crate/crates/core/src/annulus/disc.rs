//! Once-punctured discs `S_n`, which behave like annuli without inner
//! marked points once central arcs become asymptotic ones.

use super::{AnnulusError, AnnulusTriangulation, Arc, AsymptoticKind, Boundary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiscArc {
    /// From boundary point `from`, `span` segments counterclockwise; `span = n`
    /// is a loop.
    Peripheral { from: usize, span: usize },
    /// Joins `at` to the puncture.
    Central { at: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedDisc {
    pub n: usize,
    pub arcs: Vec<DiscArc>,
}

impl PuncturedDisc {
    pub fn new(n: usize, mut arcs: Vec<DiscArc>) -> Self {
        arcs.sort();
        PuncturedDisc { n, arcs }
    }

    /// Triangles at each boundary point.
    pub fn quiddity(&self) -> Result<Vec<u64>, AnnulusError> {
        super::outer_quiddity(&disc_to_annulus(self)?)
    }
}

/// Peripheral arcs stay, central arcs become adic arcs.
pub fn disc_to_annulus(d: &PuncturedDisc) -> Result<AnnulusTriangulation, AnnulusError> {
    let arcs = d
        .arcs
        .iter()
        .map(|a| match *a {
            DiscArc::Peripheral { from, span } => Arc::Peripheral { boundary: Boundary::Outer, from, span },
            DiscArc::Central { at } => Arc::Asymptotic { at, kind: AsymptoticKind::Adic },
        })
        .collect();
    let t = AnnulusTriangulation::new(d.n, 0, arcs).normalized();
    t.validate()?;
    Ok(t)
}

/// Inverse of [`disc_to_annulus`]; asymptotic arcs of either kind become
/// central arcs.
pub fn annulus0_to_disc(t: &AnnulusTriangulation) -> Result<PuncturedDisc, AnnulusError> {
    if t.m != 0 {
        return Err(AnnulusError::Unsupported(format!("annulus has {} inner points", t.m)));
    }
    t.validate()?;
    let arcs = t
        .arcs
        .iter()
        .map(|a| match *a {
            Arc::Peripheral { from, span, .. } => DiscArc::Peripheral { from, span },
            Arc::Asymptotic { at, .. } => DiscArc::Central { at },
            Arc::Bridging { .. } => unreachable!("no bridging arcs without inner points"),
        })
        .collect();
    Ok(PuncturedDisc::new(t.n, arcs))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn five_gon() -> PuncturedDisc {
        PuncturedDisc::new(
            5,
            vec![
                DiscArc::Central { at: 1 },
                DiscArc::Peripheral { from: 1, span: 5 },
                DiscArc::Peripheral { from: 4, span: 2 },
                DiscArc::Peripheral { from: 2, span: 2 },
                DiscArc::Peripheral { from: 2, span: 4 },
            ],
        )
    }

    #[test]
    fn five_gon_quiddity() {
        assert_eq!(five_gon().quiddity().unwrap(), vec![6, 3, 1, 3, 1]);
    }

    #[test]
    fn triangle_with_two_central_arcs() {
        let d = PuncturedDisc::new(
            3,
            vec![DiscArc::Central { at: 1 }, DiscArc::Central { at: 3 }, DiscArc::Peripheral { from: 1, span: 2 }],
        );
        let t = disc_to_annulus(&d).unwrap();
        assert_eq!((t.n, t.m), (3, 0));
        assert_eq!(t.outer_quiddity_unchecked(), vec![3, 1, 3]);
        assert_eq!(annulus0_to_disc(&t).unwrap(), d);
    }

    #[test]
    fn roundtrip_and_rejections() {
        let d = five_gon();
        assert_eq!(annulus0_to_disc(&disc_to_annulus(&d).unwrap()).unwrap(), d);
        let mut bad = five_gon();
        bad.arcs.pop();
        assert!(disc_to_annulus(&bad).is_err());
        let fan = crate::annulus::realize(&[3]).unwrap();
        assert!(annulus0_to_disc(&fan).is_err());
    }
}
