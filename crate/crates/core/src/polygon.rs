//! Triangulated polygons, the witnesses for finite friezes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("diagonal ({0},{1}) is not a chord between non-adjacent vertices")]
    BadDiagonal(usize, usize),
    #[error("diagonals ({0},{1}) and ({2},{3}) cross")]
    Crossing(usize, usize, usize, usize),
    #[error("expected {expected} diagonals, found {found}")]
    WrongCount { expected: usize, found: usize },
    #[error("sequence {0:?} is not the quiddity of a triangulated polygon")]
    NotTriangulable(Vec<u64>),
}

/// An `n`-gon with vertices `1..=n` and non-crossing diagonals `(u, v)`,
/// `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulatedPolygon {
    pub n: usize,
    pub diagonals: Vec<(usize, usize)>,
}

impl TriangulatedPolygon {
    pub fn check(&self) -> Result<(), PolygonError> {
        let n = self.n;
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        for &(u, v) in &self.diagonals {
            if !(1 <= u && u < v && v <= n) || v - u < 2 || (u == 1 && v == n) {
                return Err(PolygonError::BadDiagonal(u, v));
            }
        }
        for (a, &(u, v)) in self.diagonals.iter().enumerate() {
            for &(x, y) in &self.diagonals[a + 1..] {
                if (u < x && x < v && v < y) || (x < u && u < y && y < v) {
                    return Err(PolygonError::Crossing(u, v, x, y));
                }
                if (u, v) == (x, y) {
                    return Err(PolygonError::BadDiagonal(u, v));
                }
            }
        }
        if self.diagonals.len() != n - 3 {
            return Err(PolygonError::WrongCount { expected: n - 3, found: self.diagonals.len() });
        }
        Ok(())
    }

    /// Triangles incident with each vertex: one more than its diagonal count.
    pub fn quiddity(&self) -> Vec<u64> {
        let mut q = vec![1u64; self.n];
        for &(u, v) in &self.diagonals {
            q[u - 1] += 1;
            q[v - 1] += 1;
        }
        q
    }

    /// Build the triangulation whose quiddity is `seq` (vertex `i` gets
    /// `seq[i-1]`), by cutting ears at the first vertex holding a 1.
    pub fn from_quiddity(seq: &[u64]) -> Result<Self, PolygonError> {
        let n = seq.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let fail = || PolygonError::NotTriangulable(seq.to_vec());
        // (vertex label, remaining triangle count)
        let mut ring: Vec<(usize, u64)> = seq.iter().enumerate().map(|(i, &a)| (i + 1, a)).collect();
        let mut diagonals = Vec::with_capacity(n - 3);
        while ring.len() > 3 {
            let len = ring.len();
            let pos = ring.iter().position(|&(_, a)| a == 1).ok_or_else(fail)?;
            let (prev, next) = ((pos + len - 1) % len, (pos + 1) % len);
            if ring[prev].1 < 2 || ring[next].1 < 2 {
                return Err(fail());
            }
            ring[prev].1 -= 1;
            ring[next].1 -= 1;
            let (u, v) = (ring[prev].0, ring[next].0);
            diagonals.push((u.min(v), u.max(v)));
            ring.remove(pos);
        }
        if ring.iter().any(|&(_, a)| a != 1) {
            return Err(fail());
        }
        diagonals.reverse();
        let poly = TriangulatedPolygon { n, diagonals };
        poly.check()?;
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_no_diagonals() {
        let p = TriangulatedPolygon::from_quiddity(&[1, 1, 1]).unwrap();
        assert!(p.diagonals.is_empty());
    }

    #[test]
    fn square() {
        let p = TriangulatedPolygon::from_quiddity(&[1, 2, 1, 2]).unwrap();
        assert_eq!(p.diagonals, vec![(2, 4)]);
        assert_eq!(p.quiddity(), vec![1, 2, 1, 2]);
    }

    #[test]
    fn hexagon_inner_triangle() {
        let p = TriangulatedPolygon::from_quiddity(&[1, 3, 1, 3, 1, 3]).unwrap();
        let mut d = p.diagonals.clone();
        d.sort();
        assert_eq!(d, vec![(2, 4), (2, 6), (4, 6)]);
    }

    #[test]
    fn rejects_non_quiddities() {
        assert!(TriangulatedPolygon::from_quiddity(&[2, 2, 2, 2]).is_err());
        assert!(TriangulatedPolygon::from_quiddity(&[1, 1, 2, 2]).is_err());
    }

    #[test]
    fn check_catches_crossings() {
        let p = TriangulatedPolygon { n: 4, diagonals: vec![(1, 3), (2, 4)] };
        assert!(matches!(p.check(), Err(PolygonError::Crossing(..))));
        let p = TriangulatedPolygon { n: 5, diagonals: vec![(1, 3)] };
        assert!(matches!(p.check(), Err(PolygonError::WrongCount { .. })));
    }
}
