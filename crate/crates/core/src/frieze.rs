//! Exact frieze entries `m_ij` and bulk tabulation.
//!
//! Entries are indexed by row position `i` and column `j` with `j >= i - 2`;
//! the depth `d = j - i` selects the row of the frieze. `m_{i,i-2} = 0` and
//! `m_{i,i-1} = 1` seed everything else.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::row::QuiddityRow;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FriezeError {
    #[error("entry ({i},{j}) is outside the frieze: need j >= i - 2")]
    OutOfDomain { i: i64, j: i64 },
    #[error("ptolemy relation needs i <= k <= j + 1, got i={i} k={k} j={j}")]
    PtolemyRange { i: i64, j: i64, k: i64 },
    #[error("bump amount must be positive")]
    ZeroBump,
    #[error("a single-position bump of a periodic row is not periodic; use a windowed row or bump_periodic")]
    PeriodicSingleBump,
}

/// `m_ij` by the forward recurrence `m_ij = a_j m_{i,j-1} - m_{i,j-2}`.
///
/// Values may be zero or negative when the row is not a frieze.
pub fn entry_recurrence(q: &QuiddityRow, i: i64, j: i64) -> Result<BigInt, FriezeError> {
    if j < i - 2 {
        return Err(FriezeError::OutOfDomain { i, j });
    }
    let mut prev = BigInt::zero(); // m_{i,i-2}
    let mut cur = BigInt::one(); // m_{i,i-1}
    if j == i - 2 {
        return Ok(prev);
    }
    for col in i..=j {
        let next = &cur * q.get(col) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(cur)
}

/// `m_ij` as the continuant `det tridiag(1; a_i..a_j; 1)`, expanded along
/// the first row: `K(a_i..a_j) = a_i K(a_{i+1}..a_j) - K(a_{i+2}..a_j)`.
pub fn entry_continuant(q: &QuiddityRow, i: i64, j: i64) -> Result<BigInt, FriezeError> {
    if j < i {
        return Err(FriezeError::OutOfDomain { i, j });
    }
    // K of the empty tail is 1, and of the "tail past the end" is 0.
    let mut after = BigInt::zero();
    let mut tail = BigInt::one();
    for row in (i..=j).rev() {
        let next = &tail * q.get(row) - &after;
        after = std::mem::replace(&mut tail, next);
    }
    Ok(tail)
}

/// A rectangular slab of frieze entries, stored row-major by depth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeFragment {
    pub source: QuiddityRow,
    pub i_min: i64,
    pub i_max: i64,
    /// Largest stored depth; the smallest is always -2.
    pub d_max: i64,
    rows: Vec<Vec<BigInt>>,
}

impl FriezeFragment {
    pub fn get(&self, i: i64, j: i64) -> Option<&BigInt> {
        let d = j - i;
        if i < self.i_min || i > self.i_max || d < -2 || d > self.d_max {
            return None;
        }
        Some(&self.rows[(d + 2) as usize][(i - self.i_min) as usize])
    }

    /// Mutable access, mostly useful for perturbation tests.
    pub fn get_mut(&mut self, i: i64, j: i64) -> Option<&mut BigInt> {
        let d = j - i;
        if i < self.i_min || i > self.i_max || d < -2 || d > self.d_max {
            return None;
        }
        Some(&mut self.rows[(d + 2) as usize][(i - self.i_min) as usize])
    }

    /// Row of depth `d`, indexed by `i - i_min`.
    pub fn row(&self, d: i64) -> Option<&[BigInt]> {
        if d < -2 || d > self.d_max {
            return None;
        }
        Some(&self.rows[(d + 2) as usize])
    }

    pub fn depths(&self) -> RangeInclusive<i64> {
        -2..=self.d_max
    }

    pub fn columns(&self) -> RangeInclusive<i64> {
        self.i_min..=self.i_max
    }

    /// First entry with `i <= j` that is not positive, scanning depth-major.
    pub fn first_nonpositive(&self) -> Option<(i64, i64)> {
        for d in 0..=self.d_max {
            for i in self.columns() {
                if !self.get(i, i + d).unwrap().is_positive() {
                    return Some((i, i + d));
                }
            }
        }
        None
    }
}

/// Tabulate `m_ij` for `i` in `i_range` and every depth `-2..=d_max`.
pub fn fragment(q: &QuiddityRow, i_range: RangeInclusive<i64>, d_max: i64) -> FriezeFragment {
    let d_max = d_max.max(-2);
    let (i_min, i_max) = (*i_range.start(), *i_range.end());
    let width = (i_max - i_min + 1).max(0) as usize;
    let mut rows = vec![Vec::with_capacity(width); (d_max + 3) as usize];
    for i in i_min..=i_max {
        let mut prev = BigInt::zero();
        let mut cur = BigInt::one();
        rows[0].push(prev.clone());
        if d_max >= -1 {
            rows[1].push(cur.clone());
        }
        for d in 0..=d_max {
            let next = &cur * q.get(i + d) - &prev;
            prev = std::mem::replace(&mut cur, next);
            rows[(d + 2) as usize].push(cur.clone());
        }
    }
    FriezeFragment { source: q.clone(), i_min, i_max, d_max, rows }
}

/// Where a fragment breaks the frieze rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnimodularReport {
    /// Diamonds `(i, j)` with `m_ij m_{i+1,j+1} - m_{i+1,j} m_{i,j+1} != 1`.
    pub failing_diamonds: Vec<(i64, i64)>,
    /// Entries of the two trivial rows that are not 0 / 1.
    pub bad_boundary: Vec<(i64, i64)>,
}

impl UnimodularReport {
    pub fn passed(&self) -> bool {
        self.failing_diamonds.is_empty() && self.bad_boundary.is_empty()
    }
}

/// Check every fully stored diamond and the 0/1 boundary rows.
pub fn verify_unimodular(f: &FriezeFragment) -> UnimodularReport {
    let mut report = UnimodularReport::default();
    for i in f.columns() {
        if let Some(v) = f.get(i, i - 2) {
            if !v.is_zero() {
                report.bad_boundary.push((i, i - 2));
            }
        }
        if let Some(v) = f.get(i, i - 1) {
            if !v.is_one() {
                report.bad_boundary.push((i, i - 1));
            }
        }
    }
    // A diamond at (i, j) spans depths d-1..=d+1 and columns i..=i+1.
    for d in -1..f.d_max {
        for i in f.i_min..f.i_max {
            let j = i + d;
            let lhs = f.get(i, j).unwrap() * f.get(i + 1, j + 1).unwrap();
            let rhs = f.get(i + 1, j).unwrap() * f.get(i, j + 1).unwrap();
            if lhs - rhs != BigInt::one() {
                report.failing_diamonds.push((i, j));
            }
        }
    }
    report
}

/// Check `m_ij = m_{i,k-1} m_kj - m_{i,k-2} m_{k+1,j}` for `i <= k <= j + 1`.
pub fn verify_ptolemy(q: &QuiddityRow, i: i64, j: i64, k: i64) -> Result<bool, FriezeError> {
    if !(i <= k && k <= j + 1) {
        return Err(FriezeError::PtolemyRange { i, j, k });
    }
    let m = |a, b| entry_recurrence(q, a, b);
    let rhs = m(i, k - 1)? * m(k, j)? - m(i, k - 2)? * m(k + 1, j)?;
    Ok(m(i, j)? == rhs)
}

/// A row with one entry increased, remembering the original so that the
/// closed-form entries can be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bump {
    pub original: QuiddityRow,
    pub bumped: QuiddityRow,
    pub k: i64,
    pub amount: u64,
}

impl Bump {
    /// `m_ij + b m_{i,k-1} m_{k+1,j}` computed on the original row. The
    /// product vanishes outside the cone below `(k, k)`.
    pub fn closed_form_entry(&self, i: i64, j: i64) -> Result<BigInt, FriezeError> {
        let base = entry_recurrence(&self.original, i, j)?;
        if j < i {
            return Ok(base);
        }
        let left = entry_recurrence(&self.original, i, (self.k - 1).max(i - 2))?;
        let right = entry_recurrence(&self.original, (self.k + 1).min(j + 2), j)?;
        let in_cone = i <= self.k && self.k <= j;
        if !in_cone {
            return Ok(base);
        }
        Ok(base + left * right * self.amount)
    }
}

/// Increase `a_k` by `b` in a windowed row.
///
/// A constant-2 periodic row is accepted and treated as the equivalent
/// windowed row; any other periodic row is rejected because a single bump
/// breaks its periodicity.
pub fn bump(q: &QuiddityRow, k: i64, b: u64) -> Result<Bump, FriezeError> {
    if b == 0 {
        return Err(FriezeError::ZeroBump);
    }
    let original = match q {
        QuiddityRow::Periodic { entries } if entries.iter().all(|&a| a == 2) => {
            QuiddityRow::Windowed { lo: k, entries: vec![2] }
        }
        QuiddityRow::Periodic { .. } => return Err(FriezeError::PeriodicSingleBump),
        w => w.clone(),
    };
    let (lo, hi) = original.window().unwrap();
    let (new_lo, new_hi) = (lo.min(k), hi.max(k));
    let mut entries: Vec<u64> = (new_lo..=new_hi).map(|i| original.get(i)).collect();
    entries[(k - new_lo) as usize] += b;
    Ok(Bump {
        original,
        bumped: QuiddityRow::Windowed { lo: new_lo, entries },
        k,
        amount: b,
    })
}

/// Increase `a_k` by `b` in every period of a periodic row.
pub fn bump_periodic(q: &QuiddityRow, k: i64, b: u64) -> Result<QuiddityRow, FriezeError> {
    if b == 0 {
        return Err(FriezeError::ZeroBump);
    }
    match q {
        QuiddityRow::Periodic { entries } => {
            let mut entries = entries.clone();
            let n = entries.len() as i64;
            entries[k.rem_euclid(n) as usize] += b;
            Ok(QuiddityRow::Periodic { entries })
        }
        w => Ok(bump(w, k, b)?.bumped),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn per(v: &[u64]) -> QuiddityRow {
        QuiddityRow::periodic(v.to_vec()).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn constant_two_rows() {
        let q = per(&[2]);
        assert_eq!(entry_recurrence(&q, 0, 5).unwrap(), big(7));
        assert_eq!(entry_continuant(&q, 0, 0).unwrap(), big(2));
        assert_eq!(entry_continuant(&q, 0, 3).unwrap(), big(5));
    }

    #[test]
    fn seeds() {
        let q = per(&[4, 1]);
        for i in -3..3 {
            assert_eq!(entry_recurrence(&q, i, i - 1).unwrap(), big(1));
            assert_eq!(entry_recurrence(&q, i, i - 2).unwrap(), big(0));
        }
        assert!(entry_recurrence(&q, 0, -3).is_err());
        assert!(entry_continuant(&q, 0, -1).is_err());
    }

    #[test]
    fn constant_three_depth_two() {
        // det [[3,1,0],[1,3,1],[0,1,3]] = 3*8 - 3 = 21
        assert_eq!(entry_recurrence(&per(&[3]), 0, 2).unwrap(), big(21));
    }

    #[test]
    fn both_paths_agree_on_alternating_row() {
        let q = per(&[1, 3]);
        assert_eq!(entry_recurrence(&q, 0, 3).unwrap(), entry_continuant(&q, 0, 3).unwrap());
    }

    #[test]
    fn fragment_trivial_rows_only() {
        let f = fragment(&per(&[2]), 0..=3, -1);
        assert_eq!(f.depths(), -2..=-1);
        assert!(f.row(0).is_none());
        assert!(f.row(-2).unwrap().iter().all(Zero::is_zero));
        assert!(f.row(-1).unwrap().iter().all(One::is_one));
    }

    #[test]
    fn finite_frieze_fragment_shape() {
        let f = fragment(&per(&[2, 1, 3]), 0..=5, 4);
        assert!(f.row(3).unwrap().iter().all(One::is_one));
        assert!(f.row(4).unwrap().iter().all(Zero::is_zero));
        assert_eq!(f.first_nonpositive(), Some((0, 4)));
    }

    #[test]
    fn unimodular_perturbation_hits_at_most_four_diamonds() {
        let mut f = fragment(&per(&[2]), 0..=7, 6);
        assert!(verify_unimodular(&f).passed());
        *f.get_mut(3, 6).unwrap() += 1;
        let report = verify_unimodular(&f);
        let mut expected = vec![(3, 6), (2, 6), (2, 5), (3, 5)];
        expected.sort();
        let mut got = report.failing_diamonds.clone();
        got.sort();
        assert_eq!(got, expected);
        assert!(report.bad_boundary.is_empty());
    }

    #[test]
    fn ptolemy_cases() {
        let q = per(&[2]);
        // 7 = 4*4 - 3*3
        assert!(verify_ptolemy(&q, 0, 5, 3).unwrap());
        assert!(verify_ptolemy(&q, 0, 5, 0).unwrap());
        assert!(verify_ptolemy(&q, 0, 5, 6).unwrap());
        assert!(verify_ptolemy(&q, 0, 5, 7).is_err());
        assert!(verify_ptolemy(&q, 2, 5, 1).is_err());
    }

    #[test]
    fn bump_constant_two() {
        let b = bump(&per(&[2]), 10, 1).unwrap();
        assert_eq!(b.bumped.get(10), 3);
        assert_eq!(b.bumped.get(9), 2);
        assert_eq!(entry_recurrence(&b.bumped, 6, 11).unwrap(), big(17));
        assert_eq!(b.closed_form_entry(6, 11).unwrap(), big(17));
        // outside the cone
        assert_eq!(entry_recurrence(&b.bumped, 11, 15).unwrap(), big(6));
        assert_eq!(entry_recurrence(&b.bumped, 3, 9).unwrap(), big(8));
    }

    #[test]
    fn bump_rejections() {
        assert_eq!(bump(&per(&[2]), 0, 0), Err(FriezeError::ZeroBump));
        assert_eq!(bump(&per(&[3, 2]), 0, 1), Err(FriezeError::PeriodicSingleBump));
    }

    #[test]
    fn periodic_bumps_stay_infinite() {
        let q = bump_periodic(&per(&[2, 2, 2]), 0, 1).unwrap();
        let q = bump_periodic(&q, 2, 1).unwrap();
        assert_eq!(q.entries(), &[3, 2, 3]);
        let f = fragment(&q, 0..=5, 8);
        assert!(verify_unimodular(&f).passed());
        assert_eq!(f.first_nonpositive(), None);
    }

    #[test]
    fn bump_extends_window() {
        let q = QuiddityRow::windowed(0, vec![3, 1, 3]).unwrap();
        let b = bump(&q, 5, 2).unwrap();
        assert_eq!(b.bumped.window(), Some((0, 5)));
        assert_eq!(b.bumped.entries(), &[3, 1, 3, 2, 2, 4]);
    }
}
