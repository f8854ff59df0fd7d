//! Fraction-free Gauss-Jordan elimination (Bareiss update rule).
//!
//! Every intermediate entry is a minor of the input, so each division by the
//! previous pivot is exact. The elimination first runs on `i128` with checked
//! arithmetic and restarts on `BigInt` the moment anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Integer scalar usable by the elimination kernel.
trait FfScalar: Clone {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// `(piv * a - b * c) / prev`, or `None` on overflow.
    fn update(piv: &Self, a: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self>;
    /// `piv * a / prev`, or `None` on overflow.
    fn scale(piv: &Self, a: &Self, prev: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl FfScalar for i128 {
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn update(piv: &Self, a: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let lhs = piv.checked_mul(*a)?;
        let rhs = b.checked_mul(*c)?;
        let num = lhs.checked_sub(rhs)?;
        debug_assert_eq!(num % prev, 0, "inexact Bareiss division");
        Some(num / prev)
    }
    #[inline]
    fn scale(piv: &Self, a: &Self, prev: &Self) -> Option<Self> {
        let num = piv.checked_mul(*a)?;
        debug_assert_eq!(num % prev, 0, "inexact Bareiss division");
        Some(num / prev)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl FfScalar for BigInt {
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn update(piv: &Self, a: &Self, b: &Self, c: &Self, prev: &Self) -> Option<Self> {
        let num = piv * a - b * c;
        let (q, r) = num.div_rem(prev);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        Some(q)
    }
    fn scale(piv: &Self, a: &Self, prev: &Self) -> Option<Self> {
        let num = piv * a;
        let (q, r) = num.div_rem(prev);
        debug_assert!(Zero::is_zero(&r), "inexact Bareiss division");
        Some(q)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Result of a fraction-free Gauss-Jordan reduction.
///
/// Row `i < pivots.len()` has the value `det` at column `pivots[i]` and zero in
/// every other pivot column. Remaining rows are zero.
#[derive(Debug, Clone)]
pub(crate) struct IntEchelon {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<BigInt>>,
    pub det: BigInt,
    pub swaps: usize,
}

fn eliminate<T: FfScalar>(mut rows: Vec<Vec<T>>, ncols: usize, full: bool) -> Option<IntEchelon> {
    let nrows = rows.len();
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut swaps = 0usize;
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row present");
        let piv = pivot_row[c].clone();
        let support: Vec<usize> = (c..ncols).filter(|&j| !pivot_row[j].is_zero()).collect();
        let update_row = |row: &mut Vec<T>| -> Option<()> {
            let factor = row[c].clone();
            if factor.is_zero() {
                // Only the rescaling part of the update applies.
                for x in row.iter_mut() {
                    if !x.is_zero() {
                        *x = T::scale(&piv, x, &prev)?;
                    }
                }
                return Some(());
            }
            let mut j_support = support.iter().peekable();
            for j in 0..ncols {
                let in_support = matches!(j_support.peek(), Some(&&s) if s == j);
                if in_support {
                    j_support.next();
                    row[j] = T::update(&piv, &row[j], &factor, &pivot_row[j], &prev)?;
                } else if !row[j].is_zero() {
                    row[j] = T::scale(&piv, &row[j], &prev)?;
                }
            }
            Some(())
        };
        for row in below.iter_mut() {
            update_row(row)?;
        }
        if full {
            for row in head.iter_mut() {
                update_row(row)?;
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    Some(IntEchelon {
        pivots,
        rows: rows
            .into_iter()
            .map(|row| row.into_iter().map(FfScalar::into_big).collect())
            .collect(),
        det: prev.into_big(),
        swaps,
    })
}

fn to_i128_rows(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i128>>> {
    rows.iter()
        .map(|row| row.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>())
        .collect()
}

/// Fraction-free reduction of an integer matrix. With `full`, entries above
/// each pivot are cleared too (Gauss-Jordan); otherwise only below.
pub(crate) fn reduce(rows: Vec<Vec<BigInt>>, ncols: usize, full: bool) -> IntEchelon {
    if let Some(small) = to_i128_rows(&rows) {
        if let Some(done) = eliminate(small, ncols, full) {
            return done;
        }
    }
    eliminate(rows, ncols, full).expect("BigInt elimination cannot overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn gauss_jordan_pivots_share_final_value() {
        let e = reduce(big(&[&[2, 1, 3], &[4, 1, 1], &[0, 5, 7]]), 3, true);
        assert_eq!(e.pivots, vec![0, 1, 2]);
        for (i, &p) in e.pivots.iter().enumerate() {
            assert_eq!(e.rows[i][p], e.det);
        }
        // |det| of the input
        assert_eq!(e.det.clone() * e.det.clone(), BigInt::from(36 * 36));
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let huge = i64::MAX;
        let rows = big(&[&[huge, huge - 1, 3], &[huge - 7, huge, 1], &[5, huge, huge]]);
        let e = reduce(rows, 3, true);
        assert_eq!(e.pivots.len(), 3);
    }

    #[test]
    fn skips_zero_columns() {
        let e = reduce(big(&[&[0, 1, 2], &[0, 2, 4], &[0, 0, 1]]), 3, true);
        assert_eq!(e.pivots, vec![1, 2]);
        assert!(e.rows[2].iter().all(Zero::is_zero));
    }
}
