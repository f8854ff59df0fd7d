//! Exact rational linear algebra.
//!
//! Everything here is over ℚ with arbitrary-precision integers. Ranks, kernels
//! and spans go through the fraction-free elimination in [`bareiss`]; rational
//! entries are only formed at the very end when a canonical basis is written
//! out.

mod bareiss;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn qq(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bilinear form is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self, LinAlgError> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: nrows,
            cols,
            entries,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
            .expect("ragged integer rows")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// `self - c·I`.
    pub fn shift_diagonal(&self, c: &Rational) -> Result<Self, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = m.get(i, i) - c;
            m.set(i, i, v);
        }
        Ok(m)
    }

    /// Bilinear value `uᵀ·self·v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            acc += ui * dot(self.row(i), v);
        }
        acc
    }

    /// Determinant via fraction-free elimination.
    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (rows, scales) = integer_rows(&self.row_vectors());
        let e = bareiss::reduce(rows, self.cols, false);
        if e.pivots.len() < self.rows {
            return Ok(Rational::zero());
        }
        let mut det = Rational::from_integer(e.det);
        if e.swaps % 2 == 1 {
            det = -det;
        }
        for s in scales {
            det /= Rational::from_integer(s);
        }
        Ok(det)
    }
}

pub fn dot(u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc += a * b;
        }
    }
    acc
}

/// Clears denominators row by row. Returns the integer rows and the factor
/// each row was multiplied by.
fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut out = Vec::with_capacity(rows.len());
    let mut scales = Vec::with_capacity(rows.len());
    for row in rows {
        let mut l = BigInt::one();
        for x in row {
            if !x.denom().is_one() {
                l = l.lcm(x.denom());
            }
        }
        out.push(
            row.iter()
                .map(|x| {
                    if l.is_one() {
                        x.numer().clone()
                    } else {
                        x.numer() * (&l / x.denom())
                    }
                })
                .collect(),
        );
        scales.push(l);
    }
    (out, scales)
}

/// Rank over ℚ.
pub fn rank(m: &RationalMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let (rows, _) = integer_rows(&m.row_vectors());
    bareiss::reduce(rows, m.cols, false).pivots.len()
}

/// Null space `{x : m·x = 0}` as a canonical subspace of ℚ^cols.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let n = m.cols;
    if m.rows == 0 {
        return Subspace::full(n);
    }
    let (rows, _) = integer_rows(&m.row_vectors());
    let e = bareiss::reduce(rows, n, true);
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let d = Rational::from_integer(e.det.clone());
    let mut vectors = Vec::new();
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let mut v = vec![Rational::zero(); n];
        v[f] = Rational::one();
        for (i, &p) in e.pivots.iter().enumerate() {
            let entry = &e.rows[i][f];
            if !entry.is_zero() {
                v[p] = -Rational::from_integer(entry.clone()) / &d;
            }
        }
        vectors.push(v);
    }
    Subspace::from_independent_kernel(n, vectors)
}

/// A linear subspace of ℚ^n, stored as the reduced row echelon form of a
/// basis. Equal subspaces have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {})", self.dim(), self.ambient)
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        for v in vectors {
            if v.len() != ambient {
                return Err(LinAlgError::DimensionMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        let nonzero: Vec<Vec<Rational>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Ok(Self::zero(ambient));
        }
        let (rows, _) = integer_rows(&nonzero);
        let e = bareiss::reduce(rows, ambient, true);
        let d = Rational::from_integer(e.det.clone());
        let rows = e
            .rows
            .iter()
            .take(e.pivots.len())
            .map(|row| {
                row.iter()
                    .map(|x| {
                        if x.is_zero() {
                            Rational::zero()
                        } else {
                            Rational::from_integer(x.clone()) / &d
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            ambient,
            rows,
            pivots: e.pivots,
        })
    }

    /// Kernel vectors built with a unit at each free column are canonicalised
    /// through [`Subspace::span`].
    fn from_independent_kernel(ambient: usize, vectors: Vec<Vec<Rational>>) -> Self {
        Self::span(ambient, &vectors).expect("kernel vectors have ambient length")
    }

    /// Columns of `m` span the subspace.
    pub fn column_span(m: &RationalMatrix) -> Self {
        Self::span(m.rows(), &m.transpose().row_vectors()).expect("consistent column length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Canonical basis vectors (reduced echelon rows).
    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis as an `ambient × dim` matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_columns(self.ambient, &self.rows).expect("basis rows have ambient length")
    }

    fn check_len(&self, n: usize) -> Result<(), LinAlgError> {
        if n == self.ambient {
            Ok(())
        } else {
            Err(LinAlgError::DimensionMismatch {
                expected: self.ambient,
                found: n,
            })
        }
    }

    /// Residual of `v` after reduction against the echelon basis.
    pub fn residual(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        self.check_len(v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, b) in r.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x -= &c * b;
                }
            }
        }
        Ok(r)
    }

    pub fn contains_vector(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        Ok(self.residual(v)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
        if !self.contains_vector(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_len(other.ambient)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Self::span(self.ambient, &all)
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool, LinAlgError> {
        self.check_len(other.ambient)?;
        for v in &other.rows {
            if !self.contains_vector(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_len(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // Solve Σ x_i a_i = Σ y_j b_j, i.e. kernel of [Aᵀ | -Bᵀ].
        let n = self.ambient;
        let (da, db) = (self.dim(), other.dim());
        let mut m = RationalMatrix::zeros(n, da + db);
        for (i, a) in self.rows.iter().enumerate() {
            for (k, x) in a.iter().enumerate() {
                m.set(k, i, x.clone());
            }
        }
        for (j, b) in other.rows.iter().enumerate() {
            for (k, x) in b.iter().enumerate() {
                m.set(k, da + j, -x.clone());
            }
        }
        let ker = kernel(&m);
        let vectors: Vec<Vec<Rational>> = ker
            .rows
            .iter()
            .map(|sol| {
                let mut v = vec![Rational::zero(); n];
                for (i, a) in self.rows.iter().enumerate() {
                    if sol[i].is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(a) {
                        *x += &sol[i] * y;
                    }
                }
                v
            })
            .collect();
        Self::span(n, &vectors)
    }

    /// `{v : form(v, w) = 0 for all w in self}`.
    pub fn orth_complement(&self, form: &RationalMatrix) -> Result<Self, LinAlgError> {
        if form.rows() != form.cols() {
            return Err(LinAlgError::NotSquare {
                rows: form.rows(),
                cols: form.cols(),
            });
        }
        self.check_len(form.rows())?;
        if !form.is_symmetric() {
            return Err(LinAlgError::NotSymmetric);
        }
        if self.is_zero() {
            return Ok(Self::full(self.ambient));
        }
        let rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .map(|w| {
                (0..self.ambient)
                    .map(|j| {
                        let mut acc = Rational::zero();
                        for (i, wi) in w.iter().enumerate() {
                            if !wi.is_zero() {
                                let f = form.get(i, j);
                                if !f.is_zero() {
                                    acc += wi * f;
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let m = RationalMatrix::from_rows(self.ambient, rows)?;
        Ok(kernel(&m))
    }

    /// Image of the subspace under a linear map given as a square matrix.
    pub fn image_under(&self, m: &RationalMatrix) -> Result<Self, LinAlgError> {
        let images = self
            .rows
            .iter()
            .map(|v| m.mul_vec(v))
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(m.rows(), &images)
    }
}

/// `a + b`.
pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    a.sum(b)
}

/// `b ⊆ a`.
pub fn subspace_contains(a: &Subspace, b: &Subspace) -> Result<bool, LinAlgError> {
    a.contains(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, LinAlgError> {
    a.intersect(b)
}

pub fn orth_complement(w: &Subspace, form: &RationalMatrix) -> Result<Subspace, LinAlgError> {
    w.orth_complement(form)
}

/// Exact test that a symmetric matrix is positive definite (all leading
/// principal minors positive).
pub fn is_positive_definite(m: &RationalMatrix) -> Result<bool, LinAlgError> {
    if !m.is_symmetric() {
        return Err(LinAlgError::NotSymmetric);
    }
    let n = m.rows();
    for k in 1..=n {
        let mut sub = RationalMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub.set(i, j, m.get(i, j).clone());
            }
        }
        if !sub.determinant()?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gram matrix `Bᵀ·form·B` of a subspace basis.
pub fn gram_matrix(basis: &[Vec<Rational>], form: &RationalMatrix) -> RationalMatrix {
    let k = basis.len();
    let mut g = RationalMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = form.bilinear(&basis[i], &basis[j]);
            g.set(i, j, v.clone());
            g.set(j, i, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecq(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(2)), 2);
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&RationalMatrix::identity(4)).is_zero());
        assert!(kernel(&RationalMatrix::zeros(3, 3)).is_full());
        let m = RationalMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vecq(&[-2, 1, 0]).iter().map(|x| x / q(-2)).collect::<Vec<_>>());
    }

    #[test]
    fn orth_complement_trivial_cases() {
        let form = RationalMatrix::identity(3);
        assert!(Subspace::full(3).orth_complement(&form).unwrap().is_zero());
        assert!(Subspace::zero(3).orth_complement(&form).unwrap().is_full());
    }

    #[test]
    fn orth_complement_rejects_bad_forms() {
        let w = Subspace::full(2);
        let skew = RationalMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]);
        assert_eq!(w.orth_complement(&skew), Err(LinAlgError::NotSymmetric));
        let small = RationalMatrix::identity(3);
        assert!(matches!(
            w.orth_complement(&small),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn subspace_arithmetic() {
        let e12 = Subspace::span(3, &[vecq(&[1, 0, 0]), vecq(&[0, 1, 0])]).unwrap();
        let e23 = Subspace::span(3, &[vecq(&[0, 1, 0]), vecq(&[0, 0, 1])]).unwrap();
        let e2 = Subspace::span(3, &[vecq(&[0, 1, 0])]).unwrap();
        assert_eq!(e12.intersect(&e23).unwrap(), e2);
        assert_eq!(e12.sum(&e12).unwrap(), e12);
        assert!(Subspace::full(3).contains(&e23).unwrap());
        assert!(!e12.contains(&e23).unwrap());
        assert!(e12.sum(&e2).is_ok());
        assert!(matches!(
            e12.sum(&Subspace::zero(4)),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn canonical_form_is_basis_independent() {
        let a = Subspace::span(3, &[vecq(&[1, 1, 0]), vecq(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[vecq(&[2, 3, 1]), vecq(&[-1, 0, 1]), vecq(&[1, 2, 1])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis()[0][0], q(1));
    }

    #[test]
    fn determinant_and_definiteness() {
        let m = RationalMatrix::from_i64_rows(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.determinant().unwrap(), q(4));
        assert!(is_positive_definite(&m).unwrap());
        assert!(!is_positive_definite(&m.scale(&q(-1))).unwrap());
        let p = RationalMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(p.determinant().unwrap(), q(-1));
    }
}
