//! Finite-dimensional Lie algebras over ℚ given by sparse structure constants.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exactlin::{kernel, LinAlgError, Rational, RationalMatrix, Subspace};

/// Sparse vector: `(index, coefficient)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("element of dimension {found} used in an algebra of dimension {expected}")]
    AlgebraMismatch { expected: usize, found: usize },
    #[error("not a square direct sum")]
    NotSquareSum,
    #[error("change of basis is singular")]
    SingularBasis,
    #[error("structure constants are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("Jacobi identity fails at ({0}, {1}, {2})")]
    JacobiFailure(usize, usize, usize),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A vector in a Lie algebra, in the coordinates of its basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = Rational::one();
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    /// `Some(c)` when `self = c · other` with `other` nonzero.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let k = other.coords.iter().position(|x| !x.is_zero())?;
        let c = &self.coords[k] / &other.coords[k];
        (other.scale(&c) == *self).then_some(c)
    }
}

pub(crate) fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

fn lookup(v: &SparseVec, k: usize) -> Option<&Rational> {
    v.binary_search_by_key(&k, |(i, _)| *i).ok().map(|p| &v[p].1)
}

#[derive(Debug)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `table[i * dim + j] = [b_i, b_j]`.
    table: Vec<SparseVec>,
    killing: OnceLock<RationalMatrix>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        let killing = OnceLock::new();
        if let Some(k) = self.killing.get() {
            let _ = killing.set(k.clone());
        }
        Self {
            dim: self.dim,
            labels: self.labels.clone(),
            table: self.table.clone(),
            killing,
        }
    }
}

impl LieAlgebra {
    /// Builds the algebra from a bracket on basis vectors. Only `i < j` is
    /// queried; the rest follows from antisymmetry.
    pub fn from_basis_brackets<F>(labels: Vec<String>, f: F) -> Self
    where
        F: Fn(usize, usize) -> SparseVec + Sync,
    {
        let dim = labels.len();
        let upper: Vec<Vec<SparseVec>> = (0..dim)
            .into_par_iter()
            .map(|i| ((i + 1)..dim).map(|j| f(i, j)).collect())
            .collect();
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, row) in upper.into_iter().enumerate() {
            for (off, v) in row.into_iter().enumerate() {
                let j = i + 1 + off;
                let mut v = v;
                v.retain(|(_, c)| !c.is_zero());
                v.sort_by_key(|(k, _)| *k);
                table[j * dim + i] = v.iter().map(|(k, c)| (*k, -c)).collect();
                table[i * dim + j] = v;
            }
        }
        Self {
            dim,
            labels,
            table,
            killing: OnceLock::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }

    fn check(&self, x: &AlgebraElement) -> Result<(), LieError> {
        if x.dim() != self.dim {
            return Err(LieError::AlgebraMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn bracket_vec(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let sx = to_sparse(x);
        let sy = to_sparse(y);
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in &sx {
            for (j, b) in &sy {
                let v = &self.table[i * self.dim + j];
                if v.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in v {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, LieError> {
        self.check(x)?;
        self.check(y)?;
        Ok(AlgebraElement::new(self.bracket_vec(&x.coords, &y.coords)))
    }

    /// Matrix of `ad x`; column `j` holds `[x, b_j]`.
    pub fn ad_matrix(&self, x: &AlgebraElement) -> Result<RationalMatrix, LieError> {
        self.check(x)?;
        Ok(self.ad_matrix_vec(&x.coords))
    }

    pub(crate) fn ad_matrix_vec(&self, x: &[Rational]) -> RationalMatrix {
        let n = self.dim;
        let mut m = RationalMatrix::zeros(n, n);
        for (i, a) in to_sparse(x) {
            for j in 0..n {
                for (k, c) in &self.table[i * n + j] {
                    let cur = m.get(*k, j) + &a * c;
                    m.set(*k, j, cur);
                }
            }
        }
        m
    }

    /// Killing form `B(x, y) = tr(ad x ∘ ad y)` in the given basis.
    pub fn killing(&self) -> &RationalMatrix {
        self.killing.get_or_init(|| self.compute_killing())
    }

    fn compute_killing(&self) -> RationalMatrix {
        let n = self.dim;
        let rows: Vec<Vec<Rational>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if j < i {
                            return Rational::zero();
                        }
                        // Σ_k Σ_l c_{jk}^l c_{il}^k
                        let mut acc = Rational::zero();
                        for k in 0..n {
                            for (l, c) in &self.table[j * n + k] {
                                if let Some(d) = lookup(&self.table[i * n + l], k) {
                                    acc += c * d;
                                }
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        let mut m = RationalMatrix::zeros(n, n);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate().skip(i) {
                m.set(j, i, v.clone());
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<Rational, LieError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.killing().bilinear(&x.coords, &y.coords))
    }

    /// `Z(x) = ker ad x`.
    pub fn centralizer(&self, x: &AlgebraElement) -> Result<Subspace, LieError> {
        self.check(x)?;
        Ok(kernel(&self.ad_matrix_vec(&x.coords)))
    }

    /// Elements of the algebra commuting with every vector of `s`.
    pub fn centralizer_of(&self, s: &Subspace) -> Result<Subspace, LieError> {
        if s.ambient_dim() != self.dim {
            return Err(LieError::AlgebraMismatch {
                expected: self.dim,
                found: s.ambient_dim(),
            });
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for v in s.basis() {
            rows.extend(self.ad_matrix_vec(v).row_vectors());
        }
        if rows.is_empty() {
            return Ok(Subspace::full(self.dim));
        }
        Ok(kernel(&RationalMatrix::from_rows(self.dim, rows)?))
    }

    /// `[x, s]` for a subspace `s`.
    pub fn bracket_with_subspace(&self, x: &AlgebraElement, s: &Subspace) -> Result<Subspace, LieError> {
        self.check(x)?;
        let vecs: Vec<Vec<Rational>> = s.basis().iter().map(|v| self.bracket_vec(&x.coords, v)).collect();
        Ok(Subspace::span(self.dim, &vecs)?)
    }

    /// Span of `[a, b]` over bases of two subspaces.
    pub fn bracket_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<Subspace, LieError> {
        let vecs: Vec<Vec<Rational>> = a
            .basis()
            .par_iter()
            .flat_map_iter(|u| b.basis().iter().map(move |v| self.bracket_vec(u, v)))
            .collect();
        Ok(Subspace::span(self.dim, &vecs)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool, LieError> {
        let br = self.bracket_subspaces(s, s)?;
        Ok(s.contains(&br)?)
    }

    /// Center of the algebra.
    pub fn center(&self) -> Subspace {
        self.centralizer_of(&Subspace::full(self.dim)).expect("same dimension")
    }

    /// Exhaustive Jacobi check on all basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim;
        let bad = (0..n).into_par_iter().find_map_any(|i| {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if !self.jacobi_zero(i, j, k) {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match bad {
            Some((i, j, k)) => Err(LieError::JacobiFailure(i, j, k)),
            None => Ok(()),
        }
    }

    /// `[[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j] = 0`.
    pub fn jacobi_zero(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.dim;
        let mut acc = vec![Rational::zero(); n];
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, coef) in &self.table[a * n + b] {
                for (m, d) in &self.table[l * n + c] {
                    acc[*m] += coef * d;
                }
            }
        }
        acc.iter().all(Zero::is_zero)
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        let n = self.dim;
        for i in 0..n {
            for j in i..n {
                let a = &self.table[i * n + j];
                let b = &self.table[j * n + i];
                let ok = a.len() == b.len() && a.iter().zip(b).all(|((k, x), (l, y))| k == l && *x == -y);
                if !ok {
                    return Err(LieError::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// Whether the linear map `m` (columns = images of basis vectors) preserves
    /// brackets on all basis pairs.
    pub fn is_automorphism(&self, m: &RationalMatrix) -> bool {
        let n = self.dim;
        if m.rows() != n || m.cols() != n {
            return false;
        }
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| m.column(j)).collect();
        let sparse_cols: Vec<SparseVec> = cols.iter().map(|c| to_sparse(c)).collect();
        (0..n).into_par_iter().all(|i| {
            ((i + 1)..n).all(|j| {
                let mut lhs = vec![Rational::zero(); n];
                for (k, c) in &self.table[i * n + j] {
                    for (l, d) in &sparse_cols[*k] {
                        lhs[*l] += c * d;
                    }
                }
                lhs == self.bracket_vec(&cols[i], &cols[j])
            })
        })
    }

    /// The same algebra in a new basis whose vectors are the columns of `p`.
    pub fn change_basis(&self, p: &RationalMatrix, labels: Vec<String>) -> Result<LieAlgebra, LieError> {
        let n = self.dim;
        let pinv = invert(p).ok_or(LieError::SingularBasis)?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| p.column(j)).collect();
        Ok(LieAlgebra::from_basis_brackets(labels, |i, j| {
            let v = self.bracket_vec(&cols[i], &cols[j]);
            to_sparse(&pinv.mul_vec(&v).expect("square"))
        }))
    }

    /// Block direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LieAlgebra) -> LieAlgebra {
        let n = self.dim;
        let m = other.dim;
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("({l},0)")).collect();
        labels.extend(other.labels.iter().map(|l| format!("(0,{l})")));
        let d = n + m;
        let mut table = vec![SparseVec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                table[i * d + j] = self.table[i * n + j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                table[(n + i) * d + n + j] = other.table[i * m + j].iter().map(|(k, c)| (n + k, c.clone())).collect();
            }
        }
        let killing = OnceLock::new();
        if let (Some(a), Some(b)) = (self.killing.get(), other.killing.get()) {
            let mut kf = RationalMatrix::zeros(d, d);
            for i in 0..n {
                for j in 0..n {
                    kf.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..m {
                for j in 0..m {
                    kf.set(n + i, n + j, b.get(i, j).clone());
                }
            }
            let _ = killing.set(kf);
        }
        LieAlgebra {
            dim: d,
            labels,
            table,
            killing,
        }
    }

    /// `{(x, x)}` inside a square direct sum `a ⊕ a`.
    pub fn diag_subalgebra(&self) -> Result<Subspace, LieError> {
        if !self.dim.is_multiple_of(2) {
            return Err(LieError::NotSquareSum);
        }
        let n = self.dim / 2;
        for i in 0..n {
            for j in 0..n {
                let a = &self.table[i * self.dim + j];
                let b = &self.table[(n + i) * self.dim + n + j];
                let same = a.len() == b.len() && a.iter().zip(b).all(|((k, x), (l, y))| *k < n && *l == k + n && x == y);
                if !same || !self.table[i * self.dim + n + j].is_empty() {
                    return Err(LieError::NotSquareSum);
                }
            }
        }
        let vecs: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); self.dim];
                v[i] = Rational::one();
                v[n + i] = Rational::one();
                v
            })
            .collect();
        Ok(Subspace::span(self.dim, &vecs)?)
    }

    /// `ad x` is nilpotent, tested by powers up to `dim`.
    pub fn is_ad_nilpotent(&self, x: &AlgebraElement) -> Result<bool, LieError> {
        Ok(self.ad_nilpotency_order(x)?.is_some())
    }

    /// Smallest `k` with `(ad x)^k = 0`, if any.
    pub fn ad_nilpotency_order(&self, x: &AlgebraElement) -> Result<Option<usize>, LieError> {
        self.check(x)?;
        // Track the images of every basis vector under repeated brackets.
        let mut vecs: Vec<Vec<Rational>> = (0..self.dim).map(|i| AlgebraElement::basis(self.dim, i).coords).collect();
        for k in 1..=self.dim + 1 {
            vecs = vecs
                .par_iter()
                .map(|v| self.bracket_vec(&x.coords, v))
                .filter(|v| v.iter().any(|c| !c.is_zero()))
                .collect();
            if vecs.is_empty() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// Exact inverse via Gauss-Jordan on `[p | I]`.
pub fn invert(p: &RationalMatrix) -> Option<RationalMatrix> {
    let n = p.rows();
    if p.cols() != n {
        return None;
    }
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = p.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(piv, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = a.into_iter().map(|row| row[n..].to_vec()).collect();
    RationalMatrix::from_rows(n, rows).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{q, rank};

    fn sl2() -> LieAlgebra {
        // basis H, X, Y
        LieAlgebra::from_basis_brackets(vec!["H".into(), "X".into(), "Y".into()], |i, j| match (i, j) {
            (0, 1) => vec![(1, q(2))],
            (0, 2) => vec![(2, q(-2))],
            (1, 2) => vec![(0, q(1))],
            _ => vec![],
        })
    }

    #[test]
    fn sl2_basics() {
        let g = sl2();
        g.check_antisymmetry().unwrap();
        g.check_jacobi().unwrap();
        let x = g.basis_element(1);
        assert!(g.bracket(&x, &x).unwrap().is_zero());
        assert_eq!(rank(&g.ad_matrix(&x).unwrap()), 2);
        let kf = g.killing();
        assert_eq!(kf.get(0, 0), &q(8));
        assert_eq!(kf.get(1, 2), &q(4));
        assert_eq!(kf.get(1, 1), &q(0));
        assert!(g.center().is_zero());
        assert_eq!(g.ad_nilpotency_order(&x).unwrap(), Some(3));
        assert!(g.bracket(&x, &AlgebraElement::zero(4)).is_err());
    }

    #[test]
    fn direct_sum_and_diagonal() {
        let g = sl2();
        g.killing();
        let s = g.direct_sum(&g);
        assert_eq!(s.dim(), 6);
        let d = s.diag_subalgebra().unwrap();
        assert_eq!(d.dim(), 3);
        assert!(s.is_subalgebra(&d).unwrap());
        let first = Subspace::span(6, &[s.basis_element(0).coords, s.basis_element(1).coords, s.basis_element(2).coords]).unwrap();
        assert!(d.intersect(&first).unwrap().is_zero());
        // Killing form on the diagonal is twice that of a factor.
        let (x, y) = (g.basis_element(1), g.basis_element(2));
        let dx = AlgebraElement::new([x.coords.clone(), x.coords.clone()].concat());
        let dy = AlgebraElement::new([y.coords.clone(), y.coords.clone()].concat());
        assert_eq!(s.killing_form(&dx, &dy).unwrap(), q(2) * g.killing_form(&x, &y).unwrap());
        // Cached and recomputed Killing forms agree.
        assert_eq!(*s.killing(), s.compute_killing());
        assert!(g.diag_subalgebra().is_err());
    }

    #[test]
    fn change_of_basis_roundtrip() {
        let g = sl2();
        let p = RationalMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, -1]]);
        let h = g.change_basis(&p, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        h.check_jacobi().unwrap();
        assert!(h.center().is_zero());
        assert_eq!(rank(h.killing()), 3);
        assert!(invert(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])).is_none());
        let aut = RationalMatrix::from_i64_rows(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert!(g.is_automorphism(&aut));
        assert!(!g.is_automorphism(&RationalMatrix::identity(3).scale(&q(2))));
    }
}
