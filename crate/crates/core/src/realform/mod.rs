//! Real forms `g_R = k + p` built from Satake data.
//!
//! The Cartan subalgebra `h` of the Chevalley basis is taken maximally split.
//! On roots, θ fixes black simple roots and sends a white `α_j` to
//! `-w_B(α_{ε(j)})`, where `w_B` is the longest element of the Weyl group of
//! the black nodes and ε is the diagram involution. On the Chevalley basis,
//! `θX_{±α_j} = X_{±α_j}` for black nodes and `θX_{±α_j} = s_j X_{±θα_j}` for
//! white ones, extended through extraspecial brackets. The signs `s_j = ±1`
//! are searched until θ is an involutive automorphism.
//!
//! With ω the Chevalley involution, `φ = θω` is a rational involution and
//! `g_R = E₊ ⊕ iE₋` for its eigenspaces `E±`. The real basis keeps the
//! rational vector of each basis element together with a flag for the factor
//! `i`, so all real structure constants stay in ℚ.

pub mod catalog;

use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::exactlin::{gram_matrix, is_positive_definite, kernel, q, LinAlgError, Rational, RationalMatrix, Subspace};
use crate::lie::{invert, to_sparse, AlgebraElement, LieAlgebra, LieError, SparseVec};
use crate::rootsys::{CartanType, RootSystem};

pub use catalog::Catalog;

#[derive(Debug, Error)]
pub enum RealFormError {
    #[error("{id}: invalid specification: {reason}")]
    InvalidSpec { id: String, reason: String },
    #[error("{id}: invalid involution: {reason}")]
    InvalidInvolution { id: String, reason: String },
    #[error("{id}: not a Cartan involution: {reason}")]
    NotCartanInvolution { id: String, reason: String },
    #[error("{id}: real rank {found}, expected {expected}")]
    RankMismatch { id: String, expected: usize, found: usize },
    #[error("{id}: {quantity} is {found}, expected {expected}")]
    ExpectationMismatch {
        id: String,
        quantity: String,
        expected: usize,
        found: usize,
    },
    #[error("{id}: internal inconsistency: {reason}")]
    Internal { id: String, reason: String },
    #[error("catalog error: {0}")]
    Catalog(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpectedNg {
    Value(usize),
    EqualsComplex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFormSpec {
    pub id: String,
    pub cartan_type: CartanType,
    /// Zero-based permutation of the simple roots.
    pub diagram_involution: Vec<usize>,
    /// `+1` for compact (black) nodes, `-1` for noncompact (white) nodes.
    pub generator_signs: Vec<i8>,
    pub expected_real_rank: usize,
    pub expected_n_g: ExpectedNg,
    pub slow: bool,
}

impl RealFormSpec {
    pub fn is_black(&self, j: usize) -> bool {
        self.generator_signs[j] > 0
    }

    pub fn validate(&self) -> Result<(), RealFormError> {
        let bad = |reason: String| RealFormError::InvalidSpec {
            id: self.id.clone(),
            reason,
        };
        let n = self.cartan_type.rank();
        let e = &self.diagram_involution;
        if e.len() != n || self.generator_signs.len() != n {
            return Err(bad("length does not match rank".into()));
        }
        let rs = RootSystem::new(self.cartan_type);
        let cm = rs.cartan_matrix();
        for i in 0..n {
            if e[i] >= n || e[e[i]] != i {
                return Err(bad("diagram map is not an involution".into()));
            }
            for j in 0..n {
                if cm[e[i]][e[j]] != cm[i][j] {
                    return Err(bad("diagram map does not preserve the Cartan matrix".into()));
                }
            }
            if self.is_black(i) != self.is_black(e[i]) {
                return Err(bad("diagram map does not preserve node colours".into()));
            }
        }
        if self.expected_real_rank == 0 || self.expected_real_rank > n {
            return Err(bad("real rank out of range".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MinimalityCase {
    One,
    Two,
    Three,
}

impl MinimalityCase {
    pub fn number(self) -> u8 {
        match self {
            MinimalityCase::One => 1,
            MinimalityCase::Two => 2,
            MinimalityCase::Three => 3,
        }
    }
}

/// A basis vector `ε·u` of `g_R`, where `u` is rational in the Chevalley
/// basis and `ε ∈ {1, i}`.
#[derive(Debug, Clone)]
pub struct RealBasisVector {
    pub label: String,
    pub chevalley: Vec<Rational>,
    pub imaginary: bool,
    /// Root index when the vector lies in `g_α + g_{-θα}`.
    pub root: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct RestrictedRoot {
    /// Values on the basis of `a`.
    pub functional: Vec<Rational>,
    pub multiplicity: usize,
    pub positive: bool,
    /// Coordinates in the restricted simple roots.
    pub simple_coords: Vec<i64>,
    pub space: Subspace,
}

#[derive(Debug, Clone)]
pub struct RestrictedRootData {
    pub roots: Vec<RestrictedRoot>,
    pub simple: Vec<Vec<Rational>>,
    pub mu: Vec<Rational>,
    pub a_mu: AlgebraElement,
    pub a_perp_mu: Subspace,
    pub n_plus: Subspace,
    pub zero_space: Subspace,
}

impl RestrictedRootData {
    pub fn mu_space(&self) -> &Subspace {
        &self.roots.iter().find(|r| r.functional == self.mu).expect("μ is a restricted root").space
    }

    pub fn multiplicity(&self, functional: &[Rational]) -> usize {
        self.roots.iter().find(|r| r.functional == functional).map_or(0, |r| r.multiplicity)
    }

    /// Evaluates a functional on an element of `a`, given in real coordinates.
    pub fn evaluate(&self, functional: &[Rational], h: &[Rational]) -> Rational {
        functional.iter().zip(h).map(|(f, x)| f * x).sum()
    }
}

#[derive(Debug)]
pub struct RealForm {
    spec: RealFormSpec,
    complex: ChevalleyAlgebra,
    theta_roots: Vec<usize>,
    theta_complex: RationalMatrix,
    basis: Vec<RealBasisVector>,
    to_real: Vec<SparseVec>,
    algebra: LieAlgebra,
    theta: RationalMatrix,
    k: Subspace,
    p: Subspace,
    a: Subspace,
    m: Subspace,
    restricted: RestrictedRootData,
    hermitian: OnceLock<bool>,
    k_complex: OnceLock<Subspace>,
}

/// `w(v)` for `w` given by its columns.
fn apply_cols(cols: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut out = vec![0; n];
    for (j, &vj) in v.iter().enumerate() {
        if vj != 0 {
            for i in 0..n {
                out[i] += vj * cols[j][i];
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Longest element of the Weyl group generated by the given simple
/// reflections, as columns acting on root coordinates.
fn longest_element(rs: &RootSystem, nodes: &[usize]) -> Vec<Vec<i64>> {
    let n = rs.rank();
    let mut w: Vec<Vec<i64>> = (0..n).map(|j| unit(n, j)).collect();
    loop {
        let next = nodes.iter().copied().find(|&i| {
            let img = apply_cols(&w, &unit(n, i));
            img.iter().all(|&c| c >= 0)
        });
        let Some(i) = next else {
            return w;
        };
        // w ← w s_i
        let s_cols: Vec<Vec<i64>> = (0..n).map(|j| rs.reflect(i, &unit(n, j))).collect();
        w = s_cols.iter().map(|c| apply_cols(&w, c)).collect();
    }
}

impl RealForm {
    pub fn realize(spec: &RealFormSpec) -> Result<RealForm, RealFormError> {
        spec.validate()?;
        let id = spec.id.clone();
        let invalid = |reason: String| RealFormError::InvalidInvolution { id: id.clone(), reason };
        let complex = ChevalleyAlgebra::new(spec.cartan_type);
        let rs = complex.root_system().clone();
        let r = rs.rank();
        let np = rs.num_positive();
        let total = 2 * np;

        // θ on roots.
        let blacks: Vec<usize> = (0..r).filter(|&j| spec.is_black(j)).collect();
        let w_b = longest_element(&rs, &blacks);
        let tstar: Vec<Vec<i64>> = (0..r)
            .map(|j| {
                if spec.is_black(j) {
                    unit(r, j)
                } else {
                    apply_cols(&w_b, &unit(r, spec.diagram_involution[j])).iter().map(|c| -c).collect()
                }
            })
            .collect();
        for &j in &blacks {
            let img: Vec<i64> = apply_cols(&w_b, &unit(r, spec.diagram_involution[j])).iter().map(|c| -c).collect();
            if img != unit(r, j) {
                return Err(invalid(format!("diagram map disagrees with -w_B on black node {}", j + 1)));
            }
        }
        let mut theta_roots = Vec::with_capacity(total);
        for a in 0..total {
            let img = apply_cols(&tstar, &rs.root_coords(a));
            let b = rs.index_of(&img).ok_or_else(|| invalid(format!("θ sends root {:?} outside the root system", rs.root_coords(a))))?;
            theta_roots.push(b);
        }
        for a in 0..total {
            if theta_roots[theta_roots[a]] != a {
                return Err(invalid("θ is not involutive on roots".into()));
            }
        }
        for i in 0..r {
            for j in 0..r {
                if rs.norm2(&unit(r, i)) != rs.norm2(&tstar[i]) || rs.pairing(&tstar[i], &tstar[j]) != rs.cartan_matrix()[i][j] {
                    return Err(invalid("θ does not preserve the inner product".into()));
                }
            }
        }

        // Extraspecial decompositions of positive non-simple roots.
        let decomp: Vec<Option<(usize, usize)>> = (0..np)
            .map(|xi| {
                let c = rs.root_coords(xi);
                (0..r).find_map(|i| {
                    let mut d = c.clone();
                    d[i] -= 1;
                    if d.iter().all(|&x| x == 0) {
                        return None;
                    }
                    rs.index_of(&d).map(|delta| (rs.simple_index(i), delta))
                })
            })
            .collect();

        let whites: Vec<usize> = (0..r).filter(|&j| !spec.is_black(j)).collect();
        let mut found = None;
        for mask in 0u32..(1u32 << whites.len()) {
            let mut s = vec![1i64; r];
            for (bit, &j) in whites.iter().enumerate() {
                s[j] = if mask & (1 << bit) != 0 { 1 } else { -1 };
            }
            if let Some(c) = root_coefficients(&complex, &theta_roots, &decomp, &s) {
                let m = theta_matrix(&complex, &tstar, &theta_roots, &c);
                let sq = m.mul(&m)?;
                if sq == RationalMatrix::identity(complex.dim()) && complex.is_automorphism(&m) {
                    found = Some((c, m));
                    break;
                }
            }
        }
        let (coef, theta_complex) = found.ok_or_else(|| invalid("no choice of signs gives an involutive automorphism".into()))?;

        let (basis, to_real) = real_basis(&complex, &tstar, &theta_roots, &coef);
        let n = basis.len();
        let imag: Vec<bool> = basis.iter().map(|b| b.imaginary).collect();
        let convert = |v: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); n];
            for (j, x) in v.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (k, c) in &to_real[j] {
                    out[*k] += x * c;
                }
            }
            out
        };
        let labels: Vec<String> = basis.iter().map(|b| b.label.clone()).collect();
        let algebra = LieAlgebra::from_basis_brackets(labels, |i, j| {
            let v = complex.bracket_vec(&basis[i].chevalley, &basis[j].chevalley);
            let mut out = to_sparse(&convert(&v));
            if imag[i] && imag[j] {
                for (_, c) in out.iter_mut() {
                    *c = -c.clone();
                }
            }
            out
        });
        let mut theta = RationalMatrix::zeros(n, n);
        for j in 0..n {
            let img = theta_complex.mul_vec(&basis[j].chevalley)?;
            for (k, c) in to_sparse(&convert(&img)) {
                if imag[k] != imag[j] {
                    return Err(RealFormError::Internal {
                        id: id.clone(),
                        reason: "θ mixes real and imaginary parts".into(),
                    });
                }
                theta.set(k, j, c);
            }
        }
        if theta.mul(&theta)? != RationalMatrix::identity(n) || !algebra.is_automorphism(&theta) {
            return Err(invalid("θ is not an involutive automorphism of the real form".into()));
        }

        let k = kernel(&theta.shift_diagonal(&Rational::one())?);
        let p = kernel(&theta.shift_diagonal(&-Rational::one())?);
        if k.dim() + p.dim() != n {
            return Err(invalid("k + p is not the whole algebra".into()));
        }
        let not_cartan = |reason: &str| RealFormError::NotCartanInvolution {
            id: id.clone(),
            reason: reason.into(),
        };
        let kf = algebra.killing();
        let gk = gram_matrix(k.basis(), kf);
        if !k.is_zero() && !is_positive_definite(&gk.scale(&q(-1)))? {
            return Err(not_cartan("Killing form is not negative definite on k"));
        }
        let gp = gram_matrix(p.basis(), kf);
        if !p.is_zero() && !is_positive_definite(&gp)? {
            return Err(not_cartan("Killing form is not positive definite on p"));
        }

        let s = basis.iter().take_while(|b| b.root.is_none() && !b.imaginary).count();
        let a_vecs: Vec<Vec<Rational>> = (0..s).map(|i| AlgebraElement::basis(n, i).coords).collect();
        let a = Subspace::span(n, &a_vecs)?;
        if !algebra.bracket_subspaces(&a, &a)?.is_zero() || !p.contains(&a)? {
            return Err(not_cartan("a is not an abelian subspace of p"));
        }
        let z_a = algebra.centralizer_of(&a)?;
        if z_a.intersect(&p)? != a {
            return Err(not_cartan("a is not maximal abelian in p"));
        }
        let m = z_a.intersect(&k)?;
        if s != spec.expected_real_rank {
            return Err(RealFormError::RankMismatch {
                id: id.clone(),
                expected: spec.expected_real_rank,
                found: s,
            });
        }

        let restricted = restricted_root_data(spec, &rs, &algebra, &basis, s, &z_a, &m)?;

        Ok(RealForm {
            spec: spec.clone(),
            complex,
            theta_roots,
            theta_complex,
            basis,
            to_real,
            algebra,
            theta,
            k,
            p,
            a,
            m,
            restricted,
            hermitian: OnceLock::new(),
            k_complex: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &RealFormSpec {
        &self.spec
    }

    pub fn id(&self) -> &str {
        &self.spec.id
    }

    /// The real Lie algebra in its rational real basis.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The complexification in its Chevalley basis.
    pub fn complex(&self) -> &ChevalleyAlgebra {
        &self.complex
    }

    pub fn real_basis(&self) -> &[RealBasisVector] {
        &self.basis
    }

    pub fn theta_matrix(&self) -> &RationalMatrix {
        &self.theta
    }

    /// θ on `g_C` in the Chevalley basis.
    pub fn theta_complex(&self) -> &RationalMatrix {
        &self.theta_complex
    }

    /// θ on root indices.
    pub fn theta_on_roots(&self) -> &[usize] {
        &self.theta_roots
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn p(&self) -> &Subspace {
        &self.p
    }

    pub fn a(&self) -> &Subspace {
        &self.a
    }

    pub fn m_centralizer(&self) -> &Subspace {
        &self.m
    }

    pub fn real_rank(&self) -> usize {
        self.a.dim()
    }

    pub fn restricted(&self) -> &RestrictedRootData {
        &self.restricted
    }

    /// `k_C`, the fixed points of θ on `g_C`.
    pub fn k_complex(&self) -> &Subspace {
        self.k_complex
            .get_or_init(|| kernel(&self.theta_complex.shift_diagonal(&Rational::one()).expect("square")))
    }

    /// Coordinates in the real basis of a rational Chevalley vector lying in
    /// the rational span of the real basis vectors `u`.
    pub fn chevalley_to_real_coords(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in &self.to_real[j] {
                out[*k] += x * c;
            }
        }
        out
    }

    pub fn hermitian_type(&self) -> bool {
        *self.hermitian.get_or_init(|| {
            let z = self.algebra.centralizer_of(&self.k).expect("same algebra");
            !z.intersect(&self.k).expect("same ambient").is_zero()
        })
    }

    /// Whether θβ = -β, read off from the action of θ on `X_β`.
    pub fn theta_beta_test(&self) -> bool {
        let xb = self.complex.x_beta();
        let img = AlgebraElement::new(self.theta_complex.mul_vec(&xb.coords).expect("square"));
        img.ratio_to(&self.complex.x_minus_beta()).is_some()
    }

    pub fn minimality_case(&self) -> MinimalityCase {
        if !self.theta_beta_test() {
            MinimalityCase::One
        } else if self.hermitian_type() {
            MinimalityCase::Three
        } else {
            MinimalityCase::Two
        }
    }

    /// Representative `X` of `g(a; μ)`: the first canonical basis vector.
    pub fn x_mu(&self) -> AlgebraElement {
        AlgebraElement::new(self.restricted.mu_space().basis()[0].clone())
    }

    /// `n(g) = ½ dim Ad(G)X` for `X ∈ g(a; μ)`, checked against the catalog.
    pub fn n_real(&self) -> Result<usize, RealFormError> {
        let x = self.x_mu();
        let z = self.algebra.centralizer(&x)?;
        let orbit = self.dim() - z.dim();
        if !orbit.is_multiple_of(2) {
            return Err(RealFormError::Internal {
                id: self.spec.id.clone(),
                reason: "odd orbit dimension".into(),
            });
        }
        let value = orbit / 2;
        let expected = match self.spec.expected_n_g {
            ExpectedNg::Value(v) => v,
            ExpectedNg::EqualsComplex => self.complex.root_system().dual_coxeter_number() - 1,
        };
        if value != expected {
            return Err(RealFormError::ExpectationMismatch {
                id: self.spec.id.clone(),
                quantity: "n(g)".into(),
                expected,
                found: value,
            });
        }
        Ok(value)
    }

    /// Checks `[k,k] ⊆ k`, `[k,p] ⊆ p`, `[p,p] ⊆ k` as subspace containments.
    pub fn check_cartan_brackets(&self) -> Result<bool, RealFormError> {
        let g = &self.algebra;
        Ok(self.k.contains(&g.bracket_subspaces(&self.k, &self.k)?)?
            && self.p.contains(&g.bracket_subspaces(&self.k, &self.p)?)?
            && self.k.contains(&g.bracket_subspaces(&self.p, &self.p)?)?)
    }
}

/// Coefficients `c_α` with `θX_α = c_α X_{θα}`, or `None` if some forced
/// coefficient is not ±1.
fn root_coefficients(
    alg: &ChevalleyAlgebra,
    theta_roots: &[usize],
    decomp: &[Option<(usize, usize)>],
    s: &[i64],
) -> Option<Vec<Rational>> {
    let rs = alg.root_system();
    let np = rs.num_positive();
    let mut c = vec![Rational::zero(); 2 * np];
    for (j, &sj) in s.iter().enumerate() {
        let a = rs.simple_index(j);
        c[a] = q(sj);
        c[rs.negate_index(a)] = q(sj);
    }
    for xi in 0..np {
        let Some((g, d)) = decomp[xi] else {
            continue;
        };
        for (gg, dd, target) in [(g, d, xi), (rs.negate_index(g), rs.negate_index(d), rs.negate_index(xi))] {
            let n = alg.structure_constant(gg, dd);
            let n_img = alg.structure_constant(theta_roots[gg], theta_roots[dd]);
            let v = &c[gg] * &c[dd] * q(n_img) / q(n);
            if v.abs() != Rational::one() {
                return None;
            }
            c[target] = v;
        }
    }
    Some(c)
}

fn theta_matrix(alg: &ChevalleyAlgebra, tstar: &[Vec<i64>], theta_roots: &[usize], c: &[Rational]) -> RationalMatrix {
    let rs = alg.root_system();
    let n = alg.dim();
    let r = rs.rank();
    let mut m = RationalMatrix::zeros(n, n);
    for j in 0..r {
        let h = rs.coroot_in_simple_coroots(&tstar[j]);
        for (i, hi) in h.into_iter().enumerate() {
            if hi != 0 {
                m.set(i, j, q(hi));
            }
        }
    }
    for a in 0..theta_roots.len() {
        m.set(alg.x_index(theta_roots[a]), alg.x_index(a), c[a].clone());
    }
    m
}

/// Real basis of `g_R` and the inverse map from Chevalley basis vectors to
/// real coordinates.
fn real_basis(
    alg: &ChevalleyAlgebra,
    tstar: &[Vec<i64>],
    theta_roots: &[usize],
    c: &[Rational],
) -> (Vec<RealBasisVector>, Vec<SparseVec>) {
    let rs = alg.root_system();
    let r = rs.rank();
    let n = alg.dim();
    // θ on h in the H_i coordinates.
    let mut th = RationalMatrix::zeros(r, r);
    for j in 0..r {
        for (i, hi) in rs.coroot_in_simple_coroots(&tstar[j]).into_iter().enumerate() {
            th.set(i, j, q(hi));
        }
    }
    let a_part = kernel(&th.shift_diagonal(&-Rational::one()).expect("square"));
    let t_part = kernel(&th.shift_diagonal(&Rational::one()).expect("square"));
    let mut basis = Vec::with_capacity(n);
    let embed = |h: &[Rational]| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); n];
        v[..r].clone_from_slice(h);
        v
    };
    for (i, h) in a_part.basis().iter().enumerate() {
        basis.push(RealBasisVector {
            label: format!("A{}", i + 1),
            chevalley: embed(h),
            imaginary: false,
            root: None,
        });
    }
    for (i, h) in t_part.basis().iter().enumerate() {
        basis.push(RealBasisVector {
            label: format!("iT{}", i + 1),
            chevalley: embed(h),
            imaginary: true,
            root: None,
        });
    }
    // Columns of the h-block change of basis, to invert it.
    let hcols: Vec<Vec<Rational>> = a_part.basis().iter().chain(t_part.basis()).cloned().collect();
    let q_mat = RationalMatrix::from_columns(r, &hcols).expect("consistent sizes");
    let q_inv = invert(&q_mat).expect("θ is diagonalisable on h");
    let mut to_real: Vec<SparseVec> = (0..r)
        .map(|j| (0..r).filter(|&i| !q_inv.get(i, j).is_zero()).map(|i| (i, q_inv.get(i, j).clone())).collect())
        .collect();
    to_real.resize(n, SparseVec::new());

    let total = theta_roots.len();
    let mut done = vec![false; total];
    let coords = |a: usize| rs.root_coords(a);
    for a in 0..total {
        if done[a] {
            continue;
        }
        // φX_a = θ(-X_{-a}) = -c_{-a} X_{θ(-a)}
        let na = rs.negate_index(a);
        let b = theta_roots[na];
        let cb = -c[na].clone();
        let xa = alg.x_index(a);
        let xb = alg.x_index(b);
        if b == a {
            let imaginary = cb.is_negative();
            let k = basis.len();
            basis.push(RealBasisVector {
                label: if imaginary { format!("iX{:?}", coords(a)) } else { format!("X{:?}", coords(a)) },
                chevalley: AlgebraElement::basis(n, xa).coords,
                imaginary,
                root: Some(a),
            });
            to_real[xa] = vec![(k, Rational::one())];
            done[a] = true;
        } else {
            let k = basis.len();
            let sign = if cb.is_positive() { "+" } else { "-" };
            let anti = if cb.is_positive() { "-" } else { "+" };
            let mut plus = AlgebraElement::basis(n, xa).coords;
            plus[xb] = cb.clone();
            let mut minus = AlgebraElement::basis(n, xa).coords;
            minus[xb] = -cb.clone();
            basis.push(RealBasisVector {
                label: format!("X{:?}{sign}X{:?}", coords(a), coords(b)),
                chevalley: plus,
                imaginary: false,
                root: Some(a),
            });
            basis.push(RealBasisVector {
                label: format!("i(X{:?}{anti}X{:?})", coords(a), coords(b)),
                chevalley: minus,
                imaginary: true,
                root: Some(a),
            });
            let half = Rational::new(1.into(), 2.into());
            to_real[xa] = vec![(k, half.clone()), (k + 1, half.clone())];
            let hc = &half / &cb;
            to_real[xb] = vec![(k, hc.clone()), (k + 1, -hc)];
            done[a] = true;
            done[b] = true;
        }
    }
    (basis, to_real)
}

fn restricted_root_data(
    spec: &RealFormSpec,
    rs: &RootSystem,
    algebra: &LieAlgebra,
    basis: &[RealBasisVector],
    s: usize,
    z_a: &Subspace,
    m: &Subspace,
) -> Result<RestrictedRootData, RealFormError> {
    let id = &spec.id;
    let internal = |reason: String| RealFormError::Internal { id: id.clone(), reason };
    let n = algebra.dim();
    let r = rs.rank();
    let a_h: Vec<&[Rational]> = basis[..s].iter().map(|b| &b.chevalley[..r]).collect();
    let weight = |coords: &[i64]| -> Vec<Rational> {
        a_h.iter()
            .map(|h| (0..r).map(|i| q(rs.pairing(coords, &unit(r, i))) * &h[i]).sum())
            .collect()
    };

    // Candidate functionals with their expected multiplicities and signs.
    let mut order: Vec<Vec<Rational>> = Vec::new();
    let mut info: HashMap<Vec<Rational>, (usize, bool)> = HashMap::new();
    let mut zero_count = s;
    let np = rs.num_positive();
    for b in basis {
        let Some(a) = b.root else {
            if b.imaginary {
                zero_count += 1;
            }
            continue;
        };
        let w = weight(&rs.root_coords(a));
        if w.iter().all(Zero::is_zero) {
            zero_count += 1;
            continue;
        }
        let pos = a < np;
        match info.get_mut(&w) {
            Some(entry) => {
                if entry.1 != pos {
                    return Err(internal("positive system is not compatible with restriction".into()));
                }
                entry.0 += 1;
            }
            None => {
                info.insert(w.clone(), (1, pos));
                order.push(w);
            }
        }
    }
    // The real basis consists of joint eigenvectors of ad a; each weight
    // space is the span of the basis vectors carrying that weight.
    let ad_a: Vec<RationalMatrix> = (0..s).map(|i| algebra.ad_matrix(&AlgebraElement::basis(n, i))).collect::<Result<_, _>>()?;
    let mut spaces: HashMap<Vec<Rational>, Vec<Vec<Rational>>> = HashMap::new();
    let zero = vec![Rational::zero(); s];
    for (j, b) in basis.iter().enumerate() {
        let w = match b.root {
            Some(a) => weight(&rs.root_coords(a)),
            None => zero.clone(),
        };
        for (k, m) in ad_a.iter().enumerate() {
            for i in 0..n {
                let expected = if i == j { w[k].clone() } else { Rational::zero() };
                if *m.get(i, j) != expected {
                    return Err(internal(format!("basis vector {} is not an a-weight vector", b.label)));
                }
            }
        }
        spaces.entry(w).or_default().push(AlgebraElement::basis(n, j).coords);
    }
    let joint = |nu: &[Rational]| -> Result<Subspace, RealFormError> { Ok(Subspace::span(n, spaces.get(nu).map_or(&[][..], |v| &v[..]))?) };
    let zero_space = joint(&zero)?;
    if zero_space.dim() != zero_count || zero_space != *z_a || zero_space.dim() != m.dim() + s {
        return Err(internal("zero restricted weight space has the wrong dimension".into()));
    }

    // Restricted simple roots: restrictions of white simple roots.
    let mut simple: Vec<Vec<Rational>> = Vec::new();
    for j in 0..r {
        if spec.is_black(j) {
            continue;
        }
        let w = weight(&unit(r, j));
        if !simple.contains(&w) {
            simple.push(w);
        }
    }
    if simple.len() != s {
        return Err(internal("restricted simple roots do not form a basis".into()));
    }
    let smat = RationalMatrix::from_columns(s, &simple)?;
    let sinv = invert(&smat).ok_or_else(|| internal("restricted simple roots are dependent".into()))?;
    let to_simple = |nu: &[Rational]| -> Result<Vec<i64>, RealFormError> {
        sinv.mul_vec(nu)?
            .into_iter()
            .map(|x| {
                if x.is_integer() {
                    Ok(x.to_integer().try_into().expect("small coordinate"))
                } else {
                    Err(internal("non-integral restricted root coordinates".into()))
                }
            })
            .collect()
    };

    let mut roots = Vec::new();
    let mut total = zero_space.dim();
    let mut n_plus_vecs: Vec<Vec<Rational>> = Vec::new();
    for nu in order {
        let (mult, positive) = info[&nu];
        let space = joint(&nu)?;
        if space.dim() != mult {
            return Err(internal(format!("multiplicity mismatch for {nu:?}")));
        }
        total += mult;
        let simple_coords = to_simple(&nu)?;
        let ok_sign = if positive { simple_coords.iter().all(|&c| c >= 0) } else { simple_coords.iter().all(|&c| c <= 0) };
        if !ok_sign {
            return Err(internal("restricted root has mixed-sign coordinates".into()));
        }
        if positive {
            n_plus_vecs.extend(space.basis().iter().cloned());
        }
        roots.push(RestrictedRoot {
            functional: nu,
            multiplicity: mult,
            positive,
            simple_coords,
            space,
        });
    }
    if total != n {
        return Err(internal("restricted root spaces do not exhaust the algebra".into()));
    }
    let mu = weight(&rs.highest_root().coords);
    let mu_coords = to_simple(&mu)?;
    for root in roots.iter().filter(|x| x.positive) {
        if root.simple_coords.iter().zip(&mu_coords).any(|(a, b)| a > b) {
            return Err(internal("μ is not dominance-maximal".into()));
        }
    }
    // a^{⊥μ} and A_μ.
    let mu_row = RationalMatrix::from_rows(s, vec![mu.clone()])?;
    let perp_small = kernel(&mu_row);
    let embed = |v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n];
        out[..s].clone_from_slice(v);
        out
    };
    let perp_vecs: Vec<Vec<Rational>> = perp_small.basis().iter().map(|v| embed(v)).collect();
    let a_perp_mu = Subspace::span(n, &perp_vecs)?;
    let a_sub = Subspace::span(n, &(0..s).map(|i| AlgebraElement::basis(n, i).coords).collect::<Vec<_>>())?;
    let line = a_perp_mu.orth_complement(algebra.killing())?.intersect(&a_sub)?;
    if line.dim() != 1 {
        return Err(internal("Killing complement of a^{⊥μ} in a is not a line".into()));
    }
    let v = &line.basis()[0];
    let val: Rational = mu.iter().zip(v).map(|(f, x)| f * x).sum();
    let a_mu = AlgebraElement::new(v.iter().map(|x| x * q(2) / &val).collect());
    let n_plus = Subspace::span(n, &n_plus_vecs)?;
    Ok(RestrictedRootData {
        roots,
        simple,
        mu,
        a_mu,
        a_perp_mu,
        n_plus,
        zero_space,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn realize(id: &str) -> RealForm {
        let c = Catalog::builtin();
        RealForm::realize(c.get(id).unwrap()).unwrap_or_else(|e| panic!("{e}"))
    }

    #[test]
    fn sl2r() {
        let rf = realize("sl(2,R)");
        assert_eq!(rf.dim(), 3);
        assert_eq!(rf.real_rank(), 1);
        assert_eq!(rf.k().dim(), 1);
        assert!(rf.theta_beta_test());
        assert!(rf.hermitian_type());
        assert_eq!(rf.n_real().unwrap(), 1);
    }

    #[test]
    fn sp11_restricted_roots() {
        let rf = realize("sp(1,1)");
        assert_eq!(rf.dim(), 10);
        assert_eq!(rf.real_rank(), 1);
        let rd = rf.restricted();
        let mults: usize = rd.roots.iter().map(|x| x.multiplicity).sum();
        assert_eq!(mults + rd.zero_space.dim(), 10);
        assert!(!rf.theta_beta_test());
        assert!(!rf.hermitian_type());
        assert_eq!(rf.minimality_case(), MinimalityCase::One);
        assert_eq!(rf.n_real().unwrap(), 3);
    }

    #[test]
    fn split_g2() {
        let rf = realize("g2(2)");
        assert_eq!(rf.real_rank(), 2);
        assert_eq!(rf.restricted().roots.len(), 12);
        assert!(rf.restricted().roots.iter().all(|x| x.multiplicity == 1));
        assert_eq!(rf.n_real().unwrap(), 3);
        assert!(rf.check_cartan_brackets().unwrap());
    }

    #[test]
    fn su_star_4() {
        let rf = realize("su*(4)");
        assert_eq!(rf.dim(), 15);
        let rd = rf.restricted();
        assert_eq!(rd.roots.len(), 2);
        assert!(rd.roots.iter().all(|x| x.multiplicity == 4));
        assert_eq!(rf.n_real().unwrap(), 4);
    }

    #[test]
    fn weight_spaces_match_joint_kernels() {
        for id in ["sp(1,1)", "su(2,3)", "g2(2)", "so(6,2)"] {
            let rf = realize(id);
            let g = rf.algebra();
            let n = g.dim();
            let s = rf.real_rank();
            let joint = |nu: &[Rational]| {
                let mut rows = Vec::new();
                for k in 0..s {
                    let m = g.ad_matrix(&AlgebraElement::basis(n, k)).unwrap();
                    rows.extend(m.shift_diagonal(&nu[k]).unwrap().row_vectors());
                }
                kernel(&RationalMatrix::from_rows(n, rows).unwrap())
            };
            let rd = rf.restricted();
            for root in &rd.roots {
                assert_eq!(joint(&root.functional), root.space, "{id}");
            }
            assert_eq!(joint(&vec![Rational::zero(); s]), rd.zero_space, "{id}");
        }
    }

    #[test]
    fn a_mu_normalised() {
        for id in ["sl(3,R)", "su(1,2)", "sp(2,R)", "so(4,1)", "so*(6)"] {
            let rf = realize(id);
            let rd = rf.restricted();
            assert_eq!(rd.evaluate(&rd.mu, &rd.a_mu.coords), q(2), "{id}");
        }
    }

    #[test]
    fn cases() {
        assert_eq!(realize("sl(3,R)").minimality_case(), MinimalityCase::Two);
        assert!(!realize("sl(3,R)").hermitian_type());
        assert_eq!(realize("sp(2,R)").minimality_case(), MinimalityCase::Three);
        assert_eq!(realize("sp(1,2)").minimality_case(), MinimalityCase::One);
    }
}
