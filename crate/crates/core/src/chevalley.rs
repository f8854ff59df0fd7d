//! Chevalley bases of complex simple Lie algebras with integer structure
//! constants.
//!
//! Basis order: `H_1..H_r`, then `X_α` for positive roots in the order of
//! [`RootSystem::positive_roots`], then `X_{-α}` in the same order.
//!
//! * `[H_i, X_α] = ⟨α, α_i∨⟩ X_α`
//! * `[X_α, X_{-α}] = H_α`, the coroot written in the `H_i`
//! * `[X_α, X_γ] = N_{α,γ} X_{α+γ}`
//!
//! Signs follow the extraspecial-pair convention: for each positive non-simple
//! root ξ, let `i` be the smallest index with `ξ - α_i` a root; then
//! `N_{α_i, ξ-α_i} = p + 1 > 0`. All other constants are forced by the
//! Jacobi identity together with `N_{-α,-γ} = -N_{α,γ}`.

use std::collections::HashMap;
use std::ops::Deref;

use num_traits::Zero;

use crate::exactlin::{q, Rational};
use crate::lie::{AlgebraElement, LieAlgebra, SparseVec};
use crate::rootsys::{CartanType, RootSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    CartanGenerator(usize),
    RootVector(usize),
}

#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    root_system: RootSystem,
    algebra: LieAlgebra,
    labels: Vec<BasisLabel>,
    /// `N_{a,b}` keyed by root indices, for every pair with `a + b` a root.
    constants: HashMap<(usize, usize), i64>,
}

impl Deref for ChevalleyAlgebra {
    type Target = LieAlgebra;

    fn deref(&self) -> &LieAlgebra {
        &self.algebra
    }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

struct ConstantSolver<'a> {
    rs: &'a RootSystem,
    roots: Vec<Vec<i64>>,
    norms: Vec<Rational>,
    np: usize,
    /// Constants for pairs of positive roots.
    pos: HashMap<(usize, usize), i64>,
}

impl<'a> ConstantSolver<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let roots: Vec<Vec<i64>> = rs.all_roots().into_iter().map(|r| r.coords).collect();
        let norms = roots.iter().map(|r| rs.norm2(r)).collect();
        Self {
            rs,
            roots,
            norms,
            np: rs.num_positive(),
            pos: HashMap::new(),
        }
    }

    fn idx(&self, v: &[i64]) -> Option<usize> {
        self.rs.index_of(v)
    }

    fn is_pos(&self, a: usize) -> bool {
        a < self.np
    }

    /// Largest `p` with `b - p·a` a root.
    fn p_value(&self, a: usize, b: usize) -> i64 {
        let mut p = 0;
        let mut v = self.roots[b].clone();
        loop {
            v = v.iter().zip(&self.roots[a]).map(|(x, y)| x - y).collect();
            if self.idx(&v).is_some() {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// `N_{a,b}` as a rational, zero when `a + b` is not a root.
    fn n(&self, a: usize, b: usize) -> Rational {
        let s = add(&self.roots[a], &self.roots[b]);
        let Some(c_neg) = self.idx(&s) else {
            return Rational::zero();
        };
        match (self.is_pos(a), self.is_pos(b)) {
            (true, true) => q(self.pos[&(a, b)]),
            (false, false) => -self.n(self.rs.negate_index(a), self.rs.negate_index(b)),
            _ => {
                // a + b + c = 0 and N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b).
                let c = self.rs.negate_index(c_neg);
                let nc = &self.norms[c];
                if self.is_pos(c) == self.is_pos(a) {
                    nc / &self.norms[b] * self.n(c, a)
                } else {
                    nc / &self.norms[a] * self.n(b, c)
                }
            }
        }
    }

    fn solve(mut self) -> HashMap<(usize, usize), i64> {
        let rank = self.rs.rank();
        for xi in 0..self.np {
            let xi_c = self.roots[xi].clone();
            if xi_c.iter().sum::<i64>() == 1 {
                continue;
            }
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a in 0..self.np {
                let rest: Vec<i64> = xi_c.iter().zip(&self.roots[a]).map(|(x, y)| x - y).collect();
                if let Some(b) = self.idx(&rest) {
                    if self.is_pos(b) && a < b {
                        pairs.push((a, b));
                    }
                }
            }
            let gamma = (0..rank)
                .map(|i| self.rs.simple_index(i))
                .find(|&g| pairs.iter().any(|&(a, _)| a == g))
                .expect("non-simple root has an extraspecial pair");
            let (_, delta) = *pairs.iter().find(|&&(a, _)| a == gamma).expect("pair present");
            let n_gd = self.p_value(gamma, delta) + 1;
            self.pos.insert((gamma, delta), n_gd);
            self.pos.insert((delta, gamma), -n_gd);
            let xi_norm = self.norms[xi].clone();
            for &(a, b) in &pairs {
                if a == gamma {
                    continue;
                }
                let na = self.rs.negate_index(a);
                let nb = self.rs.negate_index(b);
                let mut bracket_sum = Rational::zero();
                let d_minus_a = add(&self.roots[delta], &self.roots[na]);
                if let Some(i) = self.idx(&d_minus_a) {
                    bracket_sum += self.n(delta, na) * self.n(gamma, nb) / &self.norms[i];
                }
                let g_minus_a = add(&self.roots[gamma], &self.roots[na]);
                if let Some(i) = self.idx(&g_minus_a) {
                    bracket_sum += self.n(na, gamma) * self.n(delta, nb) / &self.norms[i];
                }
                let n_neg = -(&xi_norm) / q(n_gd) * bracket_sum;
                let n_ab = -n_neg;
                assert!(n_ab.is_integer(), "non-integral structure constant");
                let v: i64 = n_ab.to_integer().try_into().expect("small constant");
                self.pos.insert((a, b), v);
                self.pos.insert((b, a), -v);
            }
        }
        let total = 2 * self.np;
        let mut all = HashMap::new();
        for a in 0..total {
            for b in 0..total {
                let s = add(&self.roots[a], &self.roots[b]);
                if self.idx(&s).is_some() {
                    let v = self.n(a, b);
                    assert!(v.is_integer(), "non-integral structure constant");
                    all.insert((a, b), v.to_integer().try_into().expect("small constant"));
                }
            }
        }
        all
    }
}

impl ChevalleyAlgebra {
    pub fn new(t: CartanType) -> Self {
        build_chevalley(RootSystem::new(t))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn cartan_type(&self) -> CartanType {
        self.root_system.cartan_type()
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.root_system.rank()
    }

    pub fn basis_labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Basis index of `H_i`.
    pub fn h_index(&self, i: usize) -> usize {
        i
    }

    /// Basis index of `X_α` for the root with index `root` in
    /// [`RootSystem::all_roots`].
    pub fn x_index(&self, root: usize) -> usize {
        self.rank() + root
    }

    /// Root index of a basis vector, if it is a root vector.
    pub fn root_of_basis(&self, b: usize) -> Option<usize> {
        b.checked_sub(self.rank())
    }

    pub fn x(&self, root: usize) -> AlgebraElement {
        self.basis_element(self.x_index(root))
    }

    pub fn x_coords(&self, coords: &[i64]) -> Option<AlgebraElement> {
        self.root_system.index_of(coords).map(|i| self.x(i))
    }

    /// `H_α` for the root with the given coordinates.
    pub fn coroot_element(&self, coords: &[i64]) -> AlgebraElement {
        let c = self.root_system.coroot_in_simple_coroots(coords);
        let mut v = AlgebraElement::zero(self.dim());
        for (i, ci) in c.into_iter().enumerate() {
            v.coords[i] = q(ci);
        }
        v
    }

    pub fn highest_root_index(&self) -> usize {
        let beta = self.root_system.highest_root();
        self.root_system.index_of(&beta.coords).expect("highest root is a root")
    }

    /// `X_β` for the highest root β.
    pub fn x_beta(&self) -> AlgebraElement {
        self.x(self.highest_root_index())
    }

    pub fn x_minus_beta(&self) -> AlgebraElement {
        self.x(self.root_system.negate_index(self.highest_root_index()))
    }

    /// `H_β`, the coroot of the highest root.
    pub fn h_beta(&self) -> AlgebraElement {
        self.coroot_element(&self.root_system.highest_root().coords)
    }

    /// `N_{a,b}` for root indices with `a + b` a root, otherwise 0.
    pub fn structure_constant(&self, a: usize, b: usize) -> i64 {
        self.constants.get(&(a, b)).copied().unwrap_or(0)
    }

    /// The Chevalley involution `X_α ↦ -X_{-α}`, `H ↦ -H`, as a permutation
    /// with signs: basis `j` maps to `sign · basis[perm[j]]`.
    pub fn chevalley_involution(&self) -> Vec<(usize, i64)> {
        (0..self.dim())
            .map(|j| match self.root_of_basis(j) {
                None => (j, -1),
                Some(a) => (self.x_index(self.root_system.negate_index(a)), -1),
            })
            .collect()
    }
}

pub fn build_chevalley(rs: RootSystem) -> ChevalleyAlgebra {
    let constants = ConstantSolver::new(&rs).solve();
    let r = rs.rank();
    let roots: Vec<Vec<i64>> = rs.all_roots().into_iter().map(|x| x.coords).collect();
    let total = roots.len();
    let mut labels: Vec<BasisLabel> = (0..r).map(BasisLabel::CartanGenerator).collect();
    labels.extend((0..total).map(BasisLabel::RootVector));
    let names: Vec<String> = labels
        .iter()
        .map(|l| match l {
            BasisLabel::CartanGenerator(i) => format!("H{}", i + 1),
            BasisLabel::RootVector(a) => format!("X{:?}", roots[*a]),
        })
        .collect();
    let pairing: Vec<Vec<i64>> = roots
        .iter()
        .map(|a| {
            (0..r)
                .map(|i| {
                    let mut e = vec![0; r];
                    e[i] = 1;
                    rs.pairing(a, &e)
                })
                .collect()
        })
        .collect();
    let coroots: Vec<Vec<i64>> = roots.iter().map(|a| rs.coroot_in_simple_coroots(a)).collect();
    let algebra = LieAlgebra::from_basis_brackets(names, |i, j| -> SparseVec {
        match (i < r, j < r) {
            (true, true) => vec![],
            (true, false) => {
                let a = j - r;
                vec![(j, q(pairing[a][i]))]
            }
            (false, true) => unreachable!("only i < j is queried"),
            (false, false) => {
                let (a, b) = (i - r, j - r);
                if roots[a] == neg(&roots[b]) {
                    coroots[a].iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k, q(*c))).collect()
                } else {
                    match constants.get(&(a, b)) {
                        Some(&n) => {
                            let s = add(&roots[a], &roots[b]);
                            vec![(r + rs.index_of(&s).expect("sum is a root"), q(n))]
                        }
                        None => vec![],
                    }
                }
            }
        }
    });
    ChevalleyAlgebra {
        root_system: rs,
        algebra,
        labels,
        constants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alg(s: &str) -> ChevalleyAlgebra {
        ChevalleyAlgebra::new(s.parse().unwrap())
    }

    #[test]
    fn sl2_relations() {
        let g = alg("A1");
        assert_eq!(g.dim(), 3);
        let (h, x, y) = (g.basis_element(0), g.x(0), g.x(1));
        assert_eq!(g.bracket(&h, &x).unwrap(), x.scale(&q(2)));
        assert_eq!(g.bracket(&h, &y).unwrap(), y.scale(&q(-2)));
        assert_eq!(g.bracket(&x, &y).unwrap(), h);
    }

    #[test]
    fn jacobi_exhaustive_small_ranks() {
        for t in ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "C4", "B4", "A4"] {
            let g = alg(t);
            g.check_antisymmetry().unwrap();
            g.check_jacobi().unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn jacobi_sampled_e_series() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in ["E6", "E7", "E8"] {
            let g = alg(t);
            for _ in 0..4000 {
                let (i, j, k) = (rng.gen_range(0..g.dim()), rng.gen_range(0..g.dim()), rng.gen_range(0..g.dim()));
                assert!(g.jacobi_zero(i, j, k), "{t}: ({i},{j},{k})");
            }
        }
    }

    #[test]
    fn constants_match_string_lengths() {
        for t in ["B3", "C3", "G2", "F4", "D4"] {
            let g = alg(t);
            let rs = g.root_system();
            let roots = rs.all_roots();
            for (a, ra) in roots.iter().enumerate() {
                for (b, rb) in roots.iter().enumerate() {
                    let s = add(&ra.coords, &rb.coords);
                    if !rs.is_root(&s) {
                        assert_eq!(g.structure_constant(a, b), 0);
                        continue;
                    }
                    // p: largest with rb - p·ra a root
                    let mut p = 0;
                    let mut v = rb.coords.clone();
                    loop {
                        v = v.iter().zip(&ra.coords).map(|(x, y)| x - y).collect();
                        if rs.is_root(&v) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    assert_eq!(g.structure_constant(a, b).abs(), p + 1, "{t}");
                }
            }
        }
    }

    #[test]
    fn extraspecial_signs_positive() {
        let g = alg("G2");
        let rs = g.root_system();
        for xi in 0..rs.num_positive() {
            let c = rs.root_coords(xi);
            if c.iter().sum::<i64>() == 1 {
                continue;
            }
            let i = (0..2).find(|&i| {
                let mut d = c.clone();
                d[i] -= 1;
                rs.is_root(&d)
            });
            let i = i.unwrap();
            let mut d = c.clone();
            d[i] -= 1;
            let n = g.structure_constant(rs.simple_index(i), rs.index_of(&d).unwrap());
            assert!(n > 0);
        }
    }

    #[test]
    fn a2_killing_on_cartan() {
        let g = alg("A2");
        let rs = g.root_system();
        let kf = g.killing();
        // Oracle: B(H_i, H_j) = Σ_α ⟨α, α_i∨⟩⟨α, α_j∨⟩.
        for i in 0..2 {
            for j in 0..2 {
                let mut ei = vec![0; 2];
                ei[i] = 1;
                let mut ej = vec![0; 2];
                ej[j] = 1;
                let s: i64 = rs.all_roots().iter().map(|a| rs.pairing(&a.coords, &ei) * rs.pairing(&a.coords, &ej)).sum();
                assert_eq!(kf.get(i, j), &q(s));
                assert_eq!(kf.get(i, j), &q(6 * rs.cartan_matrix()[i][j]));
            }
        }
    }

    #[test]
    fn killing_properties() {
        for t in ["B2", "G2", "A3"] {
            let g = alg(t);
            let kf = g.killing();
            assert_eq!(rank(kf), g.dim(), "{t}");
            let rs = g.root_system();
            let total = 2 * rs.num_positive();
            for a in 0..total {
                for b in 0..total {
                    let v = kf.get(g.x_index(a), g.x_index(b));
                    assert_eq!(v.is_zero(), b != rs.negate_index(a), "{t}");
                }
            }
            // ad-invariance on basis triples
            let n = g.dim();
            for z in 0..n {
                let adz = g.ad_matrix(&g.basis_element(z)).unwrap();
                let lhs = adz.transpose().mul(kf).unwrap().add(&kf.mul(&adz).unwrap()).unwrap();
                assert!(lhs.is_zero(), "{t}");
            }
            assert!(g.center().is_zero());
        }
    }

    #[test]
    fn h_beta_action() {
        let g = alg("C3");
        let rs = g.root_system();
        let beta = rs.highest_root();
        let hb = g.h_beta();
        for a in 0..2 * rs.num_positive() {
            let x = g.x(a);
            let k = rs.pairing(&rs.root_coords(a), &beta.coords);
            assert_eq!(g.bracket(&hb, &x).unwrap(), x.scale(&q(k)));
        }
        assert_eq!(g.bracket(&g.x_beta(), &g.x_minus_beta()).unwrap(), hb);
    }

    #[test]
    fn chevalley_involution_is_automorphism() {
        let g = alg("B3");
        let n = g.dim();
        let mut m = crate::exactlin::RationalMatrix::zeros(n, n);
        for (j, (k, s)) in g.chevalley_involution().into_iter().enumerate() {
            m.set(k, j, q(s));
        }
        assert!(g.is_automorphism(&m));
    }
}
