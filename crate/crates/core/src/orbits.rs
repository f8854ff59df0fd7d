//! Minimal nilpotent orbits, centralizers and the KKS pairing.
//!
//! The dual space is identified with the algebra through the Killing form,
//! so a point `λ` of a coadjoint orbit is represented by `X_λ` with
//! `λ(Y) = B(X_λ, Y)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::exactlin::{LinAlgError, Rational, Subspace};
use crate::lie::{AlgebraElement, LieAlgebra, LieError};
use crate::realform::{MinimalityCase, RealForm, RealFormError};
use crate::rootsys::RootSystem;

#[derive(Debug, Error)]
pub enum OrbitError {
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("no sl2-triple: {0}")]
    NoSolution(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    RealForm(#[from] RealFormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    ComplexMinimal,
    RealMinimal,
    RealMinimalPlus,
    RealMinimalMinus,
    ComplexificationOfRealMinimal,
}

#[derive(Debug, Clone)]
pub struct OrbitDescriptor {
    pub kind: OrbitKind,
    pub representative: AlgebraElement,
    pub dim: usize,
    pub half_dim: usize,
}

#[derive(Debug, Clone)]
pub struct Sl2Triple {
    pub h: AlgebraElement,
    pub e: AlgebraElement,
    pub f: AlgebraElement,
}

impl Sl2Triple {
    pub fn verify(&self, alg: &LieAlgebra) -> Result<bool, LieError> {
        Ok(alg.bracket(&self.h, &self.e)? == self.e.scale(&Rational::from_integer(2.into()))
            && alg.bracket(&self.h, &self.f)? == self.f.scale(&Rational::from_integer((-2).into()))
            && alg.bracket(&self.e, &self.f)? == self.h)
    }
}

fn describe(alg: &LieAlgebra, kind: OrbitKind, x: AlgebraElement) -> Result<OrbitDescriptor, OrbitError> {
    let dim = alg.dim() - alg.centralizer(&x)?.dim();
    if !dim.is_multiple_of(2) {
        return Err(OrbitError::Inconsistent(format!("orbit of odd dimension {dim}")));
    }
    if !alg.is_ad_nilpotent(&x)? {
        return Err(OrbitError::Inconsistent("representative is not nilpotent".into()));
    }
    Ok(OrbitDescriptor {
        kind,
        representative: x,
        dim,
        half_dim: dim / 2,
    })
}

/// `n(g_C)`, computed from the dual Coxeter number and from the centralizer
/// of `X_β`, which must agree.
pub fn n_complex(rs: &RootSystem) -> Result<usize, OrbitError> {
    n_complex_of(&ChevalleyAlgebra::new(rs.cartan_type()))
}

pub fn n_complex_of(alg: &ChevalleyAlgebra) -> Result<usize, OrbitError> {
    let via_coxeter = alg.root_system().dual_coxeter_number() - 1;
    let z = alg.centralizer(&alg.x_beta())?;
    let orbit = alg.dim() - z.dim();
    if orbit != 2 * via_coxeter {
        return Err(OrbitError::Inconsistent(format!(
            "h∨ - 1 = {via_coxeter} but the orbit of X_β has dimension {orbit}"
        )));
    }
    Ok(via_coxeter)
}

/// `(⊕_{α⊥β, α>0} g_{-α}) ⊕ h^{⊥β} ⊕ n⁺`, the predicted centralizer of `X_β`.
pub fn predicted_centralizer(alg: &ChevalleyAlgebra) -> Result<Subspace, OrbitError> {
    let rs = alg.root_system();
    let n = alg.dim();
    let r = rs.rank();
    let beta = rs.highest_root().coords;
    let mut vecs: Vec<Vec<Rational>> = Vec::new();
    for a in 0..rs.num_positive() {
        vecs.push(alg.x(a).coords);
        let coords = rs.root_coords(a);
        let inner = rs.inner(&to_q(&coords), &to_q(&beta));
        if inner.is_zero() {
            vecs.push(alg.x(rs.negate_index(a)).coords);
        }
    }
    // h^{⊥β}: kernel of H ↦ β(H) on the coroot basis.
    let values: Vec<i64> = (0..r).map(|i| rs.pairing(&beta, &rs.root_coords(rs.simple_index(i)))).collect();
    let row = crate::exactlin::RationalMatrix::from_rows(r, vec![values.iter().map(|&v| Rational::from_integer(v.into())).collect()])?;
    for v in crate::exactlin::kernel(&row).basis() {
        let mut full = vec![Rational::zero(); n];
        for (i, c) in v.iter().enumerate() {
            full[alg.h_index(i)] = c.clone();
        }
        vecs.push(full);
    }
    Ok(Subspace::span(n, &vecs)?)
}

fn to_q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// `O_min,C = Ad(G_C) X_β`. Also checks that the centralizer of `X_β`
/// equals the predicted subspace.
pub fn complex_minimal_orbit(alg: &ChevalleyAlgebra) -> Result<OrbitDescriptor, OrbitError> {
    let x = alg.x_beta();
    let z = alg.centralizer(&x)?;
    if z != predicted_centralizer(alg)? {
        return Err(OrbitError::Inconsistent("centralizer of X_β differs from the predicted one".into()));
    }
    let d = describe(alg, OrbitKind::ComplexMinimal, x)?;
    let n = n_complex_of(alg)?;
    if d.half_dim != n {
        return Err(OrbitError::DimensionMismatch { expected: n, found: d.half_dim });
    }
    Ok(d)
}

/// `O_min,R = Ad(G)X` for `X ∈ g(a; μ)`. In the Hermitian case this is the
/// `+` orbit.
pub fn real_minimal_orbit(rf: &RealForm) -> Result<OrbitDescriptor, OrbitError> {
    let kind = match rf.minimality_case() {
        MinimalityCase::Three => OrbitKind::RealMinimalPlus,
        _ => OrbitKind::RealMinimal,
    };
    let d = describe(rf.algebra(), kind, rf.x_mu())?;
    let n = rf.n_real()?;
    if d.half_dim != n {
        return Err(OrbitError::DimensionMismatch { expected: n, found: d.half_dim });
    }
    Ok(d)
}

/// The `-` companion in the Hermitian case, represented by `-X`.
pub fn real_minimal_orbit_minus(rf: &RealForm) -> Result<OrbitDescriptor, OrbitError> {
    describe(rf.algebra(), OrbitKind::RealMinimalMinus, rf.x_mu().neg())
}

/// Both minimal real orbits: one in Cases 1 and 2, `±` in Case 3.
pub fn real_minimal_orbits(rf: &RealForm) -> Result<Vec<OrbitDescriptor>, OrbitError> {
    let plus = real_minimal_orbit(rf)?;
    if plus.kind == OrbitKind::RealMinimalPlus {
        let minus = real_minimal_orbit_minus(rf)?;
        Ok(vec![plus, minus])
    } else {
        Ok(vec![plus])
    }
}

/// The Chevalley-basis vector of a real element whose support is all real or
/// all imaginary, dropping the common factor `i`.
pub fn complexify(rf: &RealForm, x: &AlgebraElement) -> Result<AlgebraElement, OrbitError> {
    let basis = rf.real_basis();
    let support: Vec<usize> = (0..x.dim()).filter(|&j| !x.coords[j].is_zero()).collect();
    if support.iter().any(|&j| basis[j].imaginary != basis[support[0]].imaginary) {
        return Err(OrbitError::Inconsistent("element mixes real and imaginary parts".into()));
    }
    let mut v = vec![Rational::zero(); rf.complex().dim()];
    for &j in &support {
        for (i, c) in basis[j].chevalley.iter().enumerate() {
            v[i] += &x.coords[j] * c;
        }
    }
    Ok(AlgebraElement::new(v))
}

/// The `G_C`-orbit through `X ∈ g(a; μ)`, as an orbit of the Chevalley
/// algebra.
pub fn complexified_real_minimal_orbit(rf: &RealForm) -> Result<OrbitDescriptor, OrbitError> {
    let x = complexify(rf, &rf.x_mu())?;
    describe(rf.complex(), OrbitKind::ComplexificationOfRealMinimal, x)
}

pub fn centralizer(alg: &LieAlgebra, x: &AlgebraElement) -> Result<Subspace, OrbitError> {
    Ok(alg.centralizer(x)?)
}

/// `Z_g(h; λ) = [X_λ, h]^{⊥B}`.
pub fn relative_centralizer(alg: &LieAlgebra, h_sub: &Subspace, x: &AlgebraElement) -> Result<Subspace, OrbitError> {
    if h_sub.ambient_dim() != alg.dim() {
        return Err(OrbitError::DimensionMismatch {
            expected: alg.dim(),
            found: h_sub.ambient_dim(),
        });
    }
    let img = alg.bracket_with_subspace(x, h_sub)?;
    Ok(img.orth_complement(alg.killing())?)
}

/// `λ([x, y]) = B(X_λ, [x, y])`.
pub fn kks_pairing(alg: &LieAlgebra, lambda_point: &AlgebraElement, x: &AlgebraElement, y: &AlgebraElement) -> Result<Rational, OrbitError> {
    Ok(alg.killing_form(lambda_point, &alg.bracket(x, y)?)?)
}

/// `(A_μ, X, c'θX)` for the unique `c'` making it an sl2-triple.
pub fn find_sl2_triple(rf: &RealForm) -> Result<Sl2Triple, OrbitError> {
    let g = rf.algebra();
    let h = rf.restricted().a_mu.clone();
    let e = rf.x_mu();
    let theta_e = AlgebraElement::new(rf.theta_matrix().mul_vec(&e.coords)?);
    let ef = g.bracket(&e, &theta_e)?;
    let c = h
        .ratio_to(&ef)
        .ok_or_else(|| OrbitError::NoSolution(format!("[X, θX] is not proportional to A_μ in {}", rf.id())))?;
    let triple = Sl2Triple { h, e, f: theta_e.scale(&c) };
    if !triple.verify(g)? {
        return Err(OrbitError::NoSolution(format!("triple relations fail in {}", rf.id())));
    }
    Ok(triple)
}

/// `(H_β, X_β, X_{-β})` scaled so that `[X_β, c'X_{-β}] = H_β`.
pub fn complex_sl2_triple(alg: &ChevalleyAlgebra) -> Result<Sl2Triple, OrbitError> {
    let h = alg.h_beta();
    let e = alg.x_beta();
    let y = alg.x_minus_beta();
    let c = h
        .ratio_to(&alg.bracket(&e, &y)?)
        .ok_or_else(|| OrbitError::NoSolution("[X_β, X_{-β}] is not proportional to H_β".into()))?;
    let triple = Sl2Triple { h, e, f: y.scale(&c) };
    if !triple.verify(alg)? {
        return Err(OrbitError::NoSolution("complex triple relations fail".into()));
    }
    Ok(triple)
}
