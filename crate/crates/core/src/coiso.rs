//! Certificates for coisotropic actions on minimal nilpotent orbits.
//!
//! An `H`-action on a coadjoint orbit through `λ` is coisotropic near `λ`
//! when `(h + Z_g(λ))^{⊥B} ⊂ [X_λ, h]`. Each certificate records this
//! containment at a slice point together with infinitesimal span checks
//! standing in for the density of the swept set.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::ChevalleyAlgebra;
use crate::exactlin::{LinAlgError, Rational, Subspace};
use crate::lie::{AlgebraElement, LieAlgebra, LieError};
use crate::orbits::{self, OrbitError};
use crate::realform::{RealForm, RealFormError};
use crate::rootsys::CartanType;

pub const DENSITY_NOTE: &str = "span checks are infinitesimal necessary conditions for the density of the swept set, not a proof of it";

#[derive(Debug, Error)]
pub enum CoisoError {
    #[error("subspace is not closed under the bracket")]
    NotASubalgebra,
    #[error("certification of {id} failed at `{check}`")]
    CertificationFailed { id: String, check: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    RealForm(#[from] RealFormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremTag {
    RealSymmetric,
    DiagTensor,
    ComplexSymmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoisotropicCertificate {
    pub theorem_tag: TheoremTag,
    pub algebra_id: String,
    pub slice_point_desc: String,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub containment_verified: bool,
    pub auxiliary_checks: Vec<NamedCheck>,
    pub note: String,
}

impl CoisotropicCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn check(&self, name: &str) -> Option<bool> {
        self.auxiliary_checks.iter().find(|c| c.name == name).map(|c| c.passed)
    }
}

#[derive(Debug, Clone)]
pub struct CoisoCheck {
    pub holds: bool,
    pub lhs: Subspace,
    pub rhs: Subspace,
}

/// Tests `(h + Z_g(λ))^{⊥B} ⊂ [X_λ, h]`.
pub fn check_coisotropic_at(alg: &LieAlgebra, h_sub: &Subspace, lambda_point: &AlgebraElement) -> Result<CoisoCheck, CoisoError> {
    if !alg.is_subalgebra(h_sub)? {
        return Err(CoisoError::NotASubalgebra);
    }
    let z = alg.centralizer(lambda_point)?;
    let lhs = h_sub.sum(&z)?.orth_complement(alg.killing())?;
    let rhs = alg.bracket_with_subspace(lambda_point, h_sub)?;
    Ok(CoisoCheck {
        holds: rhs.contains(&lhs)?,
        lhs,
        rhs,
    })
}

struct Checks {
    id: String,
    list: Vec<NamedCheck>,
}

impl Checks {
    fn new(id: &str) -> Self {
        Checks {
            id: id.to_string(),
            list: Vec::new(),
        }
    }

    fn require(&mut self, name: &str, passed: bool) -> Result<(), CoisoError> {
        if !passed {
            return Err(CoisoError::CertificationFailed {
                id: self.id.clone(),
                check: name.to_string(),
            });
        }
        self.list.push(NamedCheck {
            name: name.to_string(),
            passed,
        });
        Ok(())
    }

    fn finish(self, tag: TheoremTag, slice: &str, c: &CoisoCheck) -> CoisotropicCertificate {
        CoisotropicCertificate {
            theorem_tag: tag,
            algebra_id: self.id,
            slice_point_desc: slice.to_string(),
            lhs_dim: c.lhs.dim(),
            rhs_dim: c.rhs.dim(),
            containment_verified: c.holds,
            auxiliary_checks: self.list,
            note: DENSITY_NOTE.to_string(),
        }
    }
}

fn line(n: usize, v: &AlgebraElement) -> Result<Subspace, CoisoError> {
    Ok(Subspace::span(n, std::slice::from_ref(&v.coords))?)
}

/// The `K`-action on the minimal real orbit `Ad(G)X`, `X ∈ g(a; μ)`.
pub fn certify_real_symmetric(rf: &RealForm) -> Result<CoisotropicCertificate, CoisoError> {
    let g = rf.algebra();
    let n = g.dim();
    let mut checks = Checks::new(rf.id());
    let x = rf.x_mu();
    let data = rf.restricted();
    let a_mu_line = line(n, &data.a_mu)?;

    let c = check_coisotropic_at(g, rf.k(), &x)?;
    checks.require("containment", c.holds)?;

    let z = g.centralizer(&x)?;
    checks.require("centralizer_contains_a_perp_and_n", z.contains(&data.a_perp_mu.sum(&data.n_plus)?)?)?;
    let k_plus_z = rf.k().sum(&z)?;
    checks.require("iwasawa_span", k_plus_z.sum(&a_mu_line)?.is_full())?;
    checks.require("perp_in_a_mu", a_mu_line.contains(&c.lhs)?)?;
    let triple = orbits::find_sl2_triple(rf)?;
    checks.require("sl2_found", triple.verify(g)?)?;
    checks.require("a_mu_in_tangent", c.rhs.contains_vector(&data.a_mu.coords)?)?;
    Ok(checks.finish(TheoremTag::RealSymmetric, "X in g(a;mu)", &c))
}

/// The `K_C`-action on `Ad(G_C)X`, `X ∈ g(a; μ)`: the complexified form of
/// the real certificate.
pub fn certify_complexified_real(rf: &RealForm) -> Result<CoisotropicCertificate, CoisoError> {
    let gc = rf.complex();
    let kc = rf.k_complex();
    let mut checks = Checks::new(rf.id());
    let x = orbits::complexify(rf, &rf.x_mu())?;
    let a_mu = orbits::complexify(rf, &rf.restricted().a_mu)?;
    let c = check_coisotropic_at(gc, kc, &x)?;
    checks.require("containment", c.holds)?;
    let z = gc.centralizer(&x)?;
    checks.require("iwasawa_span", kc.sum(&z)?.sum(&line(gc.dim(), &a_mu)?)?.is_full())?;
    checks.require("a_mu_in_tangent", c.rhs.contains_vector(&a_mu.coords)?)?;
    Ok(checks.finish(TheoremTag::RealSymmetric, "X in g_C(a;mu)", &c))
}

/// The diagonal `G_C`-action on `O_min,C × O_min,C`.
pub fn certify_diag_tensor(t: CartanType) -> Result<CoisotropicCertificate, CoisoError> {
    let g = ChevalleyAlgebra::new(t);
    certify_diag_tensor_of(&g)
}

pub fn certify_diag_tensor_of(g: &ChevalleyAlgebra) -> Result<CoisotropicCertificate, CoisoError> {
    let n = g.dim();
    let gg = g.lie().direct_sum(g.lie());
    let mut checks = Checks::new(&g.cartan_type().to_string());
    let x = g.x_beta();
    let y = g.x_minus_beta();
    let h = g.h_beta();
    let pair = |u: &AlgebraElement, v: &AlgebraElement| {
        let mut c = u.coords.clone();
        c.extend(v.coords.iter().cloned());
        AlgebraElement::new(c)
    };
    let lambda = pair(&x, &y);
    let diag = gg.diag_subalgebra()?;

    let c = check_coisotropic_at(&gg, &diag, &lambda)?;
    checks.require("containment", c.holds)?;

    let h_anti = pair(&h, &h.neg());
    checks.require("lhs_is_h_beta_line", c.lhs == line(2 * n, &h_anti)?)?;

    let s = x.add(&y);
    let witness = gg.bracket(&lambda, &pair(&s, &s))?;
    checks.require("witness_bracket", !witness.is_zero() && witness.ratio_to(&h_anti).is_some())?;

    let zx = g.centralizer(&x)?;
    let zy = g.centralizer(&y)?;
    let mut vecs: Vec<Vec<Rational>> = diag.basis().to_vec();
    let zero = vec![Rational::zero(); n];
    for v in zx.basis() {
        vecs.push(v.iter().chain(zero.iter()).cloned().collect());
    }
    for v in zy.basis() {
        vecs.push(zero.iter().chain(v.iter()).cloned().collect());
    }
    vecs.push(pair(&h, &AlgebraElement::zero(n)).coords);
    checks.require("bruhat_span", Subspace::span(2 * n, &vecs)?.is_full())?;
    Ok(checks.finish(TheoremTag::DiagTensor, "(X_beta, X_-beta)", &c))
}

/// The `K_C`-action on `O_min,C`, where `k_C` is the fixed algebra of the
/// complex-linear θ on `g_C`.
pub fn certify_complex_symmetric(rf: &RealForm) -> Result<CoisotropicCertificate, CoisoError> {
    let gc = rf.complex();
    let kc = rf.k_complex();
    let mut checks = Checks::new(rf.id());
    if rf.theta_beta_test() {
        let x = orbits::complexified_real_minimal_orbit(rf)?.representative;
        let c = check_coisotropic_at(gc, kc, &x)?;
        checks.require("containment", c.holds)?;
        let n = orbits::n_complex_of(gc)?;
        checks.require("orbit_is_minimal", gc.dim() - gc.centralizer(&x)?.dim() == 2 * n)?;
        Ok(checks.finish(TheoremTag::ComplexSymmetric, "X in g_C(a;mu)", &c))
    } else {
        let x = gc.x_beta();
        let c = check_coisotropic_at(gc, kc, &x)?;
        checks.require("containment", c.holds)?;
        let tangent = gc.bracket_with_subspace(&x, &Subspace::full(gc.dim()))?;
        checks.require("open_orbit", c.rhs == tangent)?;
        let z = gc.centralizer(&x)?;
        checks.require("h_beta_membership", kc.sum(&z)?.contains_vector(&gc.h_beta().coords)?)?;
        Ok(checks.finish(TheoremTag::ComplexSymmetric, "X_beta", &c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::q;
    use crate::realform::Catalog;

    fn realize(id: &str) -> RealForm {
        RealForm::realize(Catalog::builtin().get(id).unwrap()).unwrap()
    }

    #[test]
    fn sl2_torus_is_coisotropic() {
        let g = ChevalleyAlgebra::new("A1".parse().unwrap());
        let h = line(3, &g.h_beta()).unwrap();
        let c = check_coisotropic_at(&g, &h, &g.x_beta()).unwrap();
        assert!(c.holds);
        assert_eq!((c.lhs.dim(), c.rhs.dim()), (1, 1));
    }

    #[test]
    fn full_algebra_always_passes() {
        let g = ChevalleyAlgebra::new("B2".parse().unwrap());
        let x = g.x(0).add(&g.x_beta());
        assert!(check_coisotropic_at(&g, &Subspace::full(g.dim()), &x).unwrap().holds);
    }

    #[test]
    fn rejects_non_subalgebra() {
        let g = ChevalleyAlgebra::new("A1".parse().unwrap());
        let s = Subspace::span(3, &[g.x_beta().coords, g.x_minus_beta().coords]).unwrap();
        assert!(matches!(check_coisotropic_at(&g, &s, &g.h_beta()), Err(CoisoError::NotASubalgebra)));
    }

    #[test]
    fn diag_a1() {
        let cert = certify_diag_tensor("A1".parse().unwrap()).unwrap();
        assert_eq!(cert.lhs_dim, 1);
        assert!(cert.containment_verified);
    }

    #[test]
    fn sl2r_real_certificate() {
        let cert = certify_real_symmetric(&realize("sl(2,R)")).unwrap();
        assert_eq!(cert.auxiliary_checks.len(), 6);
        assert!(cert.auxiliary_checks.iter().all(|c| c.passed));
    }

    #[test]
    fn scale_invariance() {
        let rf = realize("su(1,2)");
        let x = rf.x_mu();
        let base = check_coisotropic_at(rf.algebra(), rf.k(), &x).unwrap();
        for c in [1, 2, -3] {
            let r = check_coisotropic_at(rf.algebra(), rf.k(), &x.scale(&q(c))).unwrap();
            assert_eq!(r.holds, base.holds);
            assert_eq!((r.lhs.dim(), r.rhs.dim()), (base.lhs.dim(), base.rhs.dim()));
        }
    }

    #[test]
    fn json_round_trip() {
        let cert = certify_diag_tensor("G2".parse().unwrap()).unwrap();
        let text = cert.to_json();
        assert!(text.find("theorem_tag").unwrap() < text.find("algebra_id").unwrap());
        let back: CoisotropicCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }
}
