use std::collections::BTreeSet;

use orbitkit::chevalley::ChevalleyAlgebra;
use orbitkit::coiso::*;
use orbitkit::exactlin::{q, Subspace};
use orbitkit::lie::{AlgebraElement, LieAlgebra};
use orbitkit::orbits::kks_pairing;
use orbitkit::realform::{Catalog, MinimalityCase, RealForm};
use orbitkit::rootsys::CartanType;

fn realize(id: &str) -> RealForm {
    RealForm::realize(Catalog::builtin().get(id).unwrap()).unwrap()
}

#[test]
fn every_default_form_is_certified() {
    let c = Catalog::builtin();
    for spec in c.scope(false) {
        let t = std::time::Instant::now();
        let rf = RealForm::realize(spec).unwrap();
        let real = certify_real_symmetric(&rf).unwrap();
        assert!(real.containment_verified, "{}", spec.id);
        let complex = certify_complex_symmetric(&rf).unwrap();
        assert!(complex.containment_verified, "{}", spec.id);
        let branch_b = complex.check("open_orbit").is_some();
        assert_eq!(branch_b, rf.minimality_case() == MinimalityCase::One, "{}", spec.id);
        eprintln!("{} {} ms", spec.id, t.elapsed().as_millis());
    }
}

#[test]
fn diag_tensor_for_every_type() {
    let c = Catalog::builtin();
    let types: BTreeSet<String> = c.scope(false).iter().map(|s| s.cartan_type.to_string()).collect();
    for t in types {
        let cert = certify_diag_tensor(t.parse().unwrap()).unwrap();
        assert_eq!(cert.lhs_dim, 1, "{t}");
        assert_eq!(cert.check("bruhat_span"), Some(true));
    }
}

#[test]
fn named_branches() {
    for id in ["su*(4)", "su*(6)", "f4(-20)"] {
        let cert = certify_complex_symmetric(&realize(id)).unwrap();
        assert_eq!(cert.check("open_orbit"), Some(true), "{id}");
        assert_eq!(cert.check("h_beta_membership"), Some(true), "{id}");
    }
    let cert = certify_complex_symmetric(&realize("g2(2)")).unwrap();
    assert_eq!(cert.check("open_orbit"), None);
    assert_eq!(certify_real_symmetric(&realize("f4(-20)")).unwrap().check("sl2_found"), Some(true));
}

/// Symplectic complement of `[λ, h]` in the tangent space, computed from the
/// pairing `λ([Y, Z])` directly.
fn kks_complement(g: &LieAlgebra, h: &Subspace, lambda: &AlgebraElement) -> Subspace {
    let n = g.dim();
    let hb: Vec<AlgebraElement> = h.basis().iter().map(|v| AlgebraElement::new(v.clone())).collect();
    let rows: Vec<Vec<_>> = hb
        .iter()
        .map(|z| (0..n).map(|i| kks_pairing(g, lambda, &AlgebraElement::basis(n, i), z).unwrap()).collect())
        .collect();
    let ys = if rows.is_empty() {
        Subspace::full(n)
    } else {
        orbitkit::exactlin::kernel(&orbitkit::exactlin::RationalMatrix::from_rows(n, rows).unwrap())
    };
    let imgs: Vec<Vec<_>> = ys.basis().iter().map(|y| g.bracket(lambda, &AlgebraElement::new(y.clone())).unwrap().coords).collect();
    Subspace::span(n, &imgs).unwrap()
}

#[test]
fn kks_duality_rank_at_most_two() {
    for id in ["sl(2,R)", "sl(3,R)", "su(1,2)", "sp(1,1)", "so(3,2)", "g2(2)", "su(1,1)"] {
        let rf = realize(id);
        let g = rf.algebra();
        for scale in [1, -3] {
            let x = rf.x_mu().scale(&q(scale));
            let c = check_coisotropic_at(g, rf.k(), &x).unwrap();
            let comp = kks_complement(g, rf.k(), &x);
            assert_eq!(c.rhs.contains(&comp).unwrap(), c.holds, "{id}");
            assert!(c.holds);
        }
    }
    for t in ["A1", "A2", "B2", "G2"] {
        let g = ChevalleyAlgebra::new(t.parse::<CartanType>().unwrap());
        let b = Subspace::span(g.dim(), &(0..g.rank()).map(|i| g.basis_element(g.h_index(i)).coords).collect::<Vec<_>>()).unwrap();
        let x = g.x_beta();
        let c = check_coisotropic_at(&g, &b, &x).unwrap();
        let comp = kks_complement(&g, &b, &x);
        assert_eq!(c.rhs.contains(&comp).unwrap(), c.holds, "{t}");
    }
}

#[test]
fn diag_lhs_is_anti_diagonal_h_beta() {
    let g = ChevalleyAlgebra::new("A2".parse().unwrap());
    let gg = g.lie().direct_sum(g.lie());
    let mut lam = g.x_beta().coords;
    lam.extend(g.x_minus_beta().coords);
    let c = check_coisotropic_at(&gg, &gg.diag_subalgebra().unwrap(), &AlgebraElement::new(lam)).unwrap();
    let mut hb = g.h_beta().coords;
    hb.extend(g.h_beta().neg().coords);
    assert_eq!(c.lhs, Subspace::span(16, &[hb]).unwrap());
    assert!(c.holds);
}

#[test]
fn complexified_real_certificates() {
    for id in ["sl(3,R)", "su(1,2)", "sp(1,2)", "so(6,1)", "su*(6)", "f4(-20)", "g2(2)"] {
        let cert = certify_complexified_real(&realize(id)).unwrap();
        assert!(cert.containment_verified, "{id}");
        assert_eq!(cert.check("iwasawa_span"), Some(true), "{id}");
    }
}
