use std::collections::BTreeMap;

use orbitkit::exactlin::{gram_matrix, is_positive_definite, q, RationalMatrix, Subspace};
use orbitkit::orbits::{n_complex, real_minimal_orbit};
use orbitkit::realform::{Catalog, MinimalityCase, RealForm};

#[test]
fn catalog_wide_invariants() {
    let catalog = Catalog::builtin();
    let mut cases = BTreeMap::new();
    for spec in catalog.scope(false) {
        let id = &spec.id;
        let rf = RealForm::realize(spec).unwrap_or_else(|e| panic!("{e}"));
        let g = rf.algebra();
        let theta = rf.theta_matrix();
        assert!(g.is_automorphism(theta), "{id}: θ is not an automorphism");
        assert_eq!(theta.mul(theta).unwrap(), RationalMatrix::identity(g.dim()), "{id}: θ² ≠ 1");
        assert!(rf.check_cartan_brackets().unwrap(), "{id}");

        let killing = g.killing();
        assert!(is_positive_definite(&gram_matrix(rf.p().basis(), killing)).unwrap(), "{id}: B not positive on p");
        if rf.k().dim() > 0 {
            assert!(is_positive_definite(&gram_matrix(rf.k().basis(), &killing.scale(&q(-1)))).unwrap(), "{id}: B not negative on k");
        }

        // Z_p(a) = a.
        let z_a = g.centralizer_of(rf.a()).unwrap();
        assert_eq!(z_a.intersect(rf.p()).unwrap(), *rf.a(), "{id}: a not maximal");

        let r = rf.restricted();
        let root_total: usize = r.roots.iter().map(|x| x.multiplicity).sum();
        assert_eq!(rf.m_centralizer().dim() + rf.a().dim() + root_total, g.dim(), "{id}: bookkeeping");

        let case = rf.minimality_case();
        let hermitian = rf.hermitian_type();
        let theta_beta = rf.theta_beta_test();
        let flags = [case == MinimalityCase::One, case == MinimalityCase::Three, case == MinimalityCase::Two];
        assert_eq!(flags.iter().filter(|f| **f).count(), 1, "{id}");
        assert_eq!(case == MinimalityCase::One, !theta_beta, "{id}");
        assert_eq!(case == MinimalityCase::Three, theta_beta && hermitian, "{id}");
        cases.insert(id.clone(), case);

        let nr = rf.n_real().unwrap();
        let nc = n_complex(rf.complex().root_system()).unwrap();
        assert!(nr >= nc, "{id}");
        assert_eq!(nr == nc, theta_beta, "{id}");
        assert_eq!(real_minimal_orbit(&rf).unwrap().dim, 2 * nr, "{id}");
    }
    assert!(cases.len() >= 25);
    assert_eq!(cases["sl(2,R)"], MinimalityCase::Three);
    assert_eq!(cases["sl(3,R)"], MinimalityCase::Two);
    assert_eq!(cases["sp(1,1)"], MinimalityCase::One);
}

#[test]
fn a_mu_spans_the_mu_line() {
    let catalog = Catalog::builtin();
    for id in ["sl(3,R)", "su(2,2)", "so(4,1)", "g2(2)", "f4(-20)"] {
        let rf = RealForm::realize(catalog.get(id).unwrap()).unwrap();
        let r = rf.restricted();
        let x = rf.x_mu();
        let h = r.a_mu.clone();
        let bracket = rf.algebra().bracket(&h, &x).unwrap();
        assert_eq!(bracket, x.scale(&q(2)), "{id}: [A_μ, X] ≠ 2X");
        let line = Subspace::span(rf.dim(), std::slice::from_ref(&h.coords)).unwrap();
        assert!(rf.a().contains(&line).unwrap(), "{id}");
        assert!(!h.is_zero());
    }
}
