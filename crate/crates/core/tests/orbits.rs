use orbitkit::chevalley::ChevalleyAlgebra;
use orbitkit::orbits::*;
use orbitkit::realform::{Catalog, MinimalityCase, RealForm};
use orbitkit::rootsys::{build_root_system, CartanType};

#[test]
fn n_complex_table() {
    let table = [
        ("A1", 1),
        ("A5", 5),
        ("B4", 6),
        ("C4", 4),
        ("D4", 5),
        ("D6", 9),
        ("G2", 3),
        ("F4", 8),
        ("E6", 11),
        ("E7", 17),
        ("E8", 29),
    ];
    for (t, n) in table {
        let rs = build_root_system(t.parse::<CartanType>().unwrap());
        assert_eq!(n_complex(&rs).unwrap(), n, "{t}");
    }
}

#[test]
fn centralizer_of_highest_root_vector_is_predicted() {
    for t in ["A4", "B3", "C3", "D5", "G2", "F4", "E6"] {
        let g = ChevalleyAlgebra::new(t.parse().unwrap());
        let o = complex_minimal_orbit(&g).unwrap();
        assert_eq!(o.half_dim * 2, o.dim);
        assert!(g.ad_nilpotency_order(&o.representative).unwrap().unwrap() <= 6);
    }
}

#[test]
fn real_orbits_over_catalog() {
    let c = Catalog::builtin();
    for spec in c.scope(false).into_iter().filter(|s| s.cartan_type.rank() <= 6) {
        let rf = RealForm::realize(spec).unwrap();
        let orbits = real_minimal_orbits(&rf).unwrap();
        let n = rf.n_real().unwrap();
        for o in &orbits {
            assert_eq!(o.dim, 2 * n, "{}", spec.id);
            assert!(rf.algebra().ad_nilpotency_order(&o.representative).unwrap().unwrap() <= 6);
        }
        let nc = n_complex(rf.complex().root_system()).unwrap();
        match rf.minimality_case() {
            MinimalityCase::One => assert!(n > nc, "{}", spec.id),
            MinimalityCase::Two => assert_eq!(orbits.len(), 1),
            MinimalityCase::Three => assert_eq!(orbits.len(), 2),
        }
        if rf.minimality_case() != MinimalityCase::One {
            assert_eq!(n, nc, "{}", spec.id);
        }
        let triple = find_sl2_triple(&rf).unwrap();
        assert!(triple.verify(rf.algebra()).unwrap(), "{}", spec.id);
        let cx = complexified_real_minimal_orbit(&rf).unwrap();
        assert_eq!(cx.dim, 2 * n, "{}", spec.id);
    }
}

#[test]
fn small_real_orbits() {
    let c = Catalog::builtin();
    let dim = |id: &str| real_minimal_orbit(&RealForm::realize(c.get(id).unwrap()).unwrap()).unwrap().dim;
    assert_eq!(dim("sl(2,R)"), 2);
    assert_eq!(dim("sp(1,1)"), 6);
    assert_eq!(dim("so(4,1)"), 6);
}
