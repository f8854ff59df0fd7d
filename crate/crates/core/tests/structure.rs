use num_traits::Zero;
use orbitkit::chevalley::ChevalleyAlgebra;
use orbitkit::exactlin::rank;
use orbitkit::rootsys::{CartanType, RootSystem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "B2", "B3", "B4", "B5", "B6", "B7", "B8", "C2", "C3", "C4", "C5", "C6", "C7",
    "C8", "D4", "D5", "D6", "D7", "D8", "G2", "F4", "E6", "E7", "E8",
];

fn cartan(t: &str) -> CartanType {
    t.parse().unwrap()
}

#[test]
fn root_system_scans() {
    for t in TYPES {
        let rs = RootSystem::new(cartan(t));
        let all = rs.all_roots();
        for r in &all {
            let neg: Vec<i64> = r.coords.iter().map(|c| -c).collect();
            assert!(rs.is_root(&neg), "{t}: negation");
        }
        for a in &all {
            for b in &all {
                let minus: Vec<i64> = a.coords.iter().map(|c| -c).collect();
                if a.coords == b.coords || b.coords == minus {
                    continue;
                }
                // The a-string through b: b - p a, ..., b + q a.
                let step = |k: i64| -> Vec<i64> { b.coords.iter().zip(&a.coords).map(|(x, y)| x + k * y).collect() };
                let p = (1..).take_while(|&k| rs.is_root(&step(-k))).count() as i64;
                let q = (1..).take_while(|&k| rs.is_root(&step(k))).count() as i64;
                assert!(p + q < 4, "{t}: string too long");
                assert_eq!(p - q, rs.pairing(&b.coords, &a.coords), "{t}: string not unbroken");
            }
        }
        let beta = rs.highest_root();
        let dominated = |x: &[i64], y: &[i64]| x.iter().zip(y).all(|(a, b)| a <= b);
        let maximal: Vec<_> = rs
            .positive_roots()
            .iter()
            .filter(|r| rs.positive_roots().iter().all(|s| s.coords == r.coords || !dominated(&r.coords, &s.coords)))
            .collect();
        assert_eq!(maximal.len(), 1, "{t}");
        assert_eq!(maximal[0].coords, beta.coords);
        for r in rs.positive_roots() {
            let v = rs.pairing(&r.coords, &beta.coords);
            assert!((0..=2).contains(&v), "{t}");
            assert_eq!(v == 2, r.coords == beta.coords, "{t}");
        }
    }
}

#[test]
fn killing_scans() {
    for t in TYPES.iter().filter(|t| **t != "E8") {
        let g = ChevalleyAlgebra::new(cartan(t));
        let k = g.lie().killing();
        assert_eq!(rank(k), g.dim(), "{t}: degenerate Killing form");
        let n = g.root_system().all_roots().len();
        for a in 0..n {
            for c in 0..n {
                let v = k.get(g.x_index(a), g.x_index(c));
                assert_eq!(!v.is_zero(), c == g.root_system().negate_index(a), "{t}: B(X_a, X_c)");
            }
        }
        assert!(g.lie().center().is_zero(), "{t}: nonzero centre");
    }
}

#[test]
fn jacobi_exhaustive_rank_at_most_four() {
    for t in TYPES.iter().filter(|t| cartan(t).rank() <= 4) {
        let g = ChevalleyAlgebra::new(cartan(t));
        g.lie().check_antisymmetry().unwrap();
        g.lie().check_jacobi().unwrap_or_else(|e| panic!("{t}: {e}"));
    }
}

#[test]
fn jacobi_sampled_higher_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for t in TYPES.iter().filter(|t| cartan(t).rank() >= 5) {
        let g = ChevalleyAlgebra::new(cartan(t));
        let n = g.dim();
        for _ in 0..10_000 {
            let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            assert!(g.lie().jacobi_zero(i, j, k), "{t}: ({i},{j},{k})");
        }
    }
}
