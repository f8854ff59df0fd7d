use num_traits::Zero;
use orbitkit::exactlin::*;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> RationalMatrix {
    let r: Vec<Vec<Rational>> = entries.chunks(cols).take(rows).map(|c| c.iter().map(|&x| q(x)).collect()).collect();
    RationalMatrix::from_rows(cols, r).unwrap()
}

/// Plain Gaussian elimination over the rationals.
fn naive_rank(m: &RationalMatrix) -> usize {
    let mut a = m.row_vectors();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                let src = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(&src) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(-3i64..=3, r * c).prop_map(move |e| matrix(r, c, &e)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant(m in arb_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rank_matches_naive_elimination(m in arb_matrix()) {
        prop_assert_eq!(rank(&m), naive_rank(&m));
    }

    #[test]
    fn kernel_rank_duality(m in arb_matrix()) {
        let k = kernel(&m);
        prop_assert_eq!(k.dim() + rank(&m), m.cols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn span_is_canonical(vs in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..5),
                         mix in prop::collection::vec(-2i64..=2, 16)) {
        let vecs: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        let s = Subspace::span(5, &vecs).unwrap();
        // Unitriangular recombination keeps the span.
        let n = vecs.len();
        let mixed: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut w = vecs[i].clone();
                for j in (i + 1)..n {
                    let c = q(mix[(i * 4 + j) % mix.len()]);
                    for (x, y) in w.iter_mut().zip(&vecs[j]) {
                        *x += &c * y;
                    }
                }
                w
            })
            .rev()
            .collect();
        prop_assert_eq!(Subspace::span(5, &mixed).unwrap(), s);
    }

    #[test]
    fn orth_complement_is_involutive(diag in prop::collection::vec(prop_oneof![-3i64..=-1, 1i64..=3], 4),
                                     off in -2i64..=2,
                                     vs in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4)) {
        let mut form = RationalMatrix::zeros(4, 4);
        for (i, d) in diag.iter().enumerate() {
            form.set(i, i, q(*d));
        }
        form.set(0, 1, q(off));
        form.set(1, 0, q(off));
        prop_assume!(!form.determinant().unwrap().is_zero());
        let vecs: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect();
        let w = Subspace::span(4, &vecs).unwrap();
        let perp = orth_complement(&w, &form).unwrap();
        prop_assert_eq!(perp.dim() + w.dim(), 4);
        prop_assert_eq!(orth_complement(&perp, &form).unwrap(), w);
    }

    #[test]
    fn sum_and_intersection_dimensions(a in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4),
                                       b in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 0..4)) {
        let to = |vs: &Vec<Vec<i64>>| Subspace::span(5, &vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>()).unwrap();
        let (sa, sb) = (to(&a), to(&b));
        let sum = subspace_sum(&sa, &sb).unwrap();
        let cap = subspace_intersect(&sa, &sb).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
        prop_assert!(subspace_contains(&sum, &sa).unwrap() && subspace_contains(&sa, &cap).unwrap());
    }
}
