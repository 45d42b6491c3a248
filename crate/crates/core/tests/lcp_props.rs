mod common;

use common::max_diff;
use netgood_core::lcp::*;
use netgood_core::matrix_analysis::is_p_matrix;
use netgood_core::SquareMatrix;
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn inst(rows: &[[f64; 2]], q: [f64; 2]) -> LcpInstance {
    LcpInstance::new(SquareMatrix::from_rows(rows).unwrap(), q.to_vec()).unwrap()
}

#[test]
fn lemke_examples() {
    let out = lemke_solve(&inst(&[[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0]), TOL).unwrap();
    let s = out.solution().unwrap();
    assert_eq!(s.x, vec![0.0, 0.0]);
    assert_eq!(s.w, vec![1.0, 1.0]);

    let i = inst(&[[1.0, 0.5], [0.5, 1.0]], [-1.0, -1.0]);
    let s = lemke_solve(&i, TOL).unwrap().solution().cloned().unwrap();
    assert!(max_diff(&s.x, &[2.0 / 3.0; 2]) < 1e-14);
    assert!(s.w.iter().all(|&w| w == 0.0));
    assert!(verify_solution(&i, &s, TOL));

    let out = lemke_solve(&inst(&[[1.0, -2.0], [-2.0, 1.0]], [-1.0, -1.0]), TOL).unwrap();
    assert!(matches!(out, LemkeOutcome::RayTermination { .. }));
}

#[test]
fn enumeration_examples() {
    let e = enumerate_solutions(&inst(&[[1.0, 2.0], [2.0, 1.0]], [-1.0, -1.0]), TOL).unwrap();
    let xs: Vec<_> = e.solutions.iter().map(|s| s.x.clone()).collect();
    assert_eq!(xs.len(), 3);
    assert!(max_diff(&xs[0], &[0.0, 1.0]) < 1e-14);
    assert!(max_diff(&xs[1], &[1.0 / 3.0; 2]) < 1e-14);
    assert!(max_diff(&xs[2], &[1.0, 0.0]) < 1e-14);

    let e = enumerate_solutions(&inst(&[[1.0, 0.5], [0.5, 1.0]], [-1.0, -1.0]), TOL).unwrap();
    assert_eq!(e.solutions.len(), 1);
    assert!(max_diff(&e.solutions[0].x, &[2.0 / 3.0; 2]) < 1e-14);

    let e = enumerate_solutions(&inst(&[[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0]), TOL).unwrap();
    assert_eq!(e.solutions.len(), 1);
    assert_eq!(e.solutions[0].x, vec![0.0, 0.0]);
    assert_eq!(e.supports_checked, 4);

    let e = enumerate_solutions(&inst(&[[1.0, -2.0], [-2.0, 1.0]], [-1.0, -1.0]), TOL).unwrap();
    assert!(e.solutions.is_empty());
}

#[test]
fn verify_examples() {
    let i = inst(&[[1.0, 0.0], [0.0, 1.0]], [1.0, 1.0]);
    let bad = LcpSolution { x: vec![1.0, 1.0], w: vec![1.0, 1.0], support: vec![0, 1] };
    assert!(!verify_solution(&i, &bad, TOL));

    let i = inst(&[[1.0, 2.0], [2.0, 1.0]], [-1.0, -1.0]);
    let third = LcpSolution { x: vec![1.0 / 3.0; 2], w: vec![0.0; 2], support: vec![0, 1] };
    assert!(verify_solution(&i, &third, TOL));
}

#[test]
fn singular_supports_are_recorded() {
    // I + G singular: the full support yields a rank-one system.
    let e = enumerate_solutions(&inst(&[[1.0, 1.0], [1.0, 1.0]], [-1.0, -1.0]), TOL).unwrap();
    assert_eq!(e.singular_supports, vec![vec![0, 1]]);
    assert!(e.solutions.iter().all(|s| verify_solution(&inst(&[[1.0, 1.0], [1.0, 1.0]], [-1.0, -1.0]), s, TOL)));
}

fn instance(n: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = LcpInstance> {
    n.prop_flat_map(move |n| {
        (
            proptest::collection::vec(lo..=hi, n * n),
            proptest::collection::vec(0.2..2.0f64, n),
            proptest::collection::vec(-2.0..2.0f64, n),
        )
            .prop_map(move |(mut v, d, q)| {
                for i in 0..n {
                    v[i * n + i] = d[i];
                }
                LcpInstance::new(SquareMatrix::new(n, v).unwrap(), q).unwrap()
            })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn p_matrix_solution_is_unique_and_found_by_lemke(i in instance(1..=6, -0.8, 0.8)) {
        prop_assume!(is_p_matrix(i.m(), TOL).unwrap());
        let e = enumerate_solutions(&i, TOL).unwrap();
        prop_assert_eq!(e.solutions.len(), 1);
        let out = lemke_solve(&i, TOL).unwrap();
        let s = out.solution().expect("Lemke cannot ray-terminate on a P-matrix");
        prop_assert!(verify_solution(&i, s, TOL));
        prop_assert!(max_diff(&s.x, &e.solutions[0].x) <= 1e-7);
    }

    #[test]
    fn nonnegative_matrices_never_ray_terminate(i in instance(1..=6, 0.0, 3.0)) {
        let out = lemke_solve(&i, TOL).unwrap();
        let s = out.solution();
        prop_assert!(s.is_some());
        prop_assert!(verify_solution(&i, s.unwrap(), TOL));
    }

    #[test]
    fn every_returned_solution_verifies(i in instance(1..=5, -2.0, 2.0)) {
        for s in enumerate_solutions(&i, TOL).unwrap().solutions {
            prop_assert!(verify_solution(&i, &s, TOL));
        }
        if let Some(s) = lemke_solve(&i, TOL).unwrap().solution() {
            prop_assert!(verify_solution(&i, s, TOL));
        }
    }

    #[test]
    fn enumeration_is_permutation_equivariant(
        (i, perm) in instance(1..=5, -2.0, 2.0).prop_flat_map(|i| { let n = i.n(); (Just(i), permutation(n)) })
    ) {
        let base = enumerate_solutions(&i, TOL).unwrap().solutions;
        let moved = enumerate_solutions(&i.permuted(&perm), TOL).unwrap().solutions;
        prop_assert_eq!(base.len(), moved.len());
        for s in &base {
            let mut px = vec![0.0; s.x.len()];
            for (k, &p) in perm.iter().enumerate() {
                px[p] = s.x[k];
            }
            prop_assert!(moved.iter().any(|t| max_diff(&t.x, &px) <= 1e-7));
        }
    }
}
