mod common;

use common::*;
use netgood_core::equilibrium::{solve_nash, SolveMode};
use netgood_core::lcp::{verify_solution, LcpSolution};
use netgood_core::{BenefitFunction, CoalitionPartition, DependenceMatrix, GameSpec, WelfareWeights};
use proptest::prelude::*;

#[test]
fn utility_examples() {
    let game = pair_game(0.5);
    let u = game.utility(&[2.0 / 3.0; 2], 0).unwrap();
    assert!((u - (1.0 - C - 2.0 / 3.0 * C)).abs() < 1e-15);
    assert_eq!(game.utility(&[0.0, 0.0], 1).unwrap(), 0.0);
    let single = unit_game(DependenceMatrix::zeros(1));
    assert!((single.utility(&[1.0], 0).unwrap() - (1.0 - 2.0 * C)).abs() < 1e-15);

    let log = GameSpec::uniform(DependenceMatrix::pair(-2.0, -2.0).unwrap(), BenefitFunction::logarithmic(2.0).unwrap(), 1.0).unwrap();
    assert!(matches!(log.utility(&[0.0, 1.0], 0), Err(netgood_core::Error::DomainError { agent: 0, .. })));
}

#[test]
fn target_examples() {
    assert!((pair_game(0.5).standalone_target().unwrap()[0] - 1.0).abs() < 1e-15);
    let g = GameSpec::uniform(DependenceMatrix::zeros(1), exp1(), 1.0).unwrap();
    assert_eq!(g.standalone_target().unwrap(), vec![0.0]);
    let g = GameSpec::uniform(DependenceMatrix::zeros(1), BenefitFunction::logarithmic(2.0).unwrap(), 1.0).unwrap();
    assert_eq!(g.standalone_target().unwrap(), vec![1.0]);

    let game = pair_game(0.5);
    assert!((game.best_response(0, &[0.0, 2.0 / 3.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(game.best_response(1, &[0.0, 0.0]).unwrap(), 1.0);
    assert_eq!(pair_game(2.0).best_response(0, &[0.0, 1.0]).unwrap(), 0.0);

    let q = game.pareto_target(&WelfareWeights::ones(2)).unwrap();
    assert!(q.iter().all(|v| (v - (1.0 + 1.5f64.ln())).abs() < 1e-12));
}

#[test]
fn star_pareto_target_for_the_center() {
    let q = star_game(0.2, 0.2).pareto_target(&WelfareWeights::ones(4)).unwrap();
    let center = C * (1.0 - 0.6) / (1.0 - 0.12);
    assert!((q[0] + center.ln()).abs() < 1e-12);
    assert!((q[0] - 1.788).abs() < 1e-3);
}

#[test]
fn coalition_modified_examples() {
    let game = star_game(0.2, 0.2);
    let g = game.dependence();
    assert_eq!(&g.coalition_modified(&CoalitionPartition::grand(4)), g);
    assert_eq!(g.coalition_modified(&CoalitionPartition::singletons(4)), DependenceMatrix::zeros(4));
    let p = CoalitionPartition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
    assert_eq!(g.coalition_modified(&p), DependenceMatrix::zeros(4));
    let w = WelfareWeights::ones(4);
    assert_eq!(game.semicoop_target(&p, &w).unwrap(), game.standalone_target().unwrap());
}

#[test]
fn foc_examples() {
    let game = pair_game(0.5);
    let r = game.pareto_foc_residual(&WelfareWeights::ones(2), &[0.0, 0.0]).unwrap();
    assert!(r.iter().all(|v| (v - (1.5 - C)).abs() < 1e-15));
    let empty = unit_game(DependenceMatrix::zeros(3));
    let w = WelfareWeights::new(vec![0.3, 1.0, 7.0]).unwrap();
    let r = empty.pareto_foc_residual(&w, &[1.0; 3]).unwrap();
    assert!(r.iter().all(|v| v.abs() < 1e-15));
}

fn weights(n: usize) -> impl Strategy<Value = WelfareWeights> {
    proptest::collection::vec(0.1..5.0f64, n).prop_map(|v| WelfareWeights::new(v).unwrap())
}

fn partition(n: usize) -> impl Strategy<Value = CoalitionPartition> {
    proptest::collection::vec(0..n, n).prop_map(move |labels| {
        let mut blocks: Vec<Vec<usize>> = vec![vec![]; n];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i);
        }
        blocks.retain(|b| !b.is_empty());
        CoalitionPartition::new(n, blocks).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nash_profiles_are_best_response_fixed_points(g in dependence(1..=5, -0.6, 1.5)) {
        let game = unit_game(g);
        let qbar = game.standalone_target().unwrap();
        let inst = game.nash_lcp().unwrap();
        for p in solve_nash(&game, SolveMode::All, 1e-9).unwrap().profiles {
            let w: Vec<f64> = game.aggregate(&p.x).iter().zip(&qbar).map(|(a, q)| a - q).collect();
            let sol = LcpSolution { support: vec![], x: p.x.clone(), w };
            prop_assert!(verify_solution(&inst, &sol, 1e-9));
            for i in 0..game.n() {
                prop_assert!((game.best_response(i, &p.x).unwrap() - p.x[i]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn best_response_fixed_points_solve_the_lcp(g in dependence(1..=4, 0.0, 0.3), x in proptest::collection::vec(0.0..2.0f64, 4)) {
        let game = unit_game(g);
        let n = game.n();
        let x = &x[..n];
        let fixed = (0..n).all(|i| (game.best_response(i, x).unwrap() - x[i]).abs() <= 1e-12);
        let inst = game.nash_lcp().unwrap();
        let sol = LcpSolution { support: vec![], x: x.to_vec(), w: inst.slack(x) };
        prop_assert_eq!(fixed, verify_solution(&inst, &sol, 1e-9));
    }

    #[test]
    fn pareto_targets_ignore_weight_scale(
        (g, w) in dependence(1..=6, -0.3, 0.3).prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n)) }),
        t in 0.01..100.0f64,
    ) {
        let game = unit_game(g);
        let scaled = WelfareWeights::new(w.as_slice().iter().map(|v| v * t).collect()).unwrap();
        let a = game.perceived_costs(&w, game.dependence()).unwrap();
        let b = game.perceived_costs(&scaled, game.dependence()).unwrap();
        prop_assert!(max_diff(&a, &b) <= 1e-12);
        match (game.pareto_target(&w), game.pareto_target(&scaled)) {
            (Ok(a), Ok(b)) => prop_assert!(max_diff(&a, &b) <= 1e-10),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
        }
    }

    #[test]
    fn degenerate_partitions_reproduce_nash_and_pareto_targets(
        (g, w) in dependence(1..=6, -0.2, 0.2).prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n)) }),
    ) {
        let game = unit_game(g);
        let n = game.n();
        prop_assert_eq!(
            game.semicoop_target(&CoalitionPartition::singletons(n), &w).unwrap(),
            game.standalone_target().unwrap()
        );
        prop_assert_eq!(
            game.semicoop_target(&CoalitionPartition::grand(n), &w),
            game.pareto_target(&w)
        );
    }

    #[test]
    fn coalition_modified_keeps_only_intra_block_edges(
        (g, p) in dependence(1..=6, -1.0, 1.0).prop_flat_map(|g| { let n = g.n(); (Just(g), partition(n)) }),
    ) {
        let gc = g.coalition_modified(&p);
        for i in 0..g.n() {
            for j in 0..g.n() {
                let want = if p.block_of(i) == p.block_of(j) { g.weight(i, j) } else { 0.0 };
                prop_assert_eq!(gc.weight(i, j), want);
            }
        }
    }

    #[test]
    fn benefit_families_honour_their_contract(s in 0.1..10.0f64, y in 0.0..20.0f64, log in any::<bool>()) {
        let b = if log { BenefitFunction::logarithmic(s).unwrap() } else { BenefitFunction::exponential(s).unwrap() };
        let h = 1e-4 * (1.0 + y);
        let fd = (b.value(y + h).unwrap() - b.value(y - h).unwrap()) / (2.0 * h);
        let d = b.derivative(y).unwrap();
        prop_assert!(d > 0.0);
        prop_assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-300) + 1e-12, "fd {} vs {}", fd, d);
        let curv = (b.derivative(y + h).unwrap() - b.derivative(y).unwrap()) / h;
        prop_assert!(curv < 0.0);
        let back = b.derivative_inverse(d).unwrap();
        prop_assert!((back - y).abs() <= 1e-9 * (1.0 + y));
    }
}
