#![allow(dead_code)]

use netgood_core::{BenefitFunction, DependenceMatrix, GameSpec, SquareMatrix};
use proptest::prelude::*;

pub const C: f64 = 0.36787944117144233;

pub fn exp1() -> BenefitFunction {
    BenefitFunction::exponential(1.0).unwrap()
}

/// Exponential benefit with unit saturation and cost 1/e, so q̄ = 1.
pub fn unit_game(g: DependenceMatrix) -> GameSpec {
    GameSpec::uniform(g, exp1(), C).unwrap()
}

pub fn pair_game(g: f64) -> GameSpec {
    unit_game(DependenceMatrix::pair(g, g).unwrap())
}

/// Agents 0 and 1 depend on each other; agent 0 also depends on agent 2.
pub fn triangle_game(g02: f64) -> GameSpec {
    unit_game(DependenceMatrix::from_rows(&[[0.0, 0.2, g02], [0.2, 0.0, 0.0], [0.0, 0.0, 0.0]]).unwrap())
}

/// Center 0 depends on each leaf with weight `g_out`; leaves depend on the center with `g_in`.
pub fn star_game(g_in: f64, g_out: f64) -> GameSpec {
    unit_game(
        DependenceMatrix::from_rows(&[
            [0.0, g_out, g_out, g_out],
            [g_in, 0.0, 0.0, 0.0],
            [g_in, 0.0, 0.0, 0.0],
            [g_in, 0.0, 0.0, 0.0],
        ])
        .unwrap(),
    )
}

pub fn zero_diagonal(n: usize, mut v: Vec<f64>) -> Vec<f64> {
    for i in 0..n {
        v[i * n + i] = 0.0;
    }
    v
}

pub fn symmetrize(n: usize, mut v: Vec<f64>) -> Vec<f64> {
    for i in 0..n {
        for j in 0..i {
            v[i * n + j] = v[j * n + i];
        }
    }
    v
}

/// Dependence matrix with entries in `[lo, hi]` off the diagonal.
pub fn dependence(n: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = DependenceMatrix> {
    n.prop_flat_map(move |n| proptest::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        DependenceMatrix::new(SquareMatrix::new(n, zero_diagonal(n, v)).unwrap()).unwrap()
    }))
}

pub fn symmetric_dependence(n: std::ops::RangeInclusive<usize>, lo: f64, hi: f64) -> impl Strategy<Value = DependenceMatrix> {
    n.prop_flat_map(move |n| proptest::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        let v = symmetrize(n, zero_diagonal(n, v));
        DependenceMatrix::new(SquareMatrix::new(n, v).unwrap()).unwrap()
    }))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
