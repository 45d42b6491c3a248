//! Alpha, Katz and Bonacich centralities, and the effort-centrality link.
//!
//! Alpha-centrality is always computed by a direct solve of `(I − αG) v = e`.
//! The Katz walk series is kept for validation and for reading off how walks
//! of each length contribute; at `α = −1` it need not converge even when the
//! resolvent exists.

use crate::error::{Error, Result};
use crate::game_model::{GameSpec, EffortProfile, Outcome};
use crate::matrix::{self, SquareMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    Alpha { alpha: f64, exogenous: Vec<f64> },
    Katz { alpha: f64, depth: usize },
    Bonacich { alpha: f64, beta: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Convergence {
    Closed,
    /// Partial sum to `depth` terms; `residual` is the ∞-norm of the last term.
    SeriesTruncated { depth: usize, residual: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityResult {
    pub values: Vec<f64>,
    pub measure: Measure,
    pub convergence: Convergence,
}

/// `(I − αG)⁻¹ e`.
pub fn alpha_centrality(g: &SquareMatrix, alpha: f64, e: &[f64]) -> Result<CentralityResult> {
    check_len(g, e)?;
    let values = matrix::solve(&g.identity_plus(-alpha), e)?;
    Ok(CentralityResult {
        values,
        measure: Measure::Alpha {
            alpha,
            exogenous: e.to_vec(),
        },
        convergence: Convergence::Closed,
    })
}

/// `Σ_{k=1..depth} αᵏ Gᵏ e`.
pub fn katz_centrality(g: &SquareMatrix, alpha: f64, e: &[f64], depth: usize) -> Result<CentralityResult> {
    check_len(g, e)?;
    let terms = walk_terms(g, alpha, e, depth);
    let mut values = vec![0.0; e.len()];
    for t in &terms {
        values.iter_mut().zip(t).for_each(|(v, x)| *v += x);
    }
    let residual = terms.last().map_or(matrix::norm_inf_vec(e), |t| matrix::norm_inf_vec(t));
    Ok(CentralityResult {
        values,
        measure: Measure::Katz { alpha, depth },
        convergence: Convergence::SeriesTruncated { depth, residual },
    })
}

/// Walk contributions `αᵏ Gᵏ e` for `k = 1..=depth`.
pub fn walk_terms(g: &SquareMatrix, alpha: f64, e: &[f64], depth: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(depth);
    let mut term = e.to_vec();
    for _ in 0..depth {
        term = g.mul_vec(&term).into_iter().map(|v| alpha * v).collect();
        out.push(term.clone());
    }
    out
}

/// Katz by its closed form, `(−I + (I − αG)⁻¹) e`.
pub fn katz_closed_form(g: &SquareMatrix, alpha: f64, e: &[f64]) -> Result<Vec<f64>> {
    let a = alpha_centrality(g, alpha, e)?;
    Ok(a.values.iter().zip(e).map(|(v, x)| v - x).collect())
}

/// `β (I − αR)⁻¹ R 1`. `r` must have a zero diagonal.
pub fn bonacich_centrality(r: &SquareMatrix, alpha: f64, beta: f64) -> Result<CentralityResult> {
    if r.diagonal().any(|d| d != 0.0) {
        return Err(Error::InvalidMatrix("relationship matrix must have a zero diagonal".into()));
    }
    let r1 = r.mul_vec(&vec![1.0; r.n()]);
    let v = matrix::solve(&r.identity_plus(-alpha), &r1)?;
    Ok(CentralityResult {
        values: v.into_iter().map(|x| beta * x).collect(),
        measure: Measure::Bonacich { alpha, beta },
        convergence: Convergence::Closed,
    })
}

/// The three measures on one symmetric matrix with unit exogenous status.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureIdentity {
    pub alpha: Vec<f64>,
    pub bonacich: Vec<f64>,
    pub katz: Vec<f64>,
    /// `‖c_alpha − (1 + α·c_bonacich)‖∞`.
    pub bonacich_gap: f64,
    /// `‖c_alpha − (1 + c_katz)‖∞`.
    pub katz_gap: f64,
}

impl MeasureIdentity {
    pub fn holds(&self, tol: f64) -> bool {
        self.bonacich_gap <= tol && self.katz_gap <= tol
    }
}

pub fn measure_identity(a: &SquareMatrix, alpha: f64) -> Result<MeasureIdentity> {
    let n = a.n();
    let ones = vec![1.0; n];
    let alpha_c = alpha_centrality(a, alpha, &ones)?.values;
    let bonacich = bonacich_centrality(a, alpha, 1.0)?.values;
    let katz = katz_closed_form(a, alpha, &ones)?;
    let bonacich_gap = (0..n)
        .map(|i| (alpha_c[i] - (1.0 + alpha * bonacich[i])).abs())
        .fold(0.0, f64::max);
    let katz_gap = (0..n)
        .map(|i| (alpha_c[i] - (1.0 + katz[i])).abs())
        .fold(0.0, f64::max);
    Ok(MeasureIdentity {
        alpha: alpha_c,
        bonacich,
        katz,
        bonacich_gap,
        katz_gap,
    })
}

/// True iff `a` is symmetric with zero diagonal, all three measures exist, and
/// `c_alpha(a, α, 1) = 1 + α c_bonacich(a, α, 1) = 1 + c_katz(a, α)` within `tol`.
pub fn verify_measure_identity(a: &SquareMatrix, alpha: f64, tol: f64) -> bool {
    if !a.is_symmetric(0.0) {
        return false;
    }
    measure_identity(a, alpha).is_ok_and(|m| m.holds(tol))
}

/// Checks that an interior profile equals `c_alpha(G, −1, target)`, where the
/// target is rebuilt from alpha-centralities of the (weighted, possibly
/// coalition-modified) influence network rather than from the solver path.
pub fn centrality_effort_check(game: &GameSpec, profile: &EffortProfile, tol: f64) -> Result<bool> {
    let n = game.n();
    if profile.x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: profile.x.len(),
        });
    }
    let g = game.dependence();
    let target = match &profile.outcome {
        Outcome::Nash => game.standalone_target()?,
        Outcome::Pareto(weights) => {
            let influence = weights.weighted_influence(g.matrix());
            let perceived = alpha_centrality(&influence, -1.0, game.costs())?.values;
            invert(game, &perceived)?
        }
        Outcome::SemiCoop(partition, weights) => {
            let gc = g.coalition_modified(partition);
            let influence = weights.weighted_influence(gc.matrix());
            let perceived = alpha_centrality(&influence, -1.0, game.costs())?.values;
            invert(game, &perceived)?
        }
    };

    let aggregate = game.aggregate(&profile.x);
    for i in 0..n {
        let slack = aggregate[i] - target[i];
        if slack > tol {
            return Err(Error::NotInterior { agent: i, slack });
        }
    }
    let expected = alpha_centrality(g.matrix(), -1.0, &target)?.values;
    Ok(matrix::max_abs_diff(&expected, &profile.x) <= tol)
}

fn invert(game: &GameSpec, perceived: &[f64]) -> Result<Vec<f64>> {
    let mut bad = Vec::new();
    let q: Vec<f64> = perceived
        .iter()
        .zip(game.benefits())
        .enumerate()
        .map(|(i, (&m, b))| {
            b.derivative_inverse(m).unwrap_or_else(|| {
                bad.push(crate::error::AgentValue { agent: i, value: m });
                f64::NAN
            })
        })
        .collect();
    if bad.is_empty() {
        Ok(q)
    } else {
        Err(Error::PerceivedCostOutOfRange(bad))
    }
}

fn check_len(g: &SquareMatrix, e: &[f64]) -> Result<()> {
    if e.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: e.len(),
        });
    }
    Ok(())
}
