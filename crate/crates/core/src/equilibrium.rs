//! Equilibrium solvers, best-response dynamics, a brute-force Nash check, and
//! edge perturbation experiments.

use thiserror::Error as ThisError;

use crate::error::{Error, Result};
use crate::game_model::{
    CoalitionPartition, DependenceMatrix, EffortProfile, GameSpec, Outcome, WelfareWeights,
};
use crate::lcp::{self, LcpInstance, LcpSolution, LemkeOutcome};
use crate::matrix::{self, Lu, SINGULAR_RCOND};
use crate::matrix_analysis::{self, ClassificationReport, ExistenceVerdict};
use crate::simplex;

/// Maximum ∞-norm of the first-order residual for an accepted Pareto or
/// semi-cooperative profile.
pub const FOC_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 10_000;
pub const DIVERGENCE_FACTOR: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// A single profile from Lemke's method.
    One,
    /// Every profile, by support enumeration.
    All,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub method: &'static str,
    pub pivots: Option<usize>,
    pub ray_termination: bool,
    pub supports_checked: Option<usize>,
    pub singular_supports: usize,
    /// Per profile: `max(‖w − (Mx + q)‖∞, |xᵀw|)` for Nash, `‖(I+G)x − target‖∞` otherwise.
    pub residuals: Vec<f64>,
    /// Per profile, only for cooperative outcomes.
    pub foc_residuals: Vec<f64>,
    /// Per profile: agents with `x_i = 0` and `w_i = 0`.
    pub degenerate: Vec<Vec<usize>>,
    pub target: Vec<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub profiles: Vec<EffortProfile>,
    /// `None` when the network is too large for the exhaustive P-matrix test.
    pub verdicts: Option<ClassificationReport>,
    /// Per profile: true when every agent sits on its target (`w = 0`).
    pub interiority: Vec<bool>,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

fn verdicts_for(g: &DependenceMatrix, tol: f64, notes: &mut Vec<String>) -> Result<Option<ClassificationReport>> {
    match matrix_analysis::classify_with_tol(g, tol) {
        Ok(r) => Ok(Some(r)),
        Err(Error::DimensionTooLarge { n, cap }) => {
            notes.push(format!("classification skipped: {n} agents exceeds the cap of {cap}"));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn lcp_residual(inst: &LcpInstance, s: &LcpSolution) -> f64 {
    let gap: f64 = s.x.iter().zip(&s.w).map(|(a, b)| a * b).sum();
    matrix::max_abs_diff(&s.w, &inst.slack(&s.x)).max(gap.abs())
}

pub fn solve_nash(game: &GameSpec, mode: SolveMode, tol: f64) -> Result<SolveReport> {
    let inst = game.nash_lcp()?;
    let mut diag = Diagnostics {
        target: inst.q().iter().map(|v| -v).collect(),
        ..Diagnostics::default()
    };
    let verdicts = verdicts_for(game.dependence(), tol, &mut diag.notes)?;

    let solutions = match mode {
        SolveMode::One => {
            diag.method = "lemke";
            let out = lcp::lemke_solve(&inst, tol)?;
            diag.pivots = Some(out.pivots());
            match out {
                LemkeOutcome::Solved { solution, .. } => vec![solution],
                LemkeOutcome::RayTermination { .. } => {
                    diag.ray_termination = true;
                    vec![]
                }
            }
        }
        SolveMode::All => {
            diag.method = "enumeration";
            let e = lcp::enumerate_solutions(&inst, tol)?;
            diag.supports_checked = Some(e.supports_checked);
            diag.singular_supports = e.singular_supports.len();
            if !e.singular_supports.is_empty() {
                diag.notes.push(format!(
                    "{} supports had a singular subsystem and were skipped",
                    e.singular_supports.len()
                ));
            }
            e.solutions
        }
    };

    if solutions.is_empty() {
        if let Some(v) = &verdicts {
            if v.existence_verdict == ExistenceVerdict::IffSpectralRadiusLtOne && v.spectral_radius >= 1.0 {
                diag.notes.push(format!(
                    "no equilibrium exists for every target: complements with spectral radius {:.6} >= 1",
                    v.spectral_radius
                ));
            }
        }
        diag.notes.push(match mode {
            SolveMode::All => "no Nash equilibrium".to_string(),
            SolveMode::One => "Lemke terminated on a ray; no equilibrium found".to_string(),
        });
    }

    let mut profiles = Vec::with_capacity(solutions.len());
    let mut interiority = Vec::with_capacity(solutions.len());
    for s in &solutions {
        diag.residuals.push(lcp_residual(&inst, s));
        diag.degenerate.push(s.degenerate_coordinates(tol));
        interiority.push(s.w.iter().all(|&w| w.abs() <= tol));
        profiles.push(EffortProfile {
            x: s.x.clone(),
            outcome: Outcome::Nash,
        });
    }
    Ok(SolveReport {
        profiles,
        verdicts,
        interiority,
        diagnostics: diag,
    })
}

/// Whether some `x ≥ 0` solves `(I + G) x = target`.
pub fn interior_exists(g: &DependenceMatrix, target: &[f64], tol: f64) -> bool {
    interior_point(g, target, tol).is_some()
}

/// A nonnegative solution of `(I + G) x = target`, if any.
pub fn interior_point(g: &DependenceMatrix, target: &[f64], tol: f64) -> Option<Vec<f64>> {
    let n = g.n();
    if target.len() != n {
        return None;
    }
    let m = g.identity_plus();
    let lu = Lu::new(&m);
    if !lu.is_exactly_singular() && lu.rcond() >= SINGULAR_RCOND {
        let x = lu.solve(target).ok()?;
        return x
            .iter()
            .all(|&v| v >= -tol)
            .then(|| x.into_iter().map(|v| v.max(0.0)).collect());
    }
    simplex::feasible_point(m.as_slice(), n, n, target, tol)
}

fn solve_linear_outcome(
    game: &GameSpec,
    target: Vec<f64>,
    outcome: Outcome,
    tol: f64,
) -> Result<SolveReport> {
    let g = game.dependence();
    let mut diag = Diagnostics {
        method: "linear",
        ..Diagnostics::default()
    };
    let verdicts = verdicts_for(g, tol, &mut diag.notes)?;
    let m = g.identity_plus();
    let raw = matrix::solve(&m, &target)?;
    diag.target = target.clone();

    if let Some(i) = raw.iter().position(|&v| v < -tol) {
        diag.notes.push(format!(
            "no interior profile: agent {i} would need effort {:.6e}",
            raw[i]
        ));
        return Ok(SolveReport {
            profiles: vec![],
            verdicts,
            interiority: vec![],
            diagnostics: diag,
        });
    }
    let x: Vec<f64> = raw.into_iter().map(|v| v.max(0.0)).collect();

    let foc = match &outcome {
        Outcome::Pareto(w) => game.pareto_foc_residual(w, &x)?,
        Outcome::SemiCoop(p, w) => game.coalition_foc_residual(p, w, &x)?,
        Outcome::Nash => unreachable!("Nash profiles come from the LCP"),
    };
    let foc_norm = matrix::norm_inf_vec(&foc);
    if foc_norm > FOC_TOL {
        diag.notes.push(format!(
            "no interior profile: first-order residual {foc_norm:.3e} exceeds {FOC_TOL:e}"
        ));
        return Ok(SolveReport {
            profiles: vec![],
            verdicts,
            interiority: vec![],
            diagnostics: diag,
        });
    }
    if matches!(outcome, Outcome::SemiCoop(..)) {
        diag.notes.push("uniqueness of the semi-cooperative profile is not certified".into());
    }

    let residual = matrix::max_abs_diff(&m.mul_vec(&x), &target);
    let in_cone = interior_exists(g, &target, tol);
    diag.residuals.push(residual);
    diag.foc_residuals.push(foc_norm);
    diag.degenerate.push((0..x.len()).filter(|&i| x[i].abs() <= tol).collect());
    Ok(SolveReport {
        profiles: vec![EffortProfile { x, outcome }],
        verdicts,
        interiority: vec![in_cone],
        diagnostics: diag,
    })
}

/// Interior Pareto-efficient profile for weights `λ`, if one exists.
pub fn solve_pareto(game: &GameSpec, weights: &WelfareWeights, tol: f64) -> Result<SolveReport> {
    let target = game.pareto_target(weights)?;
    solve_linear_outcome(game, target, Outcome::Pareto(weights.clone()), tol)
}

/// Interior semi-cooperative profile: each coalition maximizes its own
/// weighted welfare.
pub fn solve_semicoop(
    game: &GameSpec,
    partition: &CoalitionPartition,
    weights: &WelfareWeights,
    tol: f64,
) -> Result<SolveReport> {
    let target = game.semicoop_target(partition, weights)?;
    solve_linear_outcome(
        game,
        target,
        Outcome::SemiCoop(partition.clone(), weights.clone()),
        tol,
    )
}

#[derive(Debug, Clone, PartialEq)]
pub enum DynamicsVerdict {
    /// `iterations` counts the updates needed to reach `x`.
    Converged { x: Vec<f64>, iterations: usize },
    Diverged { iterations: usize },
    /// A 2-cycle was detected, or the iteration budget ran out without settling.
    Oscillating { iterations: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsOutcome {
    /// `x0` followed by every iterate.
    pub trajectory: Vec<Vec<f64>>,
    pub verdict: DynamicsVerdict,
}

/// Synchronous best-response iteration `x ← max(0, q̄ − G x)`.
pub fn best_response_dynamics(game: &GameSpec, x0: &[f64], max_iter: usize, tol: f64) -> Result<DynamicsOutcome> {
    let n = game.n();
    if x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x0.len(),
        });
    }
    let qbar = game.standalone_target()?;
    let g = game.dependence().matrix();
    let top = qbar.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bound = if top > 0.0 { DIVERGENCE_FACTOR * top } else { DIVERGENCE_FACTOR };

    let mut trajectory = vec![x0.to_vec()];
    for k in 1..=max_iter {
        let prev = &trajectory[k - 1];
        let gx = g.mul_vec(prev);
        let next: Vec<f64> = (0..n).map(|i| (qbar[i] - gx[i]).max(0.0)).collect();
        let step = matrix::max_abs_diff(&next, prev);
        let size = matrix::norm_inf_vec(&next);
        let two_back = (k >= 2).then(|| matrix::max_abs_diff(&next, &trajectory[k - 2]));
        trajectory.push(next);

        if step < tol {
            let last = trajectory.last().unwrap();
            let x = game
                .nash_lcp()
                .ok()
                .and_then(|inst| lcp::polish(&inst, last, tol))
                .map_or_else(|| last.clone(), |s| s.x);
            return Ok(DynamicsOutcome {
                trajectory,
                verdict: DynamicsVerdict::Converged { x, iterations: k - 1 },
            });
        }
        if !size.is_finite() || size > bound {
            return Ok(DynamicsOutcome {
                trajectory,
                verdict: DynamicsVerdict::Diverged { iterations: k },
            });
        }
        if two_back.is_some_and(|d| d < tol) {
            return Ok(DynamicsOutcome {
                trajectory,
                verdict: DynamicsVerdict::Oscillating { iterations: k },
            });
        }
    }
    Ok(DynamicsOutcome {
        trajectory,
        verdict: DynamicsVerdict::Oscillating { iterations: max_iter },
    })
}

/// Grid settings for [`grid_oracle_is_nash`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOracle {
    pub radius: f64,
    pub steps: usize,
    pub tol: f64,
}

impl GridOracle {
    /// Radius `max(1, 2·max q̄)`, 201 points, tolerance 1e-7.
    pub fn for_game(game: &GameSpec) -> Result<Self> {
        let top = game
            .standalone_target()?
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(Self {
            radius: (2.0 * top).max(1.0),
            steps: 201,
            tol: 1e-7,
        })
    }

    pub fn check(&self, game: &GameSpec, x: &[f64]) -> Result<bool> {
        grid_oracle_is_nash(game, x, self.radius, self.steps, self.tol)
    }
}

/// Brute-force Nash check: no agent gains more than `tol` by moving its own
/// effort to any point of a uniform grid on `[max(0, x_i − radius), x_i + radius]`.
pub fn grid_oracle_is_nash(game: &GameSpec, x: &[f64], radius: f64, steps: usize, tol: f64) -> Result<bool> {
    let n = game.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut y = x.to_vec();
    for i in 0..n {
        let base = game.utility(x, i)?;
        let lo = (x[i] - radius).max(0.0);
        let hi = x[i] + radius;
        let span = steps.max(2) - 1;
        for s in 0..=span {
            y[i] = lo + (hi - lo) * s as f64 / span as f64;
            // Deviations outside the benefit's domain cannot be profitable.
            let Ok(u) = game.utility(&y, i) else { continue };
            if u > base + tol {
                return Ok(false);
            }
        }
        y[i] = x[i];
    }
    Ok(true)
}

/// Which profile a perturbation experiment compares.
#[derive(Debug, Clone, PartialEq)]
pub enum OutcomeKind {
    Nash,
    Pareto(WelfareWeights),
    SemiCoop(CoalitionPartition, WelfareWeights),
}

/// Solves for a single profile of the requested kind.
pub fn solve_outcome(game: &GameSpec, kind: &OutcomeKind, tol: f64) -> Result<EffortProfile> {
    let report = match kind {
        OutcomeKind::Nash => solve_nash(game, SolveMode::One, tol)?,
        OutcomeKind::Pareto(w) => solve_pareto(game, w, tol)?,
        OutcomeKind::SemiCoop(p, w) => solve_semicoop(game, p, w, tol)?,
    };
    report.profiles.into_iter().next().ok_or_else(|| {
        Error::NoProfile(
            report
                .diagnostics
                .notes
                .last()
                .cloned()
                .unwrap_or_else(|| "no profile".into()),
        )
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationResult {
    /// Every changed edge `(i, j)`, i.e. `g_ij`.
    pub edges: Vec<(usize, usize)>,
    /// Weights before the change, aligned with `edges`.
    pub old_weights: Vec<f64>,
    pub new_weight: f64,
    pub baseline: EffortProfile,
    pub perturbed: EffortProfile,
    /// `perturbed.x − baseline.x`.
    pub delta: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Baseline,
    Perturbed,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Baseline => "baseline",
            Side::Perturbed => "perturbed",
        })
    }
}

/// A perturbation experiment that failed on one side. When the perturbed game
/// fails, the baseline profile is kept.
#[derive(Debug, Clone, PartialEq, ThisError)]
#[error("{side} game: {source}")]
pub struct PerturbationError {
    pub side: Side,
    pub baseline: Option<EffortProfile>,
    pub source: Error,
}

/// Changes `g_ij` to `new_weight` and re-solves for the requested outcome.
pub fn perturb_edge(
    game: &GameSpec,
    i: usize,
    j: usize,
    new_weight: f64,
    kind: &OutcomeKind,
    tol: f64,
) -> std::result::Result<PerturbationResult, PerturbationError> {
    perturb_edges(game, &[(i, j)], new_weight, kind, tol)
}

/// Sets every listed edge to `new_weight` at once and re-solves.
pub fn perturb_edges(
    game: &GameSpec,
    edges: &[(usize, usize)],
    new_weight: f64,
    kind: &OutcomeKind,
    tol: f64,
) -> std::result::Result<PerturbationResult, PerturbationError> {
    let fail = |side, baseline, source| PerturbationError { side, baseline, source };
    let g = game.dependence();
    let mut moved = g.clone();
    for &(i, j) in edges {
        moved = moved
            .with_weight(i, j, new_weight)
            .map_err(|e| fail(Side::Perturbed, None, e))?;
    }
    let perturbed_game = game.with_dependence(moved).map_err(|e| fail(Side::Perturbed, None, e))?;
    let old_weights = edges.iter().map(|&(i, j)| g.weight(i, j)).collect();
    let baseline = solve_outcome(game, kind, tol).map_err(|e| fail(Side::Baseline, None, e))?;
    let perturbed = solve_outcome(&perturbed_game, kind, tol)
        .map_err(|e| fail(Side::Perturbed, Some(baseline.clone()), e))?;
    let delta = perturbed.x.iter().zip(&baseline.x).map(|(a, b)| a - b).collect();
    Ok(PerturbationResult {
        edges: edges.to_vec(),
        old_weights,
        new_weight,
        baseline,
        perturbed,
        delta,
    })
}
