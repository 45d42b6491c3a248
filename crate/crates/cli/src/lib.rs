//! Command-line front end: reads a game document, dispatches to the solvers
//! in `netgood-core` and renders JSON reports or graph exports.

pub mod document;
pub mod error;
pub mod export;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netgood_core::centrality::{
    alpha_centrality, bonacich_centrality, katz_centrality, katz_closed_form, measure_identity,
};
use netgood_core::equilibrium::{
    best_response_dynamics, perturb_edges, solve_nash, solve_pareto, solve_semicoop, DynamicsVerdict,
    OutcomeKind, PerturbationError, SolveMode, SolveReport,
};
use netgood_core::matrix_analysis::classify_with_tol;
use netgood_core::{
    CoalitionPartition, Convergence, EffortProfile, Error, GameSpec, Outcome, WelfareWeights, DEFAULT_TOL,
};
use serde_json::{json, Value};

use crate::document::{load, parse_lambda, LoadedGame};
pub use crate::error::CliError;
use crate::error::{EXIT_NO_PROFILE, EXIT_OK};
use crate::report::{classification, num, nums, opt_num, render};

pub const TOL_ENV: &str = "NETGOOD_TOL";

#[derive(Debug, Parser)]
#[command(name = "netgood", version, about = "Equilibria and centralities of public-good games on networks")]
pub struct Cli {
    /// Numerical tolerance; overrides NETGOOD_TOL (default 1e-9).
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matrix classes, spectrum and existence/uniqueness verdicts.
    Classify { input: PathBuf },
    /// Nash, Pareto or semi-cooperative effort profiles.
    Solve(SolveArgs),
    /// Alpha, Katz or Bonacich centralities of the dependence network.
    Centrality(CentralityArgs),
    /// Change edge weights and compare profiles.
    Whatif(WhatifArgs),
    /// Synchronous best-response iteration.
    Dynamics(DynamicsArgs),
    /// Write the network as DOT or CSV.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Nash,
    Pareto,
    Coalition,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub input: PathBuf,
    #[arg(value_enum, default_value = "nash")]
    pub kind: Kind,
    /// Enumerate every profile instead of stopping at the first.
    #[arg(long)]
    pub all: bool,
    /// Comma-separated welfare weights; defaults to the document's, then all ones.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Coalitions as `0,1;2`; defaults to the document's.
    #[arg(long)]
    pub coalitions: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Alpha,
    Katz,
    Bonacich,
    All,
}

#[derive(Debug, Args)]
pub struct CentralityArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    pub alpha: f64,
    /// `qbar`, `ones`, `costs`, or a comma-separated vector.
    #[arg(long, default_value = "qbar")]
    pub exo: String,
    #[arg(long, value_enum, default_value = "alpha")]
    pub measure: MeasureArg,
    /// Number of walk lengths in the truncated Katz series.
    #[arg(long, default_value_t = 60)]
    pub depth: usize,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub beta: f64,
}

#[derive(Debug, Args)]
pub struct WhatifArgs {
    pub input: PathBuf,
    /// Edge `i j` (0-based): agent i's dependence on agent j. Repeat to
    /// change several edges to the same weight.
    #[arg(long, num_args = 2, value_names = ["I", "J"], required = true, action = clap::ArgAction::Append)]
    pub edge: Vec<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub weight: f64,
    #[arg(long, value_enum, default_value = "nash")]
    pub kind: Kind,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub coalitions: Option<String>,
}

#[derive(Debug, Args)]
pub struct DynamicsArgs {
    pub input: PathBuf,
    /// Comma-separated starting profile; defaults to zero.
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = netgood_core::equilibrium::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Include every iterate in the report.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Csv,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// What to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub stdout: String,
    pub code: i32,
}

impl Response {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: EXIT_OK }
    }
}

/// `--tol`, else `NETGOOD_TOL`, else the library default.
pub fn resolve_tol(flag: Option<f64>, env: Option<&str>) -> Result<f64, CliError> {
    let tol = match (flag, env) {
        (Some(t), _) => t,
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{TOL_ENV}='{s}' is not a number")))?,
        (None, None) => DEFAULT_TOL,
    };
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("tolerance must be positive, got {tol}")));
    }
    Ok(tol)
}

pub fn run(cli: Cli, env_tol: Option<&str>) -> Result<Response, CliError> {
    let tol = resolve_tol(cli.tol, env_tol)?;
    match cli.command {
        Command::Classify { input } => cmd_classify(&read_game(&input)?, tol),
        Command::Solve(a) => cmd_solve(&read_game(&a.input)?, &a, tol),
        Command::Centrality(a) => cmd_centrality(&read_game(&a.input)?, &a),
        Command::Whatif(a) => cmd_whatif(&read_game(&a.input)?, &a, tol),
        Command::Dynamics(a) => cmd_dynamics(&read_game(&a.input)?, &a, tol),
        Command::Export(a) => cmd_export(&read_game(&a.input)?, &a),
    }
}

fn read_game(path: &PathBuf) -> Result<LoadedGame, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load(&text)
}

fn parse_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("{what}: '{t}' is not a number")))
        })
        .collect()
}

fn parse_blocks(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split(';')
        .map(|block| {
            block
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("coalitions: '{t}' is not an agent index")))
                })
                .collect()
        })
        .collect()
}

fn weights_for(doc: &LoadedGame, flag: Option<&str>) -> Result<WelfareWeights, CliError> {
    let n = doc.game.n();
    match flag {
        Some(s) => parse_lambda(parse_list(s, "lambda")?, n, "--lambda"),
        None => Ok(doc.lambda.clone().unwrap_or_else(|| WelfareWeights::ones(n))),
    }
}

fn partition_for(doc: &LoadedGame, flag: Option<&str>) -> Result<CoalitionPartition, CliError> {
    match flag {
        Some(s) => CoalitionPartition::new(doc.game.n(), parse_blocks(s)?).map_err(|e| CliError::Schema {
            path: "--coalitions".into(),
            message: e.to_string(),
        }),
        None => doc.coalitions.clone().ok_or_else(|| CliError::Schema {
            path: "coalitions".into(),
            message: "coalition solve needs 'coalitions' in the document or --coalitions".into(),
        }),
    }
}

fn outcome_kind(doc: &LoadedGame, kind: Kind, lambda: Option<&str>, coalitions: Option<&str>) -> Result<OutcomeKind, CliError> {
    Ok(match kind {
        Kind::Nash => OutcomeKind::Nash,
        Kind::Pareto => OutcomeKind::Pareto(weights_for(doc, lambda)?),
        Kind::Coalition => OutcomeKind::SemiCoop(partition_for(doc, coalitions)?, weights_for(doc, lambda)?),
    })
}

pub fn cmd_classify(doc: &LoadedGame, tol: f64) -> Result<Response, CliError> {
    let r = classify_with_tol(doc.game.dependence(), tol)?;
    let mut v = classification(&r);
    v["command"] = json!("classify");
    v["n"] = json!(doc.game.n());
    Ok(Response::ok(render(&v)))
}

fn profile_json(p: &EffortProfile) -> Value {
    let mut v = json!({ "x": nums(&p.x), "outcome": p.outcome.label() });
    match &p.outcome {
        Outcome::Nash => {}
        Outcome::Pareto(w) => v["lambda"] = nums(w.as_slice()),
        Outcome::SemiCoop(c, w) => {
            v["lambda"] = nums(w.as_slice());
            v["coalitions"] = json!(c.blocks());
        }
    }
    v
}

fn solve_report_json(game: &GameSpec, r: &SolveReport) -> Value {
    let d = &r.diagnostics;
    let m = game.dependence().identity_plus();
    let profiles: Vec<Value> = r
        .profiles
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut v = profile_json(p);
            let w: Vec<f64> = m.mul_vec(&p.x).iter().zip(&d.target).map(|(a, t)| a - t).collect();
            v["w"] = nums(&w);
            v["interior"] = json!(r.interiority[k]);
            v["residual"] = opt_num(d.residuals.get(k).copied());
            v["foc_residual"] = opt_num(d.foc_residuals.get(k).copied());
            v["degenerate_coordinates"] = json!(d.degenerate.get(k).cloned().unwrap_or_default());
            v
        })
        .collect();
    json!({
        "profiles": profiles,
        "verdicts": r.verdicts.as_ref().map_or(Value::Null, classification),
        "diagnostics": {
            "method": d.method,
            "pivots": d.pivots,
            "ray_termination": d.ray_termination,
            "supports_checked": d.supports_checked,
            "singular_supports": d.singular_supports,
            "target": nums(&d.target),
            "notes": d.notes,
        },
    })
}

fn with_no_profile_code(body: Value, empty: bool) -> Response {
    Response {
        stdout: render(&body),
        code: if empty { EXIT_NO_PROFILE } else { EXIT_OK },
    }
}

pub fn cmd_solve(doc: &LoadedGame, a: &SolveArgs, tol: f64) -> Result<Response, CliError> {
    let game = &doc.game;
    let mode = if a.all { SolveMode::All } else { SolveMode::One };
    let kind = outcome_kind(doc, a.kind, a.lambda.as_deref(), a.coalitions.as_deref())?;
    let (report, perceived) = match &kind {
        OutcomeKind::Nash => (solve_nash(game, mode, tol)?, None),
        OutcomeKind::Pareto(w) => (
            solve_pareto(game, w, tol)?,
            Some(game.perceived_costs(w, game.dependence())?),
        ),
        OutcomeKind::SemiCoop(c, w) => (
            solve_semicoop(game, c, w, tol)?,
            Some(game.perceived_costs(w, &game.dependence().coalition_modified(c))?),
        ),
    };
    let mut v = solve_report_json(game, &report);
    v["command"] = json!("solve");
    v["kind"] = json!(match a.kind {
        Kind::Nash => "nash",
        Kind::Pareto => "pareto",
        Kind::Coalition => "coalition",
    });
    v["mode"] = json!(if a.all { "all" } else { "one" });
    if let Some(pc) = perceived {
        v["perceived_costs"] = nums(&pc);
    }
    Ok(with_no_profile_code(v, report.is_empty()))
}

fn exogenous(doc: &LoadedGame, spec: &str) -> Result<Vec<f64>, CliError> {
    let n = doc.game.n();
    let e = match spec {
        "qbar" => doc.game.standalone_target()?,
        "ones" => vec![1.0; n],
        "costs" => doc.game.costs().to_vec(),
        list => parse_list(list, "exo")?,
    };
    if e.len() != n {
        return Err(CliError::Usage(format!("exo: expected {n} values, found {}", e.len())));
    }
    Ok(e)
}

pub fn cmd_centrality(doc: &LoadedGame, a: &CentralityArgs) -> Result<Response, CliError> {
    let g = doc.game.dependence().matrix();
    let e = exogenous(doc, &a.exo)?;
    let mut v = json!({
        "command": "centrality",
        "alpha": num(a.alpha),
        "exogenous": nums(&e),
    });
    let want = |m: MeasureArg| a.measure == m || a.measure == MeasureArg::All;
    if want(MeasureArg::Alpha) {
        v["alpha_centrality"] = nums(&alpha_centrality(g, a.alpha, &e)?.values);
    }
    if want(MeasureArg::Katz) {
        let k = katz_centrality(g, a.alpha, &e, a.depth)?;
        let residual = match k.convergence {
            Convergence::SeriesTruncated { residual, .. } => residual,
            Convergence::Closed => 0.0,
        };
        let closed = match katz_closed_form(g, a.alpha, &e) {
            Ok(c) => nums(&c),
            Err(Error::SingularSystem { .. }) => Value::Null,
            Err(err) => return Err(err.into()),
        };
        v["katz"] = json!({
            "series": nums(&k.values),
            "depth": a.depth,
            "last_term_norm": num(residual),
            "closed_form": closed,
        });
    }
    if want(MeasureArg::Bonacich) {
        v["bonacich"] = json!({
            "beta": num(a.beta),
            "values": nums(&bonacich_centrality(g, a.alpha, a.beta)?.values),
        });
    }
    if a.measure == MeasureArg::All {
        let symmetric = g.is_symmetric(0.0);
        let mut id = json!({ "symmetric": symmetric });
        if symmetric {
            let m = measure_identity(g, a.alpha)?;
            id["bonacich_gap"] = num(m.bonacich_gap);
            id["katz_gap"] = num(m.katz_gap);
            id["holds"] = json!(m.holds(1e-9));
        } else {
            id["holds"] = json!(false);
            id["note"] = json!("the identity is only defined for symmetric networks");
        }
        v["identity"] = id;
    }
    Ok(Response::ok(render(&v)))
}

fn sign(d: f64, tol: f64) -> &'static str {
    if d > tol {
        "+"
    } else if d < -tol {
        "-"
    } else {
        "0"
    }
}

pub fn cmd_whatif(doc: &LoadedGame, a: &WhatifArgs, tol: f64) -> Result<Response, CliError> {
    let edges: Vec<(usize, usize)> = a.edge.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    let kind = outcome_kind(doc, a.kind, a.lambda.as_deref(), a.coalitions.as_deref())?;
    let mut v = json!({
        "command": "whatif",
        "edges": edges.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
        "new_weight": num(a.weight),
        "kind": match a.kind { Kind::Nash => "nash", Kind::Pareto => "pareto", Kind::Coalition => "coalition" },
    });
    match perturb_edges(&doc.game, &edges, a.weight, &kind, tol) {
        Ok(r) => {
            v["old_weights"] = nums(&r.old_weights);
            v["baseline"] = profile_json(&r.baseline);
            v["perturbed"] = profile_json(&r.perturbed);
            v["delta"] = nums(&r.delta);
            v["signs"] = json!(r.delta.iter().map(|&d| sign(d, tol)).collect::<Vec<_>>());
            Ok(Response::ok(render(&v)))
        }
        Err(PerturbationError { side, baseline, source }) => {
            v["failed_side"] = json!(side.to_string());
            v["error"] = json!(source.to_string());
            if let Some(b) = &baseline {
                v["baseline"] = profile_json(b);
            }
            Err(CliError::Perturbation {
                side,
                source,
                partial: Some(render(&v)),
            })
        }
    }
}

pub fn cmd_dynamics(doc: &LoadedGame, a: &DynamicsArgs, tol: f64) -> Result<Response, CliError> {
    let n = doc.game.n();
    let x0 = match &a.x0 {
        Some(s) => parse_list(s, "x0")?,
        None => vec![0.0; n],
    };
    if x0.len() != n {
        return Err(CliError::Usage(format!("x0: expected {n} values, found {}", x0.len())));
    }
    if x0.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
        return Err(CliError::Usage("x0 must be nonnegative and finite".into()));
    }
    let out = best_response_dynamics(&doc.game, &x0, a.max_iter, tol)?;
    let last = out.trajectory.last().cloned().unwrap_or_default();
    let (verdict, iterations, fin) = match &out.verdict {
        DynamicsVerdict::Converged { x, iterations } => ("converged", *iterations, x.clone()),
        DynamicsVerdict::Diverged { iterations } => ("diverged", *iterations, last),
        DynamicsVerdict::Oscillating { iterations } => ("oscillating", *iterations, last),
    };
    let mut v = json!({
        "command": "dynamics",
        "verdict": verdict,
        "iterations": iterations,
        "final": nums(&fin),
        "x0": nums(&x0),
    });
    if a.trace {
        v["trajectory"] = Value::Array(out.trajectory.iter().map(|x| nums(x)).collect());
    }
    Ok(Response::ok(render(&v)))
}

pub fn cmd_export(doc: &LoadedGame, a: &ExportArgs) -> Result<Response, CliError> {
    let g = doc.game.dependence();
    let body = match a.format {
        Format::Dot => export::to_dot(g),
        Format::Csv => export::to_csv(g),
    };
    match &a.output {
        Some(path) => {
            std::fs::write(path, body).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Response::ok(String::new()))
        }
        None => Ok(Response::ok(body)),
    }
}
