//! Public-good provision games on weighted directed networks.
//!
//! - [`matrix_analysis`]: P/Z/L/S and diagonal-dominance tests, spectral
//!   radius, and the existence/uniqueness classifier.
//! - [`lcp`]: Lemke pivoting, exhaustive support enumeration, verification.
//! - [`game_model`]: payoffs, best replies, and the Nash, Pareto and
//!   semi-cooperative target vectors.
//! - [`equilibrium`]: solvers, best-response dynamics, a brute-force Nash
//!   oracle and edge-perturbation experiments.
//! - [`centrality`]: alpha/Katz/Bonacich centralities and the check that
//!   interior efforts are alpha-centralities.

pub mod centrality;
pub mod eigen;
pub mod equilibrium;
pub mod error;
pub mod game_model;
pub mod lcp;
pub mod matrix;
pub mod matrix_analysis;
pub mod simplex;

pub use centrality::{CentralityResult, Convergence, Measure};
pub use equilibrium::{
    DynamicsOutcome, DynamicsVerdict, OutcomeKind, PerturbationResult, SolveMode, SolveReport,
};
pub use error::{AgentValue, Error, Result};
pub use game_model::{
    BenefitFunction, CoalitionPartition, DependenceMatrix, EffortProfile, GameSpec, Outcome,
    WelfareWeights,
};
pub use lcp::{LcpInstance, LcpSolution, LemkeOutcome};
pub use matrix::SquareMatrix;
pub use matrix_analysis::{ClassificationReport, ExistenceVerdict, UniquenessVerdict};

/// Default numerical tolerance used throughout.
pub const DEFAULT_TOL: f64 = 1e-9;
