use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Per-agent detail for a marginal cost that no finite effort level can match.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentValue {
    pub agent: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} exceeds the enumeration cap of {cap}")]
    DimensionTooLarge { n: usize, cap: usize },

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    ConvergenceFailure { iterations: usize },

    #[error("linear system is numerically singular (reciprocal condition {rcond:e})")]
    SingularSystem { rcond: f64 },

    #[error("complementary pivoting exceeded {pivots} pivots")]
    CycleDetected { pivots: usize },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("marginal cost outside the range of the benefit derivative for agents {}", agents_list(.0))]
    CostOutOfRange(Vec<AgentValue>),

    #[error("perceived cost admits no interior target for agents {}", agents_list(.0))]
    PerceivedCostOutOfRange(Vec<AgentValue>),

    #[error("benefit function of agent {agent} is undefined at aggregate effort {aggregate}")]
    DomainError { agent: usize, aggregate: f64 },

    #[error("invalid coalition partition: {0}")]
    InvalidPartition(String),

    #[error("invalid welfare weights: {0}")]
    InvalidWeights(String),

    #[error("profile is not interior: agent {agent} has slack {slack:e}")]
    NotInterior { agent: usize, slack: f64 },

    #[error("no effort profile found: {0}")]
    NoProfile(String),
}

fn agents_list(items: &[AgentValue]) -> String {
    items
        .iter()
        .map(|a| format!("{} ({})", a.agent, a.value))
        .collect::<Vec<_>>()
        .join(", ")
}
