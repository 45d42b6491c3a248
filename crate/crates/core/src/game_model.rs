//! Public-good provision games on a weighted dependence network.
//!
//! Agent `i` earns `b_i(x_i + Σ_j g_ij x_j) − c_i x_i`. Every target vector
//! below (standalone, Pareto, semi-cooperative) is the effort level at which
//! an agent's marginal benefit meets a suitably modified marginal cost; the
//! effort profiles themselves are found by the `equilibrium` module.

use crate::error::{AgentValue, Error, Result};
use crate::lcp::LcpInstance;
use crate::matrix::{self, SquareMatrix};

/// Dependence matrix `G`: row `i` lists whose efforts enter agent `i`'s payoff.
///
/// Positive weights are substitutes, negative weights complements. The
/// diagonal must be exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DependenceMatrix {
    g: SquareMatrix,
}

impl DependenceMatrix {
    pub fn new(g: SquareMatrix) -> Result<Self> {
        if let Some(i) = (0..g.n()).find(|&i| g[(i, i)] != 0.0) {
            return Err(Error::InvalidGame(format!(
                "dependence matrix has nonzero diagonal entry at agent {i}"
            )));
        }
        Ok(Self { g })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::new(SquareMatrix::from_rows(rows)?)
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            g: SquareMatrix::zeros(n),
        }
    }

    /// Two agents depending on each other with weights `g_01 = a`, `g_10 = b`.
    pub fn pair(a: f64, b: f64) -> Result<Self> {
        Self::from_rows(&[[0.0, a], [b, 0.0]])
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.g
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.g[(i, j)]
    }

    /// Copy with `g_ij` replaced.
    pub fn with_weight(&self, i: usize, j: usize, weight: f64) -> Result<Self> {
        let n = self.n();
        if i >= n || j >= n {
            return Err(Error::InvalidGame(format!("edge ({i}, {j}) out of range for {n} agents")));
        }
        if i == j {
            return Err(Error::InvalidGame("self-dependence is not allowed".into()));
        }
        if !weight.is_finite() {
            return Err(Error::InvalidGame("edge weight must be finite".into()));
        }
        let mut g = self.g.clone();
        g[(i, j)] = weight;
        Ok(Self { g })
    }

    /// `I + G`.
    pub fn identity_plus(&self) -> SquareMatrix {
        self.g.identity_plus(1.0)
    }

    pub fn is_substitutes(&self) -> bool {
        self.g.as_slice().iter().all(|&v| v >= 0.0)
    }

    pub fn is_complements(&self) -> bool {
        self.g.as_slice().iter().all(|&v| v <= 0.0)
    }

    /// `G_C`: every edge between different coalitions removed.
    pub fn coalition_modified(&self, partition: &CoalitionPartition) -> Self {
        let n = self.n();
        let mut g = self.g.clone();
        for k in 0..n {
            for l in 0..n {
                if partition.block_of(k) != partition.block_of(l) {
                    g[(k, l)] = 0.0;
                }
            }
        }
        Self { g }
    }

    /// Edges `(i, j, g_ij)` with nonzero weight, row-major.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.g.off_diagonal().filter(|&(_, _, v)| v != 0.0)
    }
}

/// Concave benefit families with closed-form derivative inverses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenefitFunction {
    /// `s·(1 − exp(−y/s))`, defined for every real `y`.
    Exponential { saturation: f64 },
    /// `a·ln(1 + y)`, defined for `y > −1`.
    Logarithmic { scale: f64 },
}

impl BenefitFunction {
    pub fn exponential(saturation: f64) -> Result<Self> {
        if !(saturation.is_finite() && saturation > 0.0) {
            return Err(Error::InvalidGame("exponential saturation must be positive".into()));
        }
        Ok(Self::Exponential { saturation })
    }

    pub fn logarithmic(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidGame("logarithmic scale must be positive".into()));
        }
        Ok(Self::Logarithmic { scale })
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Exponential { .. } => "exponential",
            Self::Logarithmic { .. } => "logarithmic",
        }
    }

    /// `b(y)`, or `None` outside the family's domain.
    pub fn value(&self, y: f64) -> Option<f64> {
        match *self {
            Self::Exponential { saturation: s } => Some(-s * (-y / s).exp_m1()),
            Self::Logarithmic { scale: a } => (y > -1.0).then(|| a * y.ln_1p()),
        }
    }

    /// `b′(y)`, or `None` outside the family's domain.
    pub fn derivative(&self, y: f64) -> Option<f64> {
        match *self {
            Self::Exponential { saturation: s } => Some((-y / s).exp()),
            Self::Logarithmic { scale: a } => (y > -1.0).then(|| a / (1.0 + y)),
        }
    }

    /// `(b′)⁻¹(m)`: the aggregate effort at which marginal benefit equals `m`.
    /// Both families map onto `(0, ∞)`, so this is `None` exactly when `m ≤ 0`.
    pub fn derivative_inverse(&self, m: f64) -> Option<f64> {
        if !(m.is_finite() && m > 0.0) {
            return None;
        }
        match *self {
            Self::Exponential { saturation: s } => Some(-s * m.ln()),
            Self::Logarithmic { scale: a } => Some(a / m - 1.0),
        }
    }
}

/// Coalitions: disjoint, nonempty blocks covering every agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoalitionPartition {
    blocks: Vec<Vec<usize>>,
    owner: Vec<usize>,
}

impl CoalitionPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::InvalidPartition(format!("agent {i} out of range for {n} agents")));
                }
                if owner[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("agent {i} appears in more than one block")));
                }
                owner[i] = b;
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("agent {i} is not in any block")));
        }
        Ok(Self { blocks, owner })
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            blocks: (0..n).map(|i| vec![i]).collect(),
            owner: (0..n).collect(),
        }
    }

    pub fn grand(n: usize) -> Self {
        Self {
            blocks: vec![(0..n).collect()],
            owner: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.owner.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, agent: usize) -> usize {
        self.owner[agent]
    }
}

/// Strictly positive Pareto weights `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WelfareWeights(Vec<f64>);

impl WelfareWeights {
    pub fn new(lambda: Vec<f64>) -> Result<Self> {
        if let Some(i) = lambda.iter().position(|&l| !(l.is_finite() && l > 0.0)) {
            return Err(Error::InvalidWeights(format!(
                "weight of agent {i} must be strictly positive, got {}",
                lambda[i]
            )));
        }
        Ok(Self(lambda))
    }

    /// All-ones weights, whose Pareto profile is the social optimum.
    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Λ⁻¹ Gᵀ Λ`, entry `(i, j)` being `(λ_j / λ_i)·g_ji`.
    pub fn weighted_influence(&self, g: &SquareMatrix) -> SquareMatrix {
        let n = g.n();
        let mut out = SquareMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.0[j] / self.0[i] * g[(j, i)];
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Nash,
    Pareto(WelfareWeights),
    SemiCoop(CoalitionPartition, WelfareWeights),
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Nash => "nash",
            Outcome::Pareto(_) => "pareto",
            Outcome::SemiCoop(..) => "coalition",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffortProfile {
    pub x: Vec<f64>,
    pub outcome: Outcome,
}

/// Dependence network plus per-agent benefit functions and marginal costs.
#[derive(Debug, Clone, PartialEq)]
pub struct GameSpec {
    g: DependenceMatrix,
    benefits: Vec<BenefitFunction>,
    costs: Vec<f64>,
}

impl GameSpec {
    pub fn new(g: DependenceMatrix, benefits: Vec<BenefitFunction>, costs: Vec<f64>) -> Result<Self> {
        let n = g.n();
        if benefits.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: benefits.len(),
            });
        }
        if costs.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: costs.len(),
            });
        }
        if let Some(i) = costs.iter().position(|&c| !(c.is_finite() && c > 0.0)) {
            return Err(Error::InvalidGame(format!(
                "marginal cost of agent {i} must be positive, got {}",
                costs[i]
            )));
        }
        Ok(Self { g, benefits, costs })
    }

    /// Every agent with the same benefit function and cost.
    pub fn uniform(g: DependenceMatrix, benefit: BenefitFunction, cost: f64) -> Result<Self> {
        let n = g.n();
        Self::new(g, vec![benefit; n], vec![cost; n])
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn dependence(&self) -> &DependenceMatrix {
        &self.g
    }

    pub fn benefits(&self) -> &[BenefitFunction] {
        &self.benefits
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    /// Same agents on a different network.
    pub fn with_dependence(&self, g: DependenceMatrix) -> Result<Self> {
        Self::new(g, self.benefits.clone(), self.costs.clone())
    }

    /// Aggregate effort experienced by each agent, `(I + G) x`.
    pub fn aggregate(&self, x: &[f64]) -> Vec<f64> {
        let gx = self.g.matrix().mul_vec(x);
        x.iter().zip(gx).map(|(a, b)| a + b).collect()
    }

    pub fn utility(&self, x: &[f64], i: usize) -> Result<f64> {
        self.check_len(x)?;
        let y = x[i] + (0..self.n()).map(|j| self.g.weight(i, j) * x[j]).sum::<f64>();
        let b = self.benefits[i]
            .value(y)
            .ok_or(Error::DomainError { agent: i, aggregate: y })?;
        Ok(b - self.costs[i] * x[i])
    }

    /// `q̄`, with `b′_i(q̄_i) = c_i`.
    pub fn standalone_target(&self) -> Result<Vec<f64>> {
        self.invert_marginals(&self.costs).map_err(Error::CostOutOfRange)
    }

    pub fn best_response(&self, i: usize, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        let q = self.benefits[i]
            .derivative_inverse(self.costs[i])
            .ok_or_else(|| Error::CostOutOfRange(vec![AgentValue { agent: i, value: self.costs[i] }]))?;
        let pressure: f64 = (0..self.n())
            .filter(|&j| j != i)
            .map(|j| self.g.weight(i, j) * x[j])
            .sum();
        Ok((q - pressure).max(0.0))
    }

    /// Nash equilibria are the solutions of `LCP(I + G, −q̄)`.
    pub fn nash_lcp(&self) -> Result<LcpInstance> {
        let q: Vec<f64> = self.standalone_target()?.into_iter().map(|v| -v).collect();
        LcpInstance::new(self.g.identity_plus(), q)
    }

    /// `(I + Λ⁻¹ G_effᵀ Λ)⁻¹ c`: marginal costs as perceived once influence on
    /// others (weighted by `λ`) is internalized.
    pub fn perceived_costs(&self, weights: &WelfareWeights, g_effective: &DependenceMatrix) -> Result<Vec<f64>> {
        if weights.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: weights.len(),
            });
        }
        if g_effective.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: g_effective.n(),
            });
        }
        let a = weights.weighted_influence(g_effective.matrix()).identity_plus(1.0);
        matrix::solve(&a, &self.costs)
    }

    /// `q^λ`: marginal benefit equals perceived cost on the full network.
    pub fn pareto_target(&self, weights: &WelfareWeights) -> Result<Vec<f64>> {
        let perceived = self.perceived_costs(weights, &self.g)?;
        self.invert_marginals(&perceived).map_err(Error::PerceivedCostOutOfRange)
    }

    /// `q^{C,λ}`: as [`GameSpec::pareto_target`] on the coalition-modified network.
    pub fn semicoop_target(&self, partition: &CoalitionPartition, weights: &WelfareWeights) -> Result<Vec<f64>> {
        if partition.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: partition.n(),
            });
        }
        let gc = self.g.coalition_modified(partition);
        let perceived = self.perceived_costs(weights, &gc)?;
        self.invert_marginals(&perceived).map_err(Error::PerceivedCostOutOfRange)
    }

    /// First-order condition of `max Σ λ_k u_k` at `x`, one entry per agent.
    /// Zero at an interior Pareto profile.
    pub fn pareto_foc_residual(&self, weights: &WelfareWeights, x: &[f64]) -> Result<Vec<f64>> {
        self.foc_residual(weights, &self.g, x)
    }

    /// First-order condition of each coalition's weighted welfare in its own
    /// members' efforts: spillovers are only internalized within a block.
    pub fn coalition_foc_residual(
        &self,
        partition: &CoalitionPartition,
        weights: &WelfareWeights,
        x: &[f64],
    ) -> Result<Vec<f64>> {
        self.foc_residual(weights, &self.g.coalition_modified(partition), x)
    }

    fn foc_residual(&self, weights: &WelfareWeights, internalized: &DependenceMatrix, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x)?;
        if weights.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: weights.len(),
            });
        }
        let n = self.n();
        let lam = weights.as_slice();
        let agg = self.aggregate(x);
        let marginal = (0..n)
            .map(|k| {
                self.benefits[k]
                    .derivative(agg[k])
                    .ok_or(Error::DomainError { agent: k, aggregate: agg[k] })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok((0..n)
            .map(|i| {
                let spill: f64 = (0..n)
                    .filter(|&k| k != i)
                    .map(|k| lam[k] / lam[i] * internalized.weight(k, i) * marginal[k])
                    .sum();
                marginal[i] + spill - self.costs[i]
            })
            .collect())
    }

    fn invert_marginals(&self, marginal: &[f64]) -> std::result::Result<Vec<f64>, Vec<AgentValue>> {
        let mut bad = Vec::new();
        let mut out = Vec::with_capacity(marginal.len());
        for (i, (&m, b)) in marginal.iter().zip(&self.benefits).enumerate() {
            match b.derivative_inverse(m) {
                Some(q) => out.push(q),
                None => {
                    bad.push(AgentValue { agent: i, value: m });
                    out.push(f64::NAN);
                }
            }
        }
        if bad.is_empty() {
            Ok(out)
        } else {
            Err(bad)
        }
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn exp1() -> BenefitFunction {
        BenefitFunction::exponential(1.0).unwrap()
    }

    fn two_agent(g: f64) -> GameSpec {
        GameSpec::uniform(DependenceMatrix::pair(g, g).unwrap(), exp1(), 1.0 / E).unwrap()
    }

    /// Center 0 depends on each leaf with weight `g_out`; leaves depend on the center with `g_in`.
    fn star(g_in: f64, g_out: f64) -> GameSpec {
        let g = DependenceMatrix::from_rows(&[
            [0.0, g_out, g_out, g_out],
            [g_in, 0.0, 0.0, 0.0],
            [g_in, 0.0, 0.0, 0.0],
            [g_in, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        GameSpec::uniform(g, exp1(), 1.0 / E).unwrap()
    }

    #[test]
    fn rejects_nonzero_diagonal() {
        assert!(DependenceMatrix::from_rows(&[[0.1, 0.0], [0.0, 0.0]]).is_err());
    }

    #[test]
    fn utility_examples() {
        let game = two_agent(0.5);
        let x = [2.0 / 3.0, 2.0 / 3.0];
        // aggregate = 2/3 + 1/3 = 1
        let want = 1.0 - 1.0 / E - (2.0 / 3.0) / E;
        for i in 0..2 {
            assert!((game.utility(&x, i).unwrap() - want).abs() < 1e-15);
        }
        assert_eq!(game.utility(&[0.0, 0.0], 0).unwrap(), 0.0);

        let single = GameSpec::uniform(DependenceMatrix::zeros(1), exp1(), 1.0 / E).unwrap();
        assert!((single.utility(&[1.0], 0).unwrap() - (1.0 - 2.0 / E)).abs() < 1e-15);
    }

    #[test]
    fn logarithmic_domain_error() {
        let g = DependenceMatrix::pair(-2.0, -2.0).unwrap();
        let game = GameSpec::uniform(g, BenefitFunction::logarithmic(1.0).unwrap(), 0.5).unwrap();
        assert!(matches!(game.utility(&[0.0, 1.0], 0), Err(Error::DomainError { agent: 0, .. })));
        assert!(game.utility(&[1.0, 0.0], 0).is_ok());
    }

    #[test]
    fn standalone_target_examples() {
        let b = exp1();
        assert!((b.derivative_inverse(1.0 / E).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(b.derivative_inverse(1.0).unwrap(), 0.0);
        let log = BenefitFunction::logarithmic(2.0).unwrap();
        assert_eq!(log.derivative_inverse(1.0).unwrap(), 1.0);
        assert!(b.derivative_inverse(0.0).is_none());
        assert!(b.derivative_inverse(-0.1).is_none());
    }

    #[test]
    fn best_response_examples() {
        let game = two_agent(0.5);
        assert!((game.best_response(0, &[0.0, 2.0 / 3.0]).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((game.best_response(1, &[0.0, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        let game = two_agent(2.0);
        assert_eq!(game.best_response(0, &[0.0, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn nash_lcp_examples() {
        let lcp = two_agent(0.5).nash_lcp().unwrap();
        assert_eq!(lcp.m(), &SquareMatrix::from_rows(&[[1.0, 0.5], [0.5, 1.0]]).unwrap());
        assert!(lcp.q().iter().all(|&v| (v + 1.0).abs() < 1e-15));

        let lcp = two_agent(-2.0).nash_lcp().unwrap();
        assert_eq!(lcp.m(), &SquareMatrix::from_rows(&[[1.0, -2.0], [-2.0, 1.0]]).unwrap());

        let g0 = GameSpec::uniform(DependenceMatrix::zeros(3), exp1(), 1.0 / E).unwrap();
        let lcp = g0.nash_lcp().unwrap();
        assert_eq!(lcp.m(), &SquareMatrix::identity(3));
    }

    #[test]
    fn perceived_costs_star() {
        let c = 1.0 / E;
        for (g_in, want) in [(0.2, [0.17, 0.33, 0.33, 0.33]), (0.3, [0.04, 0.36, 0.36, 0.36])] {
            let game = star(g_in, 0.2);
            let pc = game
                .perceived_costs(&WelfareWeights::ones(4), game.dependence())
                .unwrap();
            // Closed form for the star: y_center = c(1 − 3 g_in)/(1 − 3 g_in g_out),
            // y_leaf = c − g_out y_center.
            let center = c * (1.0 - 3.0 * g_in) / (1.0 - 3.0 * g_in * 0.2);
            assert!((pc[0] - center).abs() < 1e-15);
            for &v in &pc[1..] {
                assert!((v - (c - 0.2 * center)).abs() < 1e-15);
            }
            for (v, w) in pc.iter().zip(want) {
                assert!(((v * 100.0).round() / 100.0 - w).abs() < 1e-12, "{v} vs {w}");
            }
        }
    }

    #[test]
    fn perceived_costs_without_network_are_costs() {
        let game = GameSpec::new(
            DependenceMatrix::zeros(3),
            vec![exp1(); 3],
            vec![0.2, 0.5, 0.9],
        )
        .unwrap();
        let w = WelfareWeights::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(game.perceived_costs(&w, game.dependence()).unwrap(), vec![0.2, 0.5, 0.9]);
        assert_eq!(game.pareto_target(&w).unwrap(), game.standalone_target().unwrap());
    }

    #[test]
    fn pareto_target_examples() {
        let game = star(0.2, 0.2);
        let q = game.pareto_target(&WelfareWeights::ones(4)).unwrap();
        let center = (1.0 / E) * 0.4 / 0.88;
        assert!((q[0] + center.ln()).abs() < 1e-14);
        assert!((q[0] - 1.788).abs() < 1e-3);

        let q = two_agent(0.5).pareto_target(&WelfareWeights::ones(2)).unwrap();
        for v in q {
            assert!((v - (1.0 + 1.5f64.ln())).abs() < 1e-14);
        }
    }

    #[test]
    fn pareto_target_out_of_range() {
        // Strong influence pushes a perceived cost negative.
        let game = star(0.5, 0.2);
        let err = game.pareto_target(&WelfareWeights::ones(4)).unwrap_err();
        match err {
            Error::PerceivedCostOutOfRange(agents) => assert_eq!(agents[0].agent, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn coalition_modified_examples() {
        let game = star(0.2, 0.2);
        let g = game.dependence();
        assert_eq!(&g.coalition_modified(&CoalitionPartition::grand(4)), g);
        assert_eq!(g.coalition_modified(&CoalitionPartition::singletons(4)), DependenceMatrix::zeros(4));
        let split = CoalitionPartition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(g.coalition_modified(&split), DependenceMatrix::zeros(4));

        let split = CoalitionPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let gc = g.coalition_modified(&split);
        assert_eq!(gc.weight(0, 1), 0.2);
        assert_eq!(gc.weight(1, 0), 0.2);
        assert_eq!(gc.weight(0, 2), 0.0);
        assert_eq!(gc.weight(2, 0), 0.0);
    }

    #[test]
    fn semicoop_target_degenerates() {
        let game = star(0.2, 0.2);
        let w = WelfareWeights::ones(4);
        let qbar = game.standalone_target().unwrap();
        assert_eq!(game.semicoop_target(&CoalitionPartition::singletons(4), &w).unwrap(), qbar);
        assert_eq!(
            game.semicoop_target(&CoalitionPartition::grand(4), &w).unwrap(),
            game.pareto_target(&w).unwrap()
        );
        let split = CoalitionPartition::new(4, vec![vec![0], vec![1, 2, 3]]).unwrap();
        assert_eq!(game.semicoop_target(&split, &w).unwrap(), qbar);
    }

    #[test]
    fn partition_validation() {
        assert!(CoalitionPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(CoalitionPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(CoalitionPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(CoalitionPartition::new(3, vec![vec![0, 1, 3], vec![2]]).is_err());
    }

    #[test]
    fn foc_residual_examples() {
        let game = GameSpec::uniform(DependenceMatrix::zeros(2), exp1(), 1.0 / E).unwrap();
        let qbar = game.standalone_target().unwrap();
        let r = game.pareto_foc_residual(&WelfareWeights::new(vec![1.0, 3.0]).unwrap(), &qbar).unwrap();
        assert!(r.iter().all(|v| v.abs() < 1e-15));

        let game = two_agent(0.5);
        let r = game.pareto_foc_residual(&WelfareWeights::ones(2), &[0.0, 0.0]).unwrap();
        for v in r {
            assert!((v - (1.5 - 1.0 / E)).abs() < 1e-15);
        }
    }

    #[test]
    fn game_validation() {
        let g = DependenceMatrix::zeros(2);
        assert!(GameSpec::new(g.clone(), vec![exp1(); 2], vec![1.0, 0.0]).is_err());
        assert!(GameSpec::new(g.clone(), vec![exp1(); 1], vec![1.0, 1.0]).is_err());
        assert!(WelfareWeights::new(vec![1.0, 0.0]).is_err());
        assert!(g.with_weight(0, 0, 1.0).is_err());
    }
}
