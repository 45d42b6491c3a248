//! Game documents: the JSON input format.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "n": 2,
//!   "edges": [{"from": 0, "to": 1, "weight": 0.5}, {"from": 1, "to": 0, "weight": "0.5"}],
//!   "benefit": {"family": "exponential", "params": {"saturation": 1.0}},
//!   "costs": [0.36787944117144233, 0.36787944117144233],
//!   "coalitions": [[0, 1]],
//!   "lambda": [1.0, 1.0]
//! }
//! ```
//!
//! An edge `{from: i, to: j, weight: w}` sets `g_ij = w`: agent `i`'s payoff
//! depends on agent `j`'s effort. Indices are 0-based. `benefit` is either a
//! single object shared by every agent or a list with one object per agent.

use std::collections::BTreeMap;

use netgood_core::{
    BenefitFunction, CoalitionPartition, DependenceMatrix, GameSpec, SquareMatrix, WelfareWeights,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Weight {
    Number(f64),
    Decimal(String),
}

impl Weight {
    pub fn value(&self) -> Result<f64, String> {
        match self {
            Weight::Number(v) => Ok(*v),
            Weight::Decimal(s) => s.trim().parse::<f64>().map_err(|e| format!("'{s}' is not a number: {e}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub weight: Weight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenefitDoc {
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BenefitSpec {
    Shared(BenefitDoc),
    PerAgent(Vec<BenefitDoc>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameDocument {
    pub schema_version: String,
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    pub benefit: BenefitSpec,
    pub costs: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalitions: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct LoadedGame {
    pub game: GameSpec,
    pub coalitions: Option<CoalitionPartition>,
    pub lambda: Option<WelfareWeights>,
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_document(text: &str) -> Result<GameDocument, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        schema(
            path,
            format!("{inner} (line {}, column {})", inner.line(), inner.column()),
        )
    })
}

fn benefit(doc: &BenefitDoc, path: &str) -> Result<BenefitFunction, CliError> {
    let expect = |key: &str| -> Result<f64, CliError> {
        if let Some(extra) = doc.params.keys().find(|k| k.as_str() != key) {
            return Err(schema(format!("{path}.params.{extra}"), format!("unknown parameter for {} family", doc.family)));
        }
        doc.params
            .get(key)
            .copied()
            .ok_or_else(|| schema(format!("{path}.params"), format!("missing parameter '{key}'")))
    };
    let made = match doc.family.as_str() {
        "exponential" => BenefitFunction::exponential(expect("saturation")?),
        "logarithmic" => BenefitFunction::logarithmic(expect("scale")?),
        other => {
            return Err(schema(
                format!("{path}.family"),
                format!("unknown family '{other}', expected 'exponential' or 'logarithmic'"),
            ))
        }
    };
    made.map_err(|e| schema(format!("{path}.params"), e.to_string()))
}

impl GameDocument {
    pub fn validate(&self) -> Result<LoadedGame, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(schema(
                "schema_version",
                format!("unsupported version '{}', expected '{SCHEMA_VERSION}'", self.schema_version),
            ));
        }
        let n = self.n;
        if n == 0 {
            return Err(schema("n", "at least one agent is required"));
        }

        let mut g = vec![0.0; n * n];
        let mut seen = vec![false; n * n];
        for (k, e) in self.edges.iter().enumerate() {
            let at = |field: &str| format!("edges[{k}].{field}");
            if e.from >= n {
                return Err(schema(at("from"), format!("index {} out of range for n = {n}", e.from)));
            }
            if e.to >= n {
                return Err(schema(at("to"), format!("index {} out of range for n = {n}", e.to)));
            }
            if e.from == e.to {
                return Err(schema(at("to"), format!("self-loop on agent {}", e.from)));
            }
            let w = e.weight.value().map_err(|m| schema(at("weight"), m))?;
            if !w.is_finite() {
                return Err(schema(at("weight"), "weight must be finite"));
            }
            let idx = e.from * n + e.to;
            if seen[idx] {
                return Err(schema(format!("edges[{k}]"), format!("duplicate edge ({}, {})", e.from, e.to)));
            }
            seen[idx] = true;
            g[idx] = w;
        }
        let g = SquareMatrix::new(n, g)
            .and_then(DependenceMatrix::new)
            .map_err(|e| schema("edges", e.to_string()))?;

        let benefits = match &self.benefit {
            BenefitSpec::Shared(b) => vec![benefit(b, "benefit")?; n],
            BenefitSpec::PerAgent(list) => {
                if list.len() != n {
                    return Err(schema("benefit", format!("expected {n} entries, found {}", list.len())));
                }
                list.iter()
                    .enumerate()
                    .map(|(i, b)| benefit(b, &format!("benefit[{i}]")))
                    .collect::<Result<_, _>>()?
            }
        };

        if self.costs.len() != n {
            return Err(schema("costs", format!("expected {n} entries, found {}", self.costs.len())));
        }
        if let Some(i) = self.costs.iter().position(|c| !(c.is_finite() && *c > 0.0)) {
            return Err(schema(format!("costs[{i}]"), "cost must be positive and finite"));
        }
        let game = GameSpec::new(g, benefits, self.costs.clone()).map_err(|e| schema("", e.to_string()))?;

        let coalitions = self
            .coalitions
            .as_ref()
            .map(|blocks| CoalitionPartition::new(n, blocks.clone()).map_err(|e| schema("coalitions", e.to_string())))
            .transpose()?;
        let lambda = self
            .lambda
            .as_ref()
            .map(|l| parse_lambda(l.clone(), n, "lambda"))
            .transpose()?;
        Ok(LoadedGame {
            game,
            coalitions,
            lambda,
        })
    }
}

pub fn parse_lambda(values: Vec<f64>, n: usize, path: &str) -> Result<WelfareWeights, CliError> {
    if values.len() != n {
        return Err(schema(path, format!("expected {n} weights, found {}", values.len())));
    }
    WelfareWeights::new(values).map_err(|e| schema(path, e.to_string()))
}

pub fn load(text: &str) -> Result<LoadedGame, CliError> {
    parse_document(text)?.validate()
}

/// Document for an existing game, with every agent given `benefit`.
pub fn document_for(game: &GameSpec) -> GameDocument {
    let g = game.dependence();
    GameDocument {
        schema_version: SCHEMA_VERSION.into(),
        n: game.n(),
        edges: g
            .edges()
            .map(|(from, to, w)| EdgeDoc {
                from,
                to,
                weight: Weight::Number(w),
            })
            .collect(),
        benefit: BenefitSpec::PerAgent(
            game.benefits()
                .iter()
                .map(|b| {
                    let (key, v) = match *b {
                        BenefitFunction::Exponential { saturation } => ("saturation", saturation),
                        BenefitFunction::Logarithmic { scale } => ("scale", scale),
                    };
                    BenefitDoc {
                        family: b.family().into(),
                        params: BTreeMap::from([(key.to_string(), v)]),
                    }
                })
                .collect(),
        ),
        costs: game.costs().to_vec(),
        coalitions: None,
        lambda: None,
    }
}
