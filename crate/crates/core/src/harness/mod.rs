//! Verification campaigns: each theorem id expands to a list of desk-scale
//! cases, every case is checked by the exact solver, by exhaustive strategy
//! validation, by an exhaustive predicate sweep, or (past every cap) by
//! random playouts. The method is recorded per case.

mod campaigns;
mod report;

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::GameError;
use crate::graph::GraphError;
use crate::resolving::ResolvingError;
use crate::strategy::StrategyError;

pub use report::{report, ReportFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactSolver,
    StrategyValidation,
    ExhaustivePredicate,
    RandomizedPlayouts,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactSolver => "exact-solver",
            Method::StrategyValidation => "strategy-validation",
            Method::ExhaustivePredicate => "exhaustive-predicate",
            Method::RandomizedPlayouts => "randomized-playouts",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationCase {
    pub theorem: String,
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub method: Method,
    /// Set exactly when the method runs a strategy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    pub passed: bool,
    pub millis: u64,
}

impl VerificationCase {
    /// `method`, with the strategy appended when there is one.
    pub fn method_label(&self) -> String {
        match &self.strategy {
            Some(s) => format!("{}:{s}", self.method.name()),
            None => self.method.name().to_string(),
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid harness config: {0}")]
    Config(String),
    #[error("{instance}: {message}")]
    Case { instance: String, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Resolving(#[from] ResolvingError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Caps, seed and corpora. Every field has a default, so an empty file is
/// a valid config.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    /// Largest order solved exactly.
    pub solver_cap: usize,
    /// Largest order on which strategies are validated exhaustively.
    pub validation_cap: usize,
    /// Seeds sampling and playouts.
    pub seed: u64,
    /// Games per start for the randomized tier.
    pub playouts: usize,
    pub heuristic_order: bool,
    pub corpora: Corpora,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Corpora {
    pub transversal_l: Vec<usize>,
    pub equivalence: Vec<String>,
    pub path_bases: Vec<String>,
    pub path_k: Vec<usize>,
    pub k1_path_k: Vec<usize>,
    pub cycle_bases: Vec<String>,
    pub cycle_k: Vec<usize>,
    /// Second factors for the restriction and sandwich campaigns.
    pub fibers: Vec<String>,
    pub pairing: Vec<String>,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            solver_cap: crate::game::DEFAULT_SOLVER_CAP,
            validation_cap: 24,
            seed: 1,
            playouts: 200,
            heuristic_order: false,
            corpora: Corpora::default(),
        }
    }
}

fn strings(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

impl Default for Corpora {
    fn default() -> Self {
        Corpora {
            transversal_l: vec![3, 4, 5],
            equivalence: strings(&[
                "path(2)",
                "path(3)",
                "path(4)",
                "path(5)",
                "path(6)",
                "cycle(3)",
                "cycle(4)",
                "cycle(5)",
                "cycle(6)",
                "paw",
                "complete(4)",
            ]),
            path_bases: strings(&["path(2)", "path(3)"]),
            path_k: (1..=7).collect(),
            k1_path_k: (2..=8).collect(),
            cycle_bases: strings(&["k1", "path(2)"]),
            cycle_k: (3..=7).collect(),
            fibers: strings(&[
                "path(2)", "path(3)", "path(4)", "cycle(4)", "cycle(5)", "paw",
            ]),
            pairing: strings(&[
                "path(2)",
                "path(5)",
                "cycle(4)",
                "cycle(5)",
                "cycle(6)",
                "complete(3)",
                "paw",
                "star(3)",
                "corona(path(2),path(1))",
                "corona(path(2),path(2))",
                "corona(path(3),path(1))",
                "corona(path(2),path(4))",
            ]),
        }
    }
}

impl HarnessConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Theorem {
    pub id: &'static str,
    pub claim: &'static str,
    /// Part of the campaign run by [`verify_default`].
    pub default: bool,
}

const fn theorem(id: &'static str, claim: &'static str, default: bool) -> Theorem {
    Theorem { id, claim, default }
}

const THEOREMS: &[Theorem] = &[
    theorem("transversal-lemma", "one vertex from each block {2i-1, 2i} is strictly locating in P_2l and C_2l for l ≥ 3", true),
    theorem("k1-equivalence", "S ⊆ V(H) resolves K1 ⊙ H iff S is strictly locating in H", true),
    theorem("restriction", "S ∩ V(H_j) resolves H_j; for diam(H) ≤ 2 unions of per-copy resolving sets resolve G ⊙ H", true),
    theorem("pairing", "a pairing resolving set forces outcome R", true),
    theorem("paths", "o(G ⊙ P_k) = S iff k = 5, otherwise R (n(G) ≥ 2)", true),
    theorem("paths-k11", "the paths claim at k = 11 (refuted: Spoiler wins)", false),
    theorem("k1-paths", "o(K1 ⊙ P_k) = N for k ∈ {2, 5}, otherwise R", true),
    theorem("cycles", "o(G ⊙ C_k) = S iff k = 3, otherwise R", true),
    theorem("paw", "o(paw) = R but o(K1 ⊙ paw) = N", true),
    theorem("spoiler-copy", "o(H) ∈ {N, S} implies o(G ⊙ H) = S", true),
    theorem("sufficient-conditions", "o(H) = R with diam(H) ≤ 2, or o(K1 ⊙ H) = R, implies o(G ⊙ H) = R", true),
    theorem("move-count", "diam(H) = 2, o(H) = R: R_MB(G⊙H) ≤ R'_MB(G⊙H) ≤ n(G)R'_MB(H), with equality n(G)R_MB(H) when R_MB(H) = R'_MB(H)", true),
    theorem("k1-diam2", "diam(H) = 2, Δ(H) ≤ n(H) - 2, o(H) = R: o(K1 ⊙ H) = R with equal R_MB and R'_MB", true),
    theorem("sandwich", "o(G ⊙ H) = R, diam(H) ≤ 2: n(G)R_MB(H) ≤ R_MB(G ⊙ H) ≤ R_MB(H) + (n(G) - 1)R'_MB(H)", true),
    theorem("invariants", "R'_MB ≥ R_MB ≥ dim when o = R; S_MB ≥ S'_MB when o = S; never a second-player win in both games; corona distance law", true),
];

pub fn theorems() -> &'static [Theorem] {
    THEOREMS
}

/// One unit of work: the checked facts of a case without theorem and time.
pub(crate) struct Check {
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub method: Method,
    pub strategy: Option<String>,
    pub passed: bool,
}

pub(crate) type Job =
    Box<dyn Fn(&HarnessConfig, u64) -> Result<Vec<Check>, HarnessError> + Send + Sync>;

/// Runs every case of one theorem. Cases run in parallel and come back in
/// a fixed order.
pub fn verify(id: &str, config: &HarnessConfig) -> Result<Vec<VerificationCase>, HarnessError> {
    let theorem = THEOREMS
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| HarnessError::UnknownTheorem(id.to_string()))?;
    let jobs = campaigns::jobs(theorem.id, config)?;
    let results: Vec<Result<Vec<VerificationCase>, HarnessError>> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| {
            let start = Instant::now();
            let seed = config
                .seed
                .wrapping_mul(0x9e37_79b9_7f4a_7c15)
                .wrapping_add(i as u64);
            let checks = job(config, seed)?;
            let millis = start.elapsed().as_millis() as u64;
            let each = millis / checks.len().max(1) as u64;
            Ok(checks
                .into_iter()
                .map(|c| VerificationCase {
                    theorem: theorem.id.to_string(),
                    instance: c.instance,
                    expected: c.expected,
                    got: c.got,
                    method: c.method,
                    strategy: c.strategy,
                    passed: c.passed,
                    millis: each,
                })
                .collect())
        })
        .collect();
    let mut cases = Vec::new();
    for r in results {
        cases.extend(r?);
    }
    Ok(cases)
}

/// Every theorem marked `default`, in catalog order.
pub fn verify_default(config: &HarnessConfig) -> Result<Vec<VerificationCase>, HarnessError> {
    let mut cases = Vec::new();
    for t in THEOREMS.iter().filter(|t| t.default) {
        cases.extend(verify(t.id, config)?);
    }
    Ok(cases)
}

pub fn all_passed(cases: &[VerificationCase]) -> bool {
    cases.iter().all(|c| c.passed)
}

/// Zeroes the timings so reports can be compared byte for byte.
pub fn strip_timings(cases: &mut [VerificationCase]) {
    for c in cases {
        c.millis = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_default() {
        assert_eq!(
            HarnessConfig::from_toml("").unwrap(),
            HarnessConfig::default()
        );
        let c = HarnessConfig::from_toml("solver_cap = 12\n[corpora]\npath_k = [1, 2]\n").unwrap();
        assert_eq!(c.solver_cap, 12);
        assert_eq!(c.corpora.path_k, vec![1, 2]);
        assert_eq!(c.corpora.cycle_k, Corpora::default().cycle_k);
        assert!(HarnessConfig::from_toml("solver_kap = 3").is_err());
    }

    #[test]
    fn config_round_trips() {
        let c = HarnessConfig::default();
        assert_eq!(HarnessConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn unknown_theorem() {
        assert!(matches!(
            verify("nope", &HarnessConfig::default()),
            Err(HarnessError::UnknownTheorem(_))
        ));
    }

    #[test]
    fn theorem_ids_are_unique() {
        let mut ids: Vec<_> = THEOREMS.iter().map(|t| t.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), THEOREMS.len());
    }
}
