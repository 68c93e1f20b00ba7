//! Verification runs: theorem loops over graph streams, the lemma suites,
//! and their JSON reports.

pub mod enumerate;
pub mod lemmas;
pub mod sample;
pub mod theorem;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::excess::{ExcessError, MAX_EXACT_ORDER};
use crate::extremal::ExtremalError;
use crate::graph::Graph;
use crate::iso::{is_isomorphic, MAX_ISO_ORDER};
use crate::poly::PolyError;
use crate::spectral::SpectralError;

pub use lemmas::{verify_lemma_suite, LemmaOutcome, LemmaSuiteConfig, LemmaSuiteReport};
pub use theorem::{verify_theorem, verify_theorem_on, Counts, Margins, TheoremReport, VerificationRecord};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;
pub const EXIT_SCOPE: i32 = 4;

/// Largest order for exhaustive labelled enumeration (`2^21` graphs at 7).
pub const MAX_EXHAUSTIVE_ORDER: usize = 7;

/// Default filter slack: graphs with `ρ(G) ≥ ρ(G★) − 1e-9` are tested.
pub const DEFAULT_FILTER_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Scope(String),
    #[error("input line {line}: {message}")]
    Input { line: usize, message: String },
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Excess(ExcessError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Extremal(ExtremalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl From<ExcessError> for HarnessError {
    fn from(e: ExcessError) -> Self {
        match e {
            ExcessError::Scope { .. } => HarnessError::Scope(e.to_string()),
            e => HarnessError::Excess(e),
        }
    }
}

impl From<ExtremalError> for HarnessError {
    fn from(e: ExtremalError) -> Self {
        match e {
            ExtremalError::Excess(e) => e.into(),
            e => HarnessError::Extremal(e),
        }
    }
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Input { .. } => EXIT_USAGE,
            HarnessError::Scope(_) => EXIT_SCOPE,
            HarnessError::Excess(_) | HarnessError::Extremal(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

/// Where the graphs of a theorem run come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// All `2^(n(n−1)/2)` labelled graphs, by pair bitmask.
    ExhaustiveLabeled,
    /// graph6 lines supplied by the caller.
    Graph6Stream,
    /// Seeded `G(n, p)` draws, kept when connected.
    RandomSample,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub k: usize,
    pub b: usize,
    pub mode: Mode,
    /// Slack on the spectral filter `ρ(G) ≥ ρ(G★) − filter_tol`.
    pub filter_tol: f64,
    /// With the filter off every connected graph gets the excess test
    /// (control runs).
    pub spectral_filter: bool,
    /// Connected samples drawn in random-sample mode.
    pub samples: usize,
    pub seed: u64,
    /// Rayon worker count; 0 uses the rayon default. Not part of the report.
    #[serde(skip)]
    pub workers: usize,
    /// Record wall-clock time in the report. Off by default so reports are
    /// byte-identical across runs.
    #[serde(skip)]
    pub timing: bool,
}

impl RunConfig {
    pub fn new(n: usize, k: usize, b: usize, mode: Mode) -> Self {
        RunConfig {
            n,
            k,
            b,
            mode,
            filter_tol: DEFAULT_FILTER_TOL,
            spectral_filter: true,
            samples: 1000,
            seed: 0,
            workers: 0,
            timing: false,
        }
    }

    /// Checks the theorem hypotheses and the scope of the chosen mode.
    pub fn validate(&self) -> Result<(), HarnessError> {
        let RunConfig { n, k, b, .. } = *self;
        if k < 5.max(b + 3) {
            return Err(HarnessError::Usage(format!(
                "need k >= max(5, b+3), got k = {k}, b = {b}"
            )));
        }
        if (b, k) == (2, 5) {
            return Err(HarnessError::Usage("(b, k) = (2, 5) is excluded".into()));
        }
        if n < k + b + 2 {
            return Err(HarnessError::Usage(format!(
                "need n >= k+b+2 = {}, got n = {n}",
                k + b + 2
            )));
        }
        if self.filter_tol.is_nan() || self.filter_tol < 0.0 {
            return Err(HarnessError::Usage(format!(
                "filter tolerance must be >= 0, got {}",
                self.filter_tol
            )));
        }
        if self.mode == Mode::ExhaustiveLabeled && n > MAX_EXHAUSTIVE_ORDER {
            return Err(HarnessError::Scope(format!(
                "exhaustive-labeled mode needs n <= {MAX_EXHAUSTIVE_ORDER}, got {n}; use a graph6 stream"
            )));
        }
        if n > MAX_EXACT_ORDER {
            return Err(HarnessError::Scope(format!(
                "excess search needs n <= {MAX_EXACT_ORDER}, got {n}"
            )));
        }
        Ok(())
    }
}

pub(crate) fn thread_pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))
}

/// Recognises `K_1 ∨ (K_c ∪ (k+b)K_1)` with `c = n−k−b−1 ≥ 1` directly:
/// some vertex is universal and deleting it leaves a clique on `c`
/// vertices plus `k+b` isolated ones.
pub fn is_gstar_shaped(g: &Graph, k: usize, b: usize) -> bool {
    let n = g.order();
    if n < k + b + 2 {
        return false;
    }
    let c = n - k - b - 1;
    (0..n).filter(|&h| g.degree(h) == n - 1).any(|h| {
        let rest = g.vertices().difference(crate::graph::VertexSet::singleton(h));
        let comps = g.components_within(rest);
        let isolated = comps.iter().filter(|s| s.len() == 1).count();
        let big: Vec<_> = comps.iter().filter(|s| s.len() > 1).collect();
        let clique_ok = match big.as_slice() {
            [] => c == 1,
            [cell] => cell.len() == c && cell.iter().all(|v| g.neighbors(v).intersection(**cell).len() == c - 1),
            _ => false,
        };
        clique_ok && isolated == if c == 1 { k + b + 1 } else { k + b }
    })
}

/// Isomorphism to `G★(n, k, b)`: backtracking up to the isomorphism scope,
/// the structural recogniser above it.
pub fn is_iso_to_gstar(g: &Graph, gstar: &Graph, k: usize, b: usize) -> bool {
    if g.order() <= MAX_ISO_ORDER {
        is_isomorphic(g, gstar).unwrap_or(false)
    } else {
        is_gstar_shaped(g, k, b)
    }
}
