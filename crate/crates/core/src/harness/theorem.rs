//! The theorem loop: every connected graph whose spectral radius reaches
//! `ρ(G★)` must have a spanning tree with `te(T, k) ≤ b`, or be `G★` itself.

use std::collections::HashMap;
use std::io::BufRead;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::pair_count;
use super::sample::{random_connected, rng, EDGE_PROBABILITIES};
use super::{is_iso_to_gstar, thread_pool, HarnessError, Mode, RunConfig, REPORT_SCHEMA_VERSION};
use crate::excess::{has_bounded_excess_tree, min_total_excess_exact};
use crate::extremal::build_gstar;
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::iso::{find_isomorphism, MAX_ISO_ORDER};
use crate::poly::{largest_real_root, phi_bstar};
use crate::spectral::{spectral_radius, DEFAULT_TOL};

const MASK_CHUNK: u64 = 1 << 14;
const STREAM_BATCH: usize = 4096;

/// Verdict for one graph that failed the excess test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub graph6: String,
    pub rho: f64,
    pub threshold: f64,
    pub passes_filter: bool,
    /// Exact minimum total k-excess.
    pub min_excess: usize,
    pub is_exception: bool,
    pub iso_to_gstar: bool,
    /// Largest root of the instantiated `φ_{B★}`, for graphs iso to `G★`.
    pub rho1: Option<f64>,
}

impl VerificationRecord {
    fn check(&self, b: usize) -> Result<(), String> {
        if self.is_exception && (!self.passes_filter || self.min_excess <= b) {
            return Err(format!("exception record {} breaks its invariants", self.graph6));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    /// Graphs read, enumerated or drawn.
    pub scanned: u64,
    pub connected: u64,
    pub filter_survivors: u64,
    /// Graphs without a spanning tree of excess at most b.
    pub failing: u64,
    /// Failing graphs that also pass the filter.
    pub exceptions: u64,
    /// Isomorphism classes among exceptions; absent above the iso scope.
    pub exception_classes: Option<u64>,
    pub counterexamples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Margins {
    /// `ρ(G★)` from the eigensolver.
    pub threshold: f64,
    /// Largest root of `φ_{B★}(n, k, b)`.
    pub threshold_rho1: f64,
    pub threshold_agreement: f64,
    /// Smallest `ρ(G) − ρ(G★)` over filter survivors not iso to `G★`.
    pub gap_above: Option<f64>,
    /// Smallest `ρ(G★) − ρ(G)` over failing graphs not iso to `G★`
    /// (only populated when the filter is off).
    pub gap_below: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub counts: Counts,
    pub exceptions: Vec<VerificationRecord>,
    /// graph6 strings of exceptions not iso to `G★`.
    pub counterexamples: Vec<String>,
    /// Failing graphs below the threshold, not iso to `G★` (control runs).
    pub failing_below_threshold: Vec<VerificationRecord>,
    pub margins: Margins,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl TheoremReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

struct Context {
    k: usize,
    b: usize,
    filter: bool,
    cutoff: f64,
    threshold: f64,
    rho1: f64,
    gstar: Graph,
}

#[derive(Default)]
struct Tally {
    counts: Counts,
    exceptions: Vec<VerificationRecord>,
    below: Vec<VerificationRecord>,
    gap_above: Option<f64>,
    gap_below: Option<f64>,
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        let c = &mut self.counts;
        let o = other.counts;
        c.scanned += o.scanned;
        c.connected += o.connected;
        c.filter_survivors += o.filter_survivors;
        c.failing += o.failing;
        c.exceptions += o.exceptions;
        c.counterexamples += o.counterexamples;
        self.exceptions.extend(other.exceptions);
        self.below.extend(other.below);
        self.gap_above = min_opt(self.gap_above, other.gap_above);
        self.gap_below = min_opt(self.gap_below, other.gap_below);
    }

    /// Tests one graph (already counted as scanned).
    fn visit(&mut self, g: &Graph, ctx: &Context) -> Result<(), HarnessError> {
        if !g.is_connected().unwrap_or(false) {
            return Ok(());
        }
        self.counts.connected += 1;
        let rho = spectral_radius(g, DEFAULT_TOL)?;
        let passes = rho >= ctx.cutoff;
        if passes {
            self.counts.filter_survivors += 1;
        } else if ctx.filter {
            return Ok(());
        }
        if has_bounded_excess_tree(g, ctx.k, ctx.b)? {
            if passes && !is_iso_to_gstar(g, &ctx.gstar, ctx.k, ctx.b) {
                self.gap_above = min_opt(self.gap_above, Some(rho - ctx.threshold));
            }
            return Ok(());
        }
        self.counts.failing += 1;
        let iso = is_iso_to_gstar(g, &ctx.gstar, ctx.k, ctx.b);
        let record = VerificationRecord {
            graph6: emit_graph6(g).map_err(|e| HarnessError::Invariant(e.to_string()))?,
            rho,
            threshold: ctx.threshold,
            passes_filter: passes,
            min_excess: min_total_excess_exact(g, ctx.k, None)?.value,
            is_exception: passes,
            iso_to_gstar: iso,
            rho1: iso.then_some(ctx.rho1),
        };
        record.check(ctx.b).map_err(HarnessError::Invariant)?;
        if passes {
            self.counts.exceptions += 1;
            if !iso {
                self.counts.counterexamples += 1;
            }
            self.exceptions.push(record);
        } else if !iso {
            self.gap_below = min_opt(self.gap_below, Some(ctx.threshold - rho));
            self.below.push(record);
        }
        Ok(())
    }
}

fn context(config: &RunConfig) -> Result<Context, HarnessError> {
    let RunConfig { n, k, b, .. } = *config;
    let gstar = build_gstar(n, k, b)?;
    let threshold = spectral_radius(&gstar, DEFAULT_TOL)?;
    let rho1 = largest_real_root(
        &phi_bstar().instantiate(n as i64, 1, k as i64, b as i64),
        n as f64,
        1e-12,
    )?;
    if (rho1 - threshold).abs() > 1e-8 {
        return Err(HarnessError::Invariant(format!(
            "ρ(G★) = {threshold} but the φ_B★ root is {rho1}"
        )));
    }
    Ok(Context {
        k,
        b,
        filter: config.spectral_filter,
        cutoff: threshold - config.filter_tol,
        threshold,
        rho1,
        gstar,
    })
}

fn tally_graphs(graphs: &[Graph], ctx: &Context) -> Result<Tally, HarnessError> {
    let parts: Vec<Result<Tally, HarnessError>> = graphs
        .par_chunks(64)
        .map(|chunk| {
            let mut t = Tally::default();
            for g in chunk {
                t.counts.scanned += 1;
                t.visit(g, ctx)?;
            }
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p?);
    }
    Ok(total)
}

fn run_exhaustive(n: usize, ctx: &Context) -> Result<Tally, HarnessError> {
    let total_masks = 1u64 << pair_count(n);
    let chunks = total_masks.div_ceil(MASK_CHUNK);
    let parts: Vec<Result<Tally, HarnessError>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = Tally::default();
            for mask in c * MASK_CHUNK..((c + 1) * MASK_CHUNK).min(total_masks) {
                t.counts.scanned += 1;
                t.visit(&Graph::from_pair_mask(n, mask), ctx)?;
            }
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total.merge(p?);
    }
    Ok(total)
}

fn run_stream<R: BufRead>(n: usize, input: R, ctx: &Context, pool: &rayon::ThreadPool) -> Result<Tally, HarnessError> {
    let mut total = Tally::default();
    let mut batch = Vec::with_capacity(STREAM_BATCH);
    let mut lines = input.lines().enumerate().peekable();
    while lines.peek().is_some() {
        batch.clear();
        for (i, line) in lines.by_ref() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() {
                continue;
            }
            let g = parse_graph6(text).map_err(|e| HarnessError::Input {
                line: i + 1,
                message: e.to_string(),
            })?;
            if g.order() != n {
                return Err(HarnessError::Input {
                    line: i + 1,
                    message: format!("graph has order {}, run expects {n}", g.order()),
                });
            }
            batch.push(g);
            if batch.len() == STREAM_BATCH {
                break;
            }
        }
        total.merge(pool.install(|| tally_graphs(&batch, ctx))?);
    }
    Ok(total)
}

fn run_random(config: &RunConfig, ctx: &Context) -> Result<Tally, HarnessError> {
    let mut r = rng(config.seed);
    let mut draws = 0u64;
    let graphs: Vec<Graph> = (0..config.samples)
        .map(|i| {
            let (g, d) = random_connected(&mut r, config.n, EDGE_PROBABILITIES[i % EDGE_PROBABILITIES.len()]);
            draws += d as u64;
            g
        })
        .collect();
    let mut t = tally_graphs(&graphs, ctx)?;
    t.counts.scanned = draws;
    Ok(t)
}

fn count_classes(records: &[VerificationRecord]) -> Option<u64> {
    let graphs: Vec<Graph> = records
        .iter()
        .map(|r| parse_graph6(&r.graph6).expect("emitted by us"))
        .collect();
    if graphs.iter().any(|g| g.order() > MAX_ISO_ORDER) {
        return None;
    }
    let mut reps: HashMap<Vec<usize>, Vec<&Graph>> = HashMap::new();
    let mut classes = 0;
    for g in &graphs {
        let mut degs = g.degrees();
        degs.sort_unstable();
        let bucket = reps.entry(degs).or_default();
        if !bucket.iter().any(|h| find_isomorphism(h, g).is_some()) {
            bucket.push(g);
            classes += 1;
        }
    }
    Some(classes)
}

/// Runs the theorem check with the graph source named by `config.mode`.
/// Graph6-stream mode reads from `input`; the other modes ignore it.
pub fn verify_theorem_on<R: BufRead>(config: &RunConfig, input: Option<R>) -> Result<TheoremReport, HarnessError> {
    config.validate()?;
    let start = Instant::now();
    let ctx = context(config)?;
    let pool = thread_pool(config.workers)?;
    let tally = match config.mode {
        Mode::ExhaustiveLabeled => pool.install(|| run_exhaustive(config.n, &ctx)),
        Mode::RandomSample => pool.install(|| run_random(config, &ctx)),
        Mode::Graph6Stream => match input {
            Some(r) => run_stream(config.n, r, &ctx, &pool),
            None => Err(HarnessError::Usage("graph6-stream mode needs an input stream".into())),
        },
    }?;

    let mut counts = tally.counts;
    counts.exception_classes = count_classes(&tally.exceptions);
    let counterexamples: Vec<String> = tally
        .exceptions
        .iter()
        .filter(|r| !r.iso_to_gstar)
        .map(|r| r.graph6.clone())
        .collect();
    Ok(TheoremReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: config.clone(),
        verified: counterexamples.is_empty(),
        counts,
        exceptions: tally.exceptions,
        counterexamples,
        failing_below_threshold: tally.below,
        margins: Margins {
            threshold: ctx.threshold,
            threshold_rho1: ctx.rho1,
            threshold_agreement: (ctx.threshold - ctx.rho1).abs(),
            gap_above: tally.gap_above,
            gap_below: tally.gap_below,
        },
        timing: config.timing.then(|| Timing {
            seconds: start.elapsed().as_secs_f64(),
        }),
    })
}

/// [`verify_theorem_on`] for the modes that need no input stream.
pub fn verify_theorem(config: &RunConfig) -> Result<TheoremReport, HarnessError> {
    verify_theorem_on(config, None::<std::io::Empty>)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::enumerate::connected_nonisomorphic_graphs;

    fn corpus(n: usize) -> String {
        connected_nonisomorphic_graphs(n)
            .iter()
            .map(|g| emit_graph6(g).unwrap() + "\n")
            .collect()
    }

    #[test]
    fn stream_run_at_seven() {
        let text = corpus(7);
        let cfg = RunConfig::new(7, 5, 0, Mode::Graph6Stream);
        let r = verify_theorem_on(&cfg, Some(text.as_bytes())).unwrap();
        assert_eq!(r.counts.scanned, 853);
        assert_eq!(r.counts.connected, 853);
        assert!(r.verified);
        assert_eq!(r.counts.exceptions, 1);
        assert_eq!(r.counts.exception_classes, Some(1));
        assert!(r.exceptions[0].iso_to_gstar);
        assert_eq!(r.exceptions[0].min_excess, 1);
        assert!(r.margins.threshold_agreement < 1e-9);
        // another 7-vertex graph also reaches ρ = √6 but has a spanning 5-tree
        assert!(r.margins.gap_above.unwrap().abs() < 1e-9);
    }

    #[test]
    fn control_run_finds_failures_below_threshold() {
        let text = corpus(8);
        let mut cfg = RunConfig::new(8, 5, 0, Mode::Graph6Stream);
        cfg.spectral_filter = false;
        let r = verify_theorem_on(&cfg, Some(text.as_bytes())).unwrap();
        assert!(r.verified);
        assert!(!r.failing_below_threshold.is_empty());
        assert!(r
            .failing_below_threshold
            .iter()
            .all(|x| x.rho < x.threshold && x.min_excess > 0));
        assert!(r.margins.gap_below.unwrap() > 0.0);
    }

    #[test]
    fn reports_are_independent_of_worker_count() {
        let mut cfg = RunConfig::new(9, 5, 1, Mode::RandomSample);
        cfg.samples = 120;
        cfg.seed = 7;
        cfg.workers = 1;
        let a = verify_theorem(&cfg).unwrap().to_json();
        cfg.workers = 3;
        assert_eq!(a, verify_theorem(&cfg).unwrap().to_json());
    }

    #[test]
    fn bad_input_is_reported_with_line() {
        let cfg = RunConfig::new(7, 5, 0, Mode::Graph6Stream);
        let text = format!("{}\nBw\n", emit_graph6(&Graph::complete(7)).unwrap());
        let err = verify_theorem_on(&cfg, Some(text.as_bytes())).unwrap_err();
        assert!(matches!(err, HarnessError::Input { line: 2, .. }), "{err}");
    }
}
