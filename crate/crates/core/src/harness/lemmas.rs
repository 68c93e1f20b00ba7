//! Property suites for the four supporting lemmas: the cut condition
//! implies a bounded-excess tree, deleting an edge strictly lowers ρ,
//! merging cliques into one raises ρ, and equitable quotients share the
//! Perron root of their graph.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::enumerate::pair_count;
use super::sample::{random_connected, random_connected_batch, rng, EDGE_PROBABILITIES};
use super::{thread_pool, HarnessError, REPORT_SCHEMA_VERSION};
use crate::excess::{has_bounded_excess_tree, win_condition_worst_violator};
use crate::extremal::{clique_join, part_profiles, FamilySpec};
use crate::graph::Graph;
use crate::graph6::emit_graph6;
use crate::spectral::{is_equitable, largest_eigenvalue_of_quotient, quotient_matrix, spectral_radius, DEFAULT_TOL};

/// Required strict-inequality margin for the ρ comparisons.
pub const RHO_MARGIN: f64 = 1e-9;
/// Allowed |quotient root − ρ(G)| deviation.
pub const QUOTIENT_AGREEMENT: f64 = 1e-8;

const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaOutcome {
    pub name: String,
    pub cases: u64,
    /// Cases where the lemma's hypothesis held and the conclusion was tested.
    pub applicable: u64,
    pub failures: u64,
    /// Smallest strict ρ gap observed (ρ comparisons).
    pub min_gap: Option<f64>,
    /// Largest numerical deviation observed (quotient agreement).
    pub max_deviation: Option<f64>,
    /// Up to twenty failing cases, described.
    pub failing_cases: Vec<String>,
}

impl LemmaOutcome {
    fn new(name: &str) -> Self {
        LemmaOutcome {
            name: name.into(),
            cases: 0,
            applicable: 0,
            failures: 0,
            min_gap: None,
            max_deviation: None,
            failing_cases: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.failing_cases.len() < MAX_LISTED_FAILURES {
            self.failing_cases.push(what);
        }
    }

    fn gap(&mut self, g: f64) {
        self.min_gap = Some(self.min_gap.map_or(g, |m| m.min(g)));
    }

    fn deviation(&mut self, d: f64) {
        self.max_deviation = Some(self.max_deviation.map_or(d, |m| m.max(d)));
    }

    fn merge(&mut self, other: LemmaOutcome) {
        self.cases += other.cases;
        self.applicable += other.applicable;
        if let Some(g) = other.min_gap {
            self.gap(g);
        }
        if let Some(d) = other.max_deviation {
            self.deviation(d);
        }
        self.failures += other.failures;
        let room = MAX_LISTED_FAILURES - self.failing_cases.len();
        self.failing_cases.extend(other.failing_cases.into_iter().take(room));
    }
}

fn g6(g: &Graph) -> String {
    emit_graph6(g).unwrap_or_else(|_| format!("<order {}>", g.order()))
}

/// Checks the cut-condition implication on one graph for every `b`.
/// The worst slack is linear in `b`, so one subset scan serves them all.
fn cut_implication(g: &Graph, k: usize, bs: &[usize], out: &mut LemmaOutcome) -> Result<(), HarnessError> {
    let worst = win_condition_worst_violator(g, k, 0, false)?;
    for &b in bs {
        out.cases += 1;
        if worst.slack - b as i64 > 0 {
            continue;
        }
        out.applicable += 1;
        if !has_bounded_excess_tree(g, k, b)? {
            out.fail(format!("{} k={k} b={b}: cut condition holds, no tree", g6(g)));
        }
    }
    Ok(())
}

/// Cut-condition implication over every connected labelled graph of
/// order `n`.
pub fn cut_condition_exhaustive(n: usize, k: usize, bs: &[usize]) -> Result<LemmaOutcome, HarnessError> {
    if !(2..=super::MAX_EXHAUSTIVE_ORDER).contains(&n) {
        return Err(HarnessError::Scope(format!(
            "exhaustive order must lie in 2..={}",
            super::MAX_EXHAUSTIVE_ORDER
        )));
    }
    let total = 1u64 << pair_count(n);
    let chunk = 1u64 << 14;
    let parts: Vec<Result<LemmaOutcome, HarnessError>> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let mut out = LemmaOutcome::new("");
            for mask in c * chunk..((c + 1) * chunk).min(total) {
                let g = Graph::from_pair_mask(n, mask);
                if g.is_connected().unwrap_or(false) {
                    cut_implication(&g, k, bs, &mut out)?;
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = LemmaOutcome::new(&format!("cut condition, exhaustive n={n} k={k} b={bs:?}"));
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// Cut-condition implication on `count` seeded connected graphs of order
/// `3..=max_n`, each tested at every `(k, b)`.
pub fn cut_condition_random(
    seed: u64,
    count: usize,
    max_n: usize,
    ks: &[usize],
    bs: &[usize],
) -> Result<LemmaOutcome, HarnessError> {
    let graphs = random_connected_batch(seed, count, 3, max_n);
    let parts: Vec<Result<LemmaOutcome, HarnessError>> = graphs
        .par_iter()
        .map(|g| {
            let mut out = LemmaOutcome::new("");
            for &k in ks {
                cut_implication(g, k, bs, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut out = LemmaOutcome::new(&format!(
        "cut condition, {count} random graphs n<={max_n} k={ks:?} b={bs:?}"
    ));
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// Deletes one random edge from each of `count` seeded connected graphs of
/// order `2..=max_n` and requires ρ to drop by more than [`RHO_MARGIN`].
/// `applicable` counts deletions that leave the graph connected.
pub fn edge_deletion_monotonicity(seed: u64, count: usize, max_n: usize) -> Result<LemmaOutcome, HarnessError> {
    let mut r = rng(seed);
    let pairs: Vec<(Graph, (usize, usize))> = (0..count)
        .map(|i| {
            let n = r.gen_range(2..=max_n);
            let (g, _) = random_connected(&mut r, n, EDGE_PROBABILITIES[i % EDGE_PROBABILITIES.len()]);
            let edges = g.edges();
            let e = edges[r.gen_range(0..edges.len())];
            (g, e)
        })
        .collect();
    let parts: Vec<Result<LemmaOutcome, HarnessError>> = pairs
        .par_iter()
        .map(|(g, (u, v))| {
            let mut out = LemmaOutcome::new("");
            let mut h = g.clone();
            h.remove_edge(*u, *v);
            out.cases += 1;
            if h.is_connected().unwrap_or(false) {
                out.applicable += 1;
            }
            let gap = spectral_radius(g, DEFAULT_TOL)? - spectral_radius(&h, DEFAULT_TOL)?;
            out.gap(gap);
            if gap <= RHO_MARGIN {
                out.fail(format!("{} minus ({u},{v}): ρ drop {gap:e}", g6(g)));
            }
            Ok(out)
        })
        .collect();
    let mut out = LemmaOutcome::new(&format!("edge deletion, {count} pairs n<={max_n}"));
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// For each `s`, `t` and order `n ≤ max_n`, compares every clique profile
/// `K_s ∨ (K_{n_1} ∪ … ∪ K_{n_t})` with `n_1 < n−s−t+1` against the merged
/// `K_s ∨ (K_{n−s−t+1} ∪ (t−1)K_1)`; the merged graph must win by more than
/// [`RHO_MARGIN`].
pub fn clique_merging(ss: &[usize], ts: &[usize], max_n: usize) -> Result<LemmaOutcome, HarnessError> {
    let mut cases = Vec::new();
    for &s in ss {
        for &t in ts {
            for n in s + t..=max_n {
                let top = n - s - t + 1;
                for profile in part_profiles(n - s, t) {
                    if profile[0] < top {
                        let mut merged = vec![top];
                        merged.resize(t, 1);
                        cases.push((s, profile, merged));
                    }
                }
            }
        }
    }
    let parts: Vec<Result<LemmaOutcome, HarnessError>> = cases
        .par_iter()
        .map(|(s, profile, merged)| {
            let mut out = LemmaOutcome::new("");
            out.cases += 1;
            out.applicable += 1;
            let gap = spectral_radius(&clique_join(*s, merged), DEFAULT_TOL)?
                - spectral_radius(&clique_join(*s, profile), DEFAULT_TOL)?;
            out.gap(gap);
            if gap <= RHO_MARGIN {
                out.fail(format!("s={s} parts={profile:?} vs {merged:?}: gap {gap:e}"));
            }
            Ok(out)
        })
        .collect();
    let mut out = LemmaOutcome::new(&format!("clique merging, s={ss:?} t={ts:?} n<={max_n}"));
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

/// Family members used for the quotient suite.
pub fn quotient_family_grid() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    for (k, b) in [(5, 0), (5, 1), (6, 2), (7, 3), (8, 0)] {
        for n in k + b + 2..=k + b + 12 {
            specs.push(FamilySpec::gstar(n, k, b));
        }
    }
    for s in 1..=3 {
        for k in 5..=7 {
            for b in 0..=k - 3 {
                let need = (k - 1) * s + b + 3;
                for n in [need, need + 3] {
                    specs.push(FamilySpec::b1(n, s, k, b));
                }
                specs.push(FamilySpec::star(s, k, b));
            }
        }
    }
    specs
}

/// For each family member: its block partition is equitable, the quotient
/// matches the template, and the quotient's Perron root equals ρ(G) within
/// [`QUOTIENT_AGREEMENT`].
pub fn quotient_agreement(specs: &[FamilySpec]) -> Result<LemmaOutcome, HarnessError> {
    let parts: Vec<Result<LemmaOutcome, HarnessError>> = specs
        .par_iter()
        .map(|spec| {
            let mut out = LemmaOutcome::new("");
            out.cases += 1;
            let g = spec.build()?;
            let p = spec.partition()?;
            if !is_equitable(&g, &p) {
                out.fail(format!("{spec:?}: partition not equitable"));
                return Ok(out);
            }
            out.applicable += 1;
            let q = quotient_matrix(&g, &p)?;
            if q.to_integer_rows().as_ref() != Some(&spec.quotient_template()?) {
                out.fail(format!("{spec:?}: quotient differs from template"));
            }
            let dev = (largest_eigenvalue_of_quotient(&q, 1e-11)? - spectral_radius(&g, DEFAULT_TOL)?).abs();
            out.deviation(dev);
            if dev > QUOTIENT_AGREEMENT {
                out.fail(format!("{spec:?}: quotient root off by {dev:e}"));
            }
            Ok(out)
        })
        .collect();
    let mut out = LemmaOutcome::new(&format!("equitable quotients, {} family graphs", specs.len()));
    for p in parts {
        out.merge(p?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaSuiteConfig {
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
    /// Order of the exhaustive cut-condition run; `None` skips it.
    pub cut_exhaustive_n: Option<usize>,
    pub cut_k: usize,
    pub cut_bs: Vec<usize>,
    pub cut_random: usize,
    pub cut_random_max_n: usize,
    pub cut_random_ks: Vec<usize>,
    pub cut_random_bs: Vec<usize>,
    pub deletions: usize,
    pub deletion_max_n: usize,
    pub merge_ss: Vec<usize>,
    pub merge_ts: Vec<usize>,
    pub merge_max_n: usize,
}

impl Default for LemmaSuiteConfig {
    fn default() -> Self {
        LemmaSuiteConfig {
            seed: 2024,
            workers: 0,
            cut_exhaustive_n: Some(7),
            cut_k: 5,
            cut_bs: vec![0, 1],
            cut_random: 500,
            cut_random_max_n: 10,
            cut_random_ks: vec![3, 4, 5],
            cut_random_bs: vec![0, 1, 2],
            deletions: 1000,
            deletion_max_n: 12,
            merge_ss: vec![1, 2],
            merge_ts: vec![2, 3],
            merge_max_n: 10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaSuiteReport {
    pub schema_version: u32,
    pub config: LemmaSuiteConfig,
    pub outcomes: Vec<LemmaOutcome>,
    pub passed: bool,
}

impl LemmaSuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

pub fn verify_lemma_suite(config: &LemmaSuiteConfig) -> Result<LemmaSuiteReport, HarnessError> {
    let c = config;
    let pool = thread_pool(c.workers)?;
    let outcomes = pool.install(|| -> Result<Vec<LemmaOutcome>, HarnessError> {
        let mut outcomes = Vec::new();
        if let Some(n) = c.cut_exhaustive_n {
            outcomes.push(cut_condition_exhaustive(n, c.cut_k, &c.cut_bs)?);
        }
        outcomes.push(cut_condition_random(
            c.seed,
            c.cut_random,
            c.cut_random_max_n,
            &c.cut_random_ks,
            &c.cut_random_bs,
        )?);
        outcomes.push(edge_deletion_monotonicity(c.seed, c.deletions, c.deletion_max_n)?);
        outcomes.push(clique_merging(&c.merge_ss, &c.merge_ts, c.merge_max_n)?);
        outcomes.push(quotient_agreement(&quotient_family_grid())?);
        Ok(outcomes)
    })?;
    Ok(LemmaSuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        config: config.clone(),
        passed: outcomes.iter().all(LemmaOutcome::passed),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_two_two_into_three_one() {
        // K_1 ∨ (K_2 ∪ K_2) against K_1 ∨ (K_3 ∪ K_1)
        let out = clique_merging(&[1], &[2], 5).unwrap();
        assert!(out.passed());
        let lo = spectral_radius(&clique_join(1, &[2, 2]), DEFAULT_TOL).unwrap();
        let hi = spectral_radius(&clique_join(1, &[3, 1]), DEFAULT_TOL).unwrap();
        assert!(hi - lo > 1e-3);
        assert!(out.min_gap.unwrap() <= hi - lo + 1e-12);
    }

    #[test]
    fn small_suite_passes() {
        let cfg = LemmaSuiteConfig {
            cut_exhaustive_n: Some(5),
            cut_k: 3,
            cut_random: 40,
            cut_random_max_n: 8,
            deletions: 100,
            ..LemmaSuiteConfig::default()
        };
        let r = verify_lemma_suite(&cfg).unwrap();
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.outcomes.len(), 5);
        assert!(r.outcomes.iter().all(|o| o.cases > 0));
        assert!(r.outcomes[4].max_deviation.unwrap() <= QUOTIENT_AGREEMENT);
    }

    #[test]
    fn star_fails_premise() {
        // K_{1,6} violates the cut condition at k=5, b=0 so it is not applicable
        let mut out = LemmaOutcome::new("");
        cut_implication(&Graph::complete(1).join(&Graph::empty(6)), 5, &[0, 1], &mut out).unwrap();
        assert_eq!((out.cases, out.applicable, out.failures), (2, 1, 0));
    }
}
