//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use excess_core::excess::{min_total_excess_exact, prufer_oracle_min_excess};
use excess_core::extremal::{build_gstar, build_star_family, verify_gstar_is_exception, CertificationMode};
use excess_core::harness::lemmas::{
    clique_merging, cut_condition_exhaustive, cut_condition_random, edge_deletion_monotonicity, LemmaOutcome,
};
use excess_core::harness::sample::random_connected_batch;
use excess_core::harness::{verify_theorem, Mode, RunConfig};
use excess_core::poly::{check_f1_negativity, closed_form_rho, largest_real_root, phi_bstar, verify_identity, F1Grid};
use excess_core::spectral::{spectral_radius, DEFAULT_TOL};
use excess_core::{is_isomorphic, Graph};

const SEED: u64 = 20240607;
const KB_GRID: [(usize, usize); 5] = [(5, 0), (5, 1), (6, 2), (7, 3), (8, 0)];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn lemma(out: &LemmaOutcome) -> String {
    format!(
        "{}: {} cases, {} applicable, {} failures{}",
        out.name,
        out.cases,
        out.applicable,
        out.failures,
        out.min_gap.map(|g| format!(", min gap {g:.3e}")).unwrap_or_default()
    )
}

fn identity() -> Outcome {
    let start = Instant::now();
    let r = verify_identity();
    let t = start.elapsed();
    check(
        r.holds && t < Duration::from_secs(1),
        format!("exact identity holds = {}, {t:.2?}", r.holds),
    )
}

fn closed_form() -> Outcome {
    let start = Instant::now();
    let mut worst = 0f64;
    let mut points = 0;
    for s in 1..=6 {
        for k in 5..=9 {
            for b in 0..=k - 3 {
                let g = build_star_family(s, k, b).map_err(|e| e.to_string())?;
                let rho = spectral_radius(&g, DEFAULT_TOL).map_err(|e| e.to_string())?;
                worst = worst.max((rho - closed_form_rho(s as i64, k as i64, b as i64)).abs());
                points += 1;
            }
        }
    }
    let t = start.elapsed();
    check(
        worst <= 1e-8 && t < Duration::from_secs(10),
        format!("{points} points, max deviation {worst:.2e}, {t:.2?}"),
    )
}

fn bstar_roots() -> Outcome {
    let phi = phi_bstar();
    let mut worst = 0f64;
    let mut points = 0;
    for (k, b) in KB_GRID {
        for n in k + b + 2..=k + b + 12 {
            let g = build_gstar(n, k, b).map_err(|e| e.to_string())?;
            let rho = spectral_radius(&g, DEFAULT_TOL).map_err(|e| e.to_string())?;
            let root = largest_real_root(&phi.instantiate(n as i64, 1, k as i64, b as i64), n as f64, 1e-12)
                .map_err(|e| e.to_string())?;
            worst = worst.max((rho - root).abs());
            points += 1;
        }
    }
    check(worst <= 1e-8, format!("{points} points, max deviation {worst:.2e}"))
}

fn exhaustive_theorem() -> Outcome {
    let mut cfg = RunConfig::new(7, 5, 0, Mode::ExhaustiveLabeled);
    cfg.workers = 1;
    let start = Instant::now();
    let r = verify_theorem(&cfg).map_err(|e| e.to_string())?;
    let t = start.elapsed();
    let star = Graph::complete(1).join(&Graph::empty(6));
    let all_star = r
        .exceptions
        .iter()
        .all(|x| excess_core::parse_graph6(&x.graph6).is_ok_and(|g| is_isomorphic(&g, &star).unwrap_or(false)));
    check(
        r.counts.scanned == 1 << 21
            && r.verified
            && r.counts.counterexamples == 0
            && !r.exceptions.is_empty()
            && all_star
            && t < Duration::from_secs(600),
        format!(
            "{} graphs, {} connected, {} survivors, {} exceptions all K_1,6 = {all_star}, {} counterexamples, {t:.1?} on 1 worker",
            r.counts.scanned, r.counts.connected, r.counts.filter_survivors, r.counts.exceptions, r.counts.counterexamples
        ),
    )
}

fn certification() -> Outcome {
    let mut exact = 0;
    let mut structural = 0;
    for (k, b) in KB_GRID {
        for n in k + b + 2..=k + b + 12 {
            if n <= 12 {
                let c = verify_gstar_is_exception(n, k, b, CertificationMode::Exact).map_err(|e| e.to_string())?;
                if !(c.is_exception && c.min_excess == b + 1) {
                    return Err(format!(
                        "exact certificate failed at ({n},{k},{b}): min te {}",
                        c.min_excess
                    ));
                }
                exact += 1;
            }
        }
        for n in k + b + 2..=30 {
            let c = verify_gstar_is_exception(n, k, b, CertificationMode::Structural).map_err(|e| e.to_string())?;
            if !(c.is_exception && c.min_excess == b + 1) {
                return Err(format!("structural certificate failed at ({n},{k},{b})"));
            }
            structural += 1;
        }
    }
    Ok(format!(
        "{exact} exact certificates, {structural} structural certificates up to n = 30, all min te = b+1"
    ))
}

fn oracle() -> Outcome {
    let graphs = random_connected_batch(SEED, 200, 3, 8);
    let mut mismatches = 0;
    for g in &graphs {
        for k in 2..=5 {
            let exact = min_total_excess_exact(g, k, None).map_err(|e| e.to_string())?.value;
            let oracle = prufer_oracle_min_excess(g, k).map_err(|e| e.to_string())?;
            if exact != oracle {
                mismatches += 1;
            }
        }
    }
    check(
        mismatches == 0,
        format!("{} graphs x 4 values of k, {mismatches} mismatches", graphs.len()),
    )
}

fn cut_condition() -> Outcome {
    let ex = cut_condition_exhaustive(7, 5, &[0, 1]).map_err(|e| e.to_string())?;
    let rnd = cut_condition_random(SEED, 500, 10, &[3, 4, 5], &[0, 1, 2]).map_err(|e| e.to_string())?;
    check(ex.passed() && rnd.passed(), format!("{}; {}", lemma(&ex), lemma(&rnd)))
}

fn f1_grid() -> Outcome {
    let grid = F1Grid {
        s: (2, 6),
        k: (5, 10),
        b_max: None,
        n_offsets: vec![0, 5],
    };
    let r = check_f1_negativity(&grid).map_err(|e| e.to_string())?;
    let max = r.max_value.unwrap_or(f64::INFINITY);
    let only_excluded = r.skipped.iter().all(|p| (p.b, p.k) == (2, 5));
    check(
        r.all_negative() && max < -1e-6 && only_excluded,
        format!(
            "{} points, {} skipped ((b,k) = (2,5)), max f1(rho1) = {max:.6e}",
            r.rows.len(),
            r.skipped.len()
        ),
    )
}

fn deletions() -> Outcome {
    let out = edge_deletion_monotonicity(SEED, 1000, 12).map_err(|e| e.to_string())?;
    check(out.passed(), lemma(&out))
}

fn merging() -> Outcome {
    let out = clique_merging(&[1, 2], &[2, 3], 10).map_err(|e| e.to_string())?;
    check(out.passed() && out.cases > 0, lemma(&out))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("identity phi_B* - phi_B1 = (s-1) f1", identity),
        ("closed-form rho of the star family", closed_form),
        ("phi_B* root equals rho(G*)", bstar_roots),
        ("exhaustive theorem run at n=7, k=5, b=0", exhaustive_theorem),
        ("G* exception certificates", certification),
        ("exact search equals Pruefer oracle", oracle),
        ("cut condition implies bounded-excess tree", cut_condition),
        ("f1 negative at rho1 on the grid", f1_grid),
        ("edge deletion lowers rho", deletions),
        ("clique merging raises rho", merging),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {tag}: {name} [{detail}] ({:.2?})",
            i + 1,
            start.elapsed()
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
