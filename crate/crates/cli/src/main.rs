use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use excess_core::excess::{min_total_excess_exact, win_condition_worst_violator};
use excess_core::extremal::{verify_gstar_is_exception, CertificationMode, FamilySpec};
use excess_core::harness::enumerate::{connected_nonisomorphic_graphs, nonisomorphic_graphs, MAX_CLASS_ORDER};
use excess_core::harness::{
    verify_lemma_suite, verify_theorem_on, HarnessError, LemmaSuiteConfig, Mode, RunConfig, EXIT_COUNTEREXAMPLE,
    EXIT_FAILURE, EXIT_SCOPE, EXIT_USAGE,
};
use excess_core::poly::{check_f1_negativity, verify_identity, F1Grid};
use excess_core::spectral::{spectral_radius, DEFAULT_TOL};
use excess_core::{emit_graph6, parse_graph6, Graph};

#[derive(Parser)]
#[command(
    name = "texcess",
    version,
    about = "Spanning trees with bounded total excess: spectral verification toolkit"
)]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Largest adjacency eigenvalue of each input graph.
    SpectralRadius {
        /// graph6 string, or `-` / omitted for one graph per stdin line.
        graph: Option<String>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Minimum total k-excess over spanning trees (exact search).
    MinExcess {
        graph: Option<String>,
        #[arg(long)]
        k: usize,
        /// Print the full result with a witness tree as JSON.
        #[arg(long)]
        witness: bool,
    },
    /// Worst subset for the cut condition c(G−S) ≤ (k−2)|S| + b + 2.
    WinCheck {
        graph: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        include_empty: bool,
    },
    /// Emit a member of an extremal family as graph6.
    BuildExtremal {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
    },
    /// Certify that G★(n, k, b) has no spanning tree with te ≤ b.
    CertifyGstar {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = CertArg::Auto)]
        mode: CertArg,
    },
    /// Check the polynomial identity φ_B★ − φ_B1 = (s − 1)·f1 exactly.
    VerifyIdentities,
    /// Evaluate f1 at the largest root of φ_B1 over a parameter grid (CSV).
    CheckF1 {
        #[arg(long, value_parser = parse_range, default_value = "2..6")]
        s: (i64, i64),
        #[arg(long, value_parser = parse_range, default_value = "5..10")]
        k: (i64, i64),
        /// Largest b; defaults to k − 3 for each k.
        #[arg(long)]
        b_max: Option<i64>,
        /// Offsets added to the smallest admissible order (k−1)s+b+3.
        #[arg(long, value_delimiter = ',', default_value = "0,5")]
        offsets: Vec<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Check the theorem over a graph stream; prints a JSON report.
    VerifyTheorem {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::ExhaustiveLabeled)]
        mode: ModeArg,
        /// graph6 corpus for graph6-stream mode; stdin if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, default_value_t = excess_core::harness::DEFAULT_FILTER_TOL)]
        filter_tol: f64,
        /// Test every connected graph, not just those above the threshold.
        #[arg(long)]
        no_filter: bool,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run the lemma property suites; prints a JSON report.
    LemmaSuite {
        #[arg(long, default_value_t = LemmaSuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Order of the exhaustive cut-condition run (0 skips it).
        #[arg(long, default_value_t = 7)]
        exhaustive_n: usize,
        #[arg(long, default_value_t = 500)]
        random_graphs: usize,
        #[arg(long, default_value_t = 1000)]
        deletions: usize,
    },
    /// One graph6 line per isomorphism class of graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gstar,
    B1,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum CertArg {
    Exact,
    Structural,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    ExhaustiveLabeled,
    Graph6Stream,
    RandomSample,
}

fn parse_range(text: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = text.split_once("..").ok_or("expected LO..HI")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// An error with the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure {
            code: EXIT_USAGE as u8,
            message: message.to_string(),
        }
    }

    fn other(message: impl ToString) -> Self {
        Failure {
            code: EXIT_FAILURE as u8,
            message: message.to_string(),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure {
            code: e.exit_code() as u8,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::other(e)
    }
}

/// The graphs named on the command line, or one per nonblank stdin line.
fn input_graphs(arg: Option<String>) -> Result<Vec<Graph>, Failure> {
    let lines: Vec<String> = match arg {
        Some(s) if s != "-" => vec![s],
        _ => io::stdin().lock().lines().collect::<Result<_, _>>()?,
    };
    lines
        .iter()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_graph6(l).map_err(|e| Failure::usage(format!("{l}: {e}"))))
        .collect()
}

fn json(value: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serialisable") + "\n"
}

/// Runs one command; returns its output and exit status.
fn run(command: Command) -> Result<(String, u8), Failure> {
    let mut out = String::new();
    let mut status = 0u8;
    match command {
        Command::SpectralRadius { graph, tol } => {
            for g in input_graphs(graph)? {
                let rho = spectral_radius(&g, tol).map_err(Failure::usage)?;
                out.push_str(&format!("{rho:.12}\n"));
            }
        }
        Command::MinExcess { graph, k, witness } => {
            for g in input_graphs(graph)? {
                let r = min_total_excess_exact(&g, k, None).map_err(HarnessError::from)?;
                if witness {
                    out.push_str(&json(&r));
                } else {
                    out.push_str(&format!("{}\n", r.value));
                }
            }
        }
        Command::WinCheck {
            graph,
            k,
            b,
            include_empty,
        } => {
            for g in input_graphs(graph)? {
                let w = win_condition_worst_violator(&g, k, b, include_empty).map_err(HarnessError::from)?;
                let report = serde_json::json!({
                    "holds": !w.violated(),
                    "subset": w.subset.to_vec(),
                    "components": w.components,
                    "slack": w.slack,
                });
                out.push_str(&json(&report));
            }
        }
        Command::BuildExtremal { family, n, s, k, b } => {
            let spec = match family {
                FamilyArg::Gstar => FamilySpec::gstar(n, k, b),
                FamilyArg::B1 => FamilySpec::b1(n, s, k, b),
                FamilyArg::Star => FamilySpec::star(s, k, b),
            };
            let g = spec.build().map_err(Failure::usage)?;
            out.push_str(&emit_graph6(&g).map_err(Failure::usage)?);
            out.push('\n');
        }
        Command::CertifyGstar { n, k, b, mode } => {
            let mode = match mode {
                CertArg::Exact => CertificationMode::Exact,
                CertArg::Structural => CertificationMode::Structural,
                CertArg::Auto => CertificationMode::Auto,
            };
            let cert = verify_gstar_is_exception(n, k, b, mode).map_err(HarnessError::from)?;
            if !cert.is_exception {
                status = EXIT_COUNTEREXAMPLE as u8;
            }
            out.push_str(&json(&cert));
        }
        Command::VerifyIdentities => {
            let check = verify_identity();
            if check.holds {
                out.push_str("identity phi_B* - phi_B1 = (s-1)*f1: OK\n");
            } else {
                out.push_str(&format!(
                    "identity phi_B* - phi_B1 = (s-1)*f1: FAILED, difference {}\n",
                    check.difference
                ));
                status = EXIT_FAILURE as u8;
            }
        }
        Command::CheckF1 {
            s,
            k,
            b_max,
            offsets,
            json: as_json,
        } => {
            let grid = F1Grid {
                s,
                k,
                b_max,
                n_offsets: offsets,
            };
            let report = check_f1_negativity(&grid).map_err(Failure::other)?;
            if !report.all_negative() {
                status = EXIT_COUNTEREXAMPLE as u8;
            }
            out = if as_json { json(&report) } else { report.to_csv() };
        }
        Command::VerifyTheorem {
            n,
            k,
            b,
            mode,
            input,
            samples,
            seed,
            workers,
            filter_tol,
            no_filter,
            timing,
        } => {
            let mode = match mode {
                ModeArg::ExhaustiveLabeled => Mode::ExhaustiveLabeled,
                ModeArg::Graph6Stream => Mode::Graph6Stream,
                ModeArg::RandomSample => Mode::RandomSample,
            };
            let config = RunConfig {
                filter_tol,
                spectral_filter: !no_filter,
                samples,
                seed,
                workers,
                timing,
                ..RunConfig::new(n, k, b, mode)
            };
            let report = if mode == Mode::Graph6Stream {
                match input {
                    Some(path) => verify_theorem_on(&config, Some(BufReader::new(File::open(path)?)))?,
                    None => verify_theorem_on(&config, Some(io::stdin().lock()))?,
                }
            } else {
                verify_theorem_on(&config, None::<io::Empty>)?
            };
            if !report.verified {
                status = EXIT_COUNTEREXAMPLE as u8;
            }
            out = report.to_json() + "\n";
        }
        Command::LemmaSuite {
            seed,
            workers,
            exhaustive_n,
            random_graphs,
            deletions,
        } => {
            let config = LemmaSuiteConfig {
                seed,
                workers,
                cut_exhaustive_n: (exhaustive_n > 0).then_some(exhaustive_n),
                cut_random: random_graphs,
                deletions,
                ..LemmaSuiteConfig::default()
            };
            let report = verify_lemma_suite(&config)?;
            if !report.passed {
                status = EXIT_COUNTEREXAMPLE as u8;
            }
            out = report.to_json() + "\n";
        }
        Command::Enumerate { n, connected } => {
            if n > MAX_CLASS_ORDER {
                return Err(Failure {
                    code: EXIT_SCOPE as u8,
                    message: format!("enumeration needs n <= {MAX_CLASS_ORDER}"),
                });
            }
            let graphs = if connected {
                connected_nonisomorphic_graphs(n)
            } else {
                nonisomorphic_graphs(n)
            };
            for g in graphs {
                out.push_str(&emit_graph6(&g).map_err(Failure::other)?);
                out.push('\n');
            }
        }
    }
    Ok((out, status))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(text, status)| {
        match &cli.out {
            Some(path) => std::fs::write(path, &text)?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        Ok(status)
    });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(f) => {
            eprintln!("texcess: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
