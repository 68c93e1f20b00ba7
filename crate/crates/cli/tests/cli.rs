use std::io::Write;
use std::process::{Command, Output, Stdio};

use excess_core::{is_isomorphic, parse_graph6, Graph};

/// Runs the binary with whitespace-separated `args`.
fn texcess(args: &str, stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_texcess"))
        .args(args.split_whitespace())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let input = stdin.unwrap_or("").to_owned();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || pipe.write_all(input.as_bytes()));
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap().unwrap();
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

fn code(args: &str) -> Option<i32> {
    texcess(args, None).status.code()
}

#[test]
fn min_excess_of_triangle() {
    let o = texcess("min-excess Bw --k 2", None);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn min_excess_with_witness() {
    let v = json(&texcess("min-excess FsaC? --k 5 --witness", None));
    assert_eq!(v["value"], 1);
    assert_eq!(v["method"], "exact");
    assert_eq!(v["witness"]["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn identities_hold() {
    let o = texcess("verify-identities", None);
    assert!(o.status.success());
    assert!(stdout(&o).ends_with(": OK\n"), "{}", stdout(&o));
}

#[test]
fn gstar_at_seven_is_a_star() {
    let o = texcess("build-extremal --family gstar --n 7 --k 5 --b 0", None);
    assert!(o.status.success());
    let g = parse_graph6(stdout(&o).trim()).unwrap();
    let mut star = Graph::empty(7);
    for v in 1..7 {
        star.add_edge(0, v);
    }
    assert!(is_isomorphic(&g, &star).unwrap());
}

#[test]
fn spectral_radius_reads_stdin() {
    let o = texcess("spectral-radius", Some("Bw\nFsaC?\n\n"));
    let lines: Vec<f64> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert!((lines[0] - 2.0).abs() < 1e-10);
    assert!((lines[1] - 6f64.sqrt()).abs() < 1e-10);
}

#[test]
fn win_check_reports_violation() {
    let v = json(&texcess("win-check FsaC? --k 5 --b 0", None));
    assert_eq!(v["holds"], false);
    assert_eq!(v["subset"], serde_json::json!([0]));
    assert_eq!(v["slack"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(code("min-excess not-graph6! --k 2"), Some(2));
    assert_eq!(code("min-excess Bw --k 2 --bogus"), Some(2));
    assert_eq!(code("verify-theorem --n 9 --k 5 --b 2"), Some(2));
    assert_eq!(code("verify-theorem --n 8 --k 5 --b 0"), Some(4));
    assert_eq!(code("build-extremal --family gstar --n 6 --k 5 --b 0"), Some(2));
    assert_eq!(code("enumerate --n 9"), Some(4));
}

#[test]
fn certify_gstar_structural() {
    let v = json(&texcess("certify-gstar --n 20 --k 6 --b 2 --mode structural", None));
    assert_eq!(v["is_exception"], true);
    assert_eq!(v["min_excess"], 3);
}

#[test]
fn f1_grid_csv() {
    let o = texcess("check-f1 --s 2..3 --k 5..6", None);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,k,b,n,rho1,f1_value,sign"));
    assert!(lines.all(|l| l.ends_with(",-")));
}

#[test]
fn theorem_over_connected_eight_vertex_corpus() {
    let corpus = stdout(&texcess("enumerate --n 8 --connected", None));
    assert_eq!(corpus.lines().count(), 11117);

    let o = texcess("verify-theorem --n 8 --k 5 --b 1 --mode graph6-stream", Some(&corpus));
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["counts"]["connected"], 11117);
    assert_eq!(v["counts"]["counterexamples"], 0);
    let exceptions = v["exceptions"].as_array().unwrap();
    assert!(exceptions.iter().all(|e| e["iso_to_gstar"] == true));

    // control: without the filter, other graphs fail too, all below the threshold
    let o = texcess(
        "verify-theorem --n 8 --k 5 --b 0 --mode graph6-stream --no-filter",
        Some(&corpus),
    );
    let v = json(&o);
    let below = v["failing_below_threshold"].as_array().unwrap();
    assert!(!below.is_empty());
    assert!(below
        .iter()
        .all(|r| r["rho"].as_f64().unwrap() < r["threshold"].as_f64().unwrap()));
    assert_eq!(v["verified"], true);
}

#[test]
fn reports_do_not_depend_on_workers() {
    let run = |w: &str| {
        let args =
            format!("verify-theorem --n 10 --k 6 --b 1 --mode random-sample --samples 150 --seed 3 --workers {w}");
        stdout(&texcess(&args, None))
    };
    let one = run("1");
    assert!(one.contains("\"verified\": true"));
    assert_eq!(one, run("3"));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("texcess-out-{}.g6", std::process::id()));
    let o = texcess(
        &format!(
            "build-extremal --family star --s 2 --k 5 --b 0 --out {}",
            path.display()
        ),
        None,
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let g = parse_graph6(std::fs::read_to_string(&path).unwrap().trim()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!((g.order(), g.edge_count()), (11, 1 + 2 * 9));
}
