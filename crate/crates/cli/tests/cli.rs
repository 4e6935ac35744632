use std::path::PathBuf;
use std::process::Command;

use pbf_cli::format::{parse_function, parse_maxlin, write_function, write_maxlin};
use pbf_cli::report::{AnalysisReport, CheckReport, KernelReport, SolveReport};
use pbf_cli::run;
use pbf_core::maxlin::{random_system, SystemShape};
use pbf_core::suite::{generate_functions, FunctionShape};
use proptest::prelude::*;
use tempfile::TempDir;

const RUNNING_EXAMPLE: &str = "# f = 2 x1 x2 - 3 x2 x3 + x4\nn 4\n2 1 2\n-3 2 3\n1 4\n";
const SYSTEM_A: &str = "maxlin 3 3 1\n1 1 1 2\n1 -1 2 3\n1 1 1 3\n";

fn pbf(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pbf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn analyze_running_example_json() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "f.pbf", RUNNING_EXAMPLE);
    let (code, out, _) = pbf(&["analyze", file.to_str().unwrap(), "--moments", "2,3", "--norms", "2,4", "--json"]);
    assert_eq!(code, 0);
    let report: AnalysisReport = serde_json::from_str(&out).unwrap();
    assert_eq!((report.n, report.m, report.degree, report.width), (4, 3, 2, 2));
    assert_eq!(report.per_variable, vec![1, 2, 1, 1]);
    assert_eq!(report.second_moment, "14");
    assert_eq!(report.moments[0].value, "392");
    assert!((report.norms[1].value - 392f64.powf(0.25)).abs() < 1e-12);
    let w42 = report.bounds.iter().find(|b| b.kind == "width42").unwrap();
    assert!(w42.holds && !w42.tight);
    assert_eq!(serde_json::to_value(&w42.rhs).unwrap(), serde_json::json!("2156/3"));
    let kinds: Vec<&str> = report.bounds.iter().map(|b| b.kind.as_str()).collect();
    for kind in ["classical", "width42", "width2r", "refined2r", "corollary"] {
        assert!(kinds.contains(&kind), "missing {kind}");
    }
}

#[test]
fn analyze_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "f.pbf", RUNNING_EXAMPLE);
    let args = ["analyze", file.to_str().unwrap(), "--moments", "1,2,3", "--norms", "1.5,3", "--json"];
    assert_eq!(pbf(&args).1, pbf(&args).1);
    assert_eq!(pbf(&args).1, pbf(&["--sequential", args[0], args[1], args[2], args[3], args[4], args[5], args[6]]).1);
}

#[test]
fn analyze_text_output() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "f.pbf", RUNNING_EXAMPLE);
    let (code, out, _) = pbf(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("E[f^4]       392"));
    assert!(out.contains("2156/3"));
}

#[test]
fn parse_errors_exit_2_with_line() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.pbf", "n 2\n1 1 1\n");
    let (code, _, err) = pbf(&["analyze", file.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
    let (code, _, err) = pbf(&["analyze", "/nonexistent/file.pbf"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(pbf(&["frobnicate"]).0, 2);
    assert_eq!(pbf(&["bound"]).0, 2);
    assert_eq!(pbf(&["bound", "--width42", "1", "4", "--qp", "4", "2", "1"]).0, 2);
    assert_eq!(pbf(&["bound", "--refined"]).0, 2);
    assert_eq!(pbf(&["bound", "--classical", "2", "3", "1"]).0, 2);
    assert_eq!(pbf(&["bound", "--width42", "3", "0"]).0, 2);
    let (code, out, _) = pbf(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("analyze"));
}

#[test]
fn bound_coefficients() {
    let (code, out, _) = pbf(&["bound", "--width42", "1", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("C^4 = 5/2"), "{out}");
    let (_, out, _) = pbf(&["bound", "--width2r", "2", "2"]);
    assert!(out.contains("C^4 = 48"), "{out}");
    let (_, out, _) = pbf(&["bound", "--width2r", "3", "1", "--refined"]);
    assert!(out.contains("C^6 = 600"), "{out}");
    let (_, out, _) = pbf(&["bound", "--classical", "4", "2", "2"]);
    assert!(out.contains("C = 3"), "{out}");
    let (_, out, _) = pbf(&["bound", "--qp", "3", "2", "3"]);
    assert!(out.contains("r = 2"), "{out}");
}

#[test]
fn verify_theorem1_gate() {
    let (code, out, _) = pbf(&["verify", "theorem1", "--trials", "1000", "--nmax", "10", "--mmax", "32", "--seed", "7"]);
    assert_eq!(code, 0);
    assert!(out.contains("trials 1000") && out.contains("violations 0"), "{out}");
}

#[test]
fn verify_other_targets() {
    let (code, out, _) = pbf(&["verify", "theorem2", "--trials", "50", "--seed", "3", "--refined"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("checks 300"), "{out}");
    let (code, out, _) = pbf(&["verify", "theorem2", "--trials", "20", "--r", "4", "--nmax", "6", "--mmax", "12"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = pbf(&["verify", "corollary", "--trials", "30", "--q", "5", "--p", "2.5"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = pbf(&["verify", "corollary", "--trials", "30"]);
    assert_eq!(code, 0);
    assert!(out.contains("checks 240"), "{out}");
    let (code, out, _) = pbf(&["verify", "maxlin", "--trials", "100", "--mmax", "20"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(pbf(&["verify", "corollary", "--q", "2", "--p", "3"]).0, 2);
    assert_eq!(pbf(&["verify", "theorem2", "--r", "0"]).0, 2);
}

#[test]
fn maxlin_kernel_on_system_a() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.mla", SYSTEM_A);
    let (code, out, _) = pbf(&["maxlin", "kernel", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS_THROUGH"));
    assert!(out.contains("16k^2(2rho+1) = 80"), "{out}");
    let (_, json, _) = pbf(&["maxlin", "kernel", file.to_str().unwrap(), "--json"]);
    let report: KernelReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.m_bound, "80");
    assert_eq!(parse_maxlin(&report.kernel).unwrap(), parse_maxlin(SYSTEM_A).unwrap());
}

#[test]
fn maxlin_kernel_yes_by_bound() {
    let mut text = String::from("maxlin 48 48 1\n");
    for i in 1..=48 {
        text.push_str(&format!("1 1 {i}\n"));
    }
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "u.mla", &text);
    let (code, json, _) = pbf(&["maxlin", "kernel", file.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let report: KernelReport = serde_json::from_str(&json).unwrap();
    assert_eq!(report.verdict, "YES_BY_BOUND");
    assert_eq!(report.kernel, "maxlin 2 2 1\n1 1 1\n1 1 2\n");
    // 48 variables is past the brute-force cap
    assert_eq!(pbf(&["maxlin", "solve", file.to_str().unwrap()]).0, 2);
}

#[test]
fn maxlin_solve_and_check() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.mla", SYSTEM_A);
    let (code, json, _) = pbf(&["maxlin", "solve", file.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let solved: SolveReport = serde_json::from_str(&json).unwrap();
    assert_eq!((solved.max_weight, solved.max_q, solved.answer), (2, 1, false));
    assert_eq!(solved.witness, vec![1, 1, 1]);
    let (code, json, _) = pbf(&["maxlin", "check", file.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let check: CheckReport = serde_json::from_str(&json).unwrap();
    assert!(check.alon_holds && check.sound && check.size_bound_ok && !check.decide);
    let bad = write(&dir, "bad.mla", "maxlin 2 2 0\n1 1 1 2\n1 1 2 1\n");
    let (code, _, err) = pbf(&["maxlin", "check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn examples_and_scan() {
    let (code, out, _) = pbf(&["examples", "affine", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n 3\n1\n1 1\n1 2\n1 3\n");
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("full.pbf");
    assert_eq!(pbf(&["examples", "full", "--n", "3", "--out", path.to_str().unwrap()]).0, 0);
    let full = parse_function(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(full.m(), 8);
    let (code, json, _) = pbf(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(code, 0);
    let report: AnalysisReport = serde_json::from_str(&json).unwrap();
    assert!(report.bounds.iter().find(|b| b.kind == "width42").unwrap().tight);
    assert_eq!(pbf(&["examples", "full", "--n", "30"]).0, 2);

    let (code, csv, _) = pbf(&["scan", "--family", "affine", "--nmax", "3", "--rmax", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "family,n,r,width,ratio,reference,implied_c");
    assert_eq!(lines.len(), 1 + 3 * 2);
    let (code, csv, _) = pbf(&["scan", "--family", "all", "--nmax", "2", "--rmax", "2"]);
    assert_eq!(code, 0);
    assert_eq!(csv.lines().count(), 1 + 4 * 2 * 2);
    assert_eq!(pbf(&["scan", "--family", "bogus", "--nmax", "2", "--rmax", "2"]).0, 2);
}

#[test]
fn binary_reads_environment() {
    let bin = env!("CARGO_BIN_EXE_pbf");
    let seeded = |seed: &str| {
        Command::new(bin)
            .args(["verify", "theorem1", "--trials", "5"])
            .env("PBF_SEED", seed)
            .output()
            .unwrap()
    };
    let out = seeded("11");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("seed 11"));
    let flag = Command::new(bin)
        .args(["verify", "theorem1", "--trials", "5", "--seed", "12"])
        .env("PBF_SEED", "11")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&flag.stdout).contains("seed 12"));

    let dir = TempDir::new().unwrap();
    let file = write(&dir, "f.pbf", RUNNING_EXAMPLE);
    let capped = Command::new(bin)
        .args(["analyze", file.to_str().unwrap(), "--moments", "2"])
        .env("PBF_DENSE_CAP", "2")
        .output()
        .unwrap();
    // Moments use the sparse route, so a tiny dense cap does not matter here.
    assert!(capped.status.success());
    let bad = Command::new(bin).args(["nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn function_files_round_trip(seed in any::<u64>()) {
        let f = generate_functions(1, FunctionShape::new(12, 40, 1000), seed).unwrap().remove(0);
        prop_assert_eq!(parse_function(&write_function(&f)).unwrap(), f);
    }

    #[test]
    fn maxlin_files_round_trip(seed in any::<u64>()) {
        let shape = SystemShape { n_max: 20, m_max: 30, w_max: 50, k_max: 9 };
        let s = random_system(shape, seed).unwrap();
        prop_assert_eq!(parse_maxlin(&write_maxlin(&s)).unwrap(), s);
    }
}
