use std::path::Path;
use std::process::{Command, Output};

use mcs::bench::read_csv;
use mcs::plot::aggregate;
use mcs::{dimacs, trace};
use mcs_core::oracle::{is_independent, mis_exact, verify_common_subgraph, OracleBudget};
use mcs_core::MCSResult;

fn mcs(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcs")).args(args).current_dir(dir).output().unwrap()
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = mcs(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str], dir: &Path) -> i32 {
    mcs(args, dir).status.code().unwrap()
}

#[test]
fn gen_then_solve_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "9", "--p", "0.4", "--seed", "1", "--out", "a.dimacs"], d);
    ok(&["gen", "--n", "8", "--p", "0.4", "--seed", "2", "--out", "b.dimacs"], d);
    let g1 = dimacs::read(&d.join("a.dimacs")).unwrap();
    let g2 = dimacs::read(&d.join("b.dimacs")).unwrap();
    assert_eq!((g1.order(), g2.order()), (9, 8));
    for method in ["rd", "aih", "kaih", "krd"] {
        let stdout = ok(
            &[
                "solve",
                "--g1",
                "a.dimacs",
                "--g2",
                "b.dimacs",
                "--method",
                method,
                "--seed",
                "3",
                "--json-out",
                "r.json",
            ],
            d,
        );
        let result: MCSResult = serde_json::from_str(&stdout).unwrap();
        assert_eq!(std::fs::read_to_string(d.join("r.json")).unwrap(), stdout);
        assert_eq!(result.size, result.mapping.len());
        assert_eq!(result.seed, 3);
        assert!(verify_common_subgraph(&g1, &g2, &result.mapping));
        let value: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        for key in ["method", "size", "mapping", "stats", "seed"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn solve_dumps_schedule_and_trajectory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "6", "--p", "0.5", "--seed", "4", "--out", "a.dimacs"], d);
    ok(
        &[
            "solve",
            "--g1",
            "a.dimacs",
            "--g2",
            "a.dimacs",
            "--bound",
            "paper",
            "--schedule-out",
            "s.csv",
            "--trajectory-out",
            "t.csv",
        ],
        d,
    );
    let schedule = std::fs::read_to_string(d.join("s.csv")).unwrap();
    assert!(schedule.starts_with("m,gamma_hat_m,alpha\n"));
    let trajectory = std::fs::read_to_string(d.join("t.csv")).unwrap();
    assert!(trajectory.starts_with("iter,objective,delta_norm\n1,"));
}

#[test]
fn kernelize_dump_lifts_back() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--n", "14", "--p", "0.25", "--seed", "5", "--out", "g.dimacs"], d);
    for rules in ["all", "lineartime"] {
        ok(
            &[
                "kernelize",
                "--in",
                "g.dimacs",
                "--rules",
                rules,
                "--inexact",
                "off",
                "--out-kernel",
                "k.dimacs",
                "--out-trace",
                "k.trace",
            ],
            d,
        );
        let g = dimacs::read(&d.join("g.dimacs")).unwrap();
        let kernel = dimacs::read(&d.join("k.dimacs")).unwrap();
        let result = trace::read(&d.join("k.trace")).unwrap().into_kernel_result(kernel).unwrap();
        let budget = OracleBudget::default();
        let lifted = result.reconstruct_mis(&mis_exact(&result.kernel, budget).unwrap()).unwrap();
        assert!(is_independent(&g, &lifted));
        assert_eq!(lifted.len(), mis_exact(&g, budget).unwrap().len(), "{rules}");
    }
    let summary: serde_json::Value = serde_json::from_str(&ok(
        &["kernelize", "--in", "g.dimacs", "--inexact", "on", "--out-kernel", "k.dimacs", "--out-trace", "k.trace"],
        d,
    ))
    .unwrap();
    assert_eq!(summary["kernel_order"], 0);
}

#[test]
fn bench_is_reproducible_and_plots() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = |out: &'static str| {
        ["bench", "table2", "--n", "7", "--trials", "2", "--densities", "0.2,0.8", "--seed", "9", "--out", out]
    };
    ok(&args("a.csv"), d);
    ok(&args("b.csv"), d);
    let a = std::fs::read(d.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(d.join("b.csv")).unwrap());
    let rows = read_csv(&d.join("a.csv")).unwrap();
    assert_eq!(rows.len(), 2 * 2 * 3);

    ok(&["plot", "--in", "a.csv", "--out", "a.svg"], d);
    let svg = std::fs::read_to_string(d.join("a.svg")).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
    // the chart's tooltips carry the same aggregates as an independent pass
    for series in aggregate(&rows).unwrap() {
        for q in &series.points {
            let sizes: Vec<f64> =
                rows.iter().filter(|r| r.method == series.method && r.p == q.p).map(|r| r.size as f64).collect();
            let mean = sizes.iter().sum::<f64>() / sizes.len() as f64;
            let std = (sizes.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / sizes.len() as f64).sqrt();
            assert!(svg.contains(&format!("{} p={} mean={mean:.4} std={std:.4} n=2", series.method, q.p)));
        }
    }

    ok(&["bench", "kernel", "--n", "6", "--trials", "1", "--densities", "0.5", "--out", "k.csv"], d);
    let rows = read_csv(&d.join("k.csv")).unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].accuracy.is_some() && rows[0].kernel_size.is_some());
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("bad.dimacs"), "p edge 3 1\ne 1 5\n").unwrap();
    std::fs::write(d.join("empty.csv"), "p,seed,method,size,accuracy,iterations,kernel_size,wall_ms\n").unwrap();
    ok(&["gen", "--n", "3", "--p", "0.5", "--out", "g.dimacs"], d);
    assert_eq!(code(&["gen", "--n", "3", "--p", "1.5", "--out", "x.dimacs"], d), 2);
    assert_eq!(code(&["solve", "--g1", "g.dimacs", "--g2", "g.dimacs", "--tol", "0"], d), 2);
    assert_eq!(code(&["solve", "--g1", "g.dimacs", "--g2", "g.dimacs", "--method", "nope"], d), 2);
    assert_eq!(code(&["bench", "table2", "--trials", "0", "--out", "x.csv"], d), 2);
    assert_eq!(code(&["plot", "--in", "empty.csv", "--out", "x.svg"], d), 2);
    assert_eq!(code(&["solve", "--g1", "missing.dimacs", "--g2", "g.dimacs"], d), 3);
    assert_eq!(code(&["gen", "--n", "3", "--p", "0.5", "--out", "no/such/dir/g.dimacs"], d), 3);
    let out = mcs(&["solve", "--g1", "bad.dimacs", "--g2", "g.dimacs"], d);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.dimacs:2:"));
}
