use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fim_cli::{Algo, Certificate, RunReport};
use fim_core::extremal::conjecture_gap_bound;
use fim_core::rational;
use tempfile::TempDir;

fn fim(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fim"))
        .args(args)
        .current_dir(dir)
        .env_remove("FIM_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn ok(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

#[test]
fn gen_families() {
    let dir = TempDir::new().unwrap();
    let t = ok(&fim(&["gen", "t-star", "--delta", "3"], dir.path()));
    assert!(t.starts_with("p 7 6\n"));
    let b = ok(&fim(&["gen", "blowup-c5", "--delta", "4"], dir.path()));
    assert!(b.starts_with("p 10 20\n"));
    let r1 = ok(&fim(
        &["gen", "random", "--n", "12", "--delta", "3", "--seed", "7"],
        dir.path(),
    ));
    let r2 = ok(&fim(
        &["gen", "random", "--n", "12", "--delta", "3", "--seed", "7"],
        dir.path(),
    ));
    assert_eq!(r1, r2);
    assert_eq!(fim(&["gen", "cycle", "--n", "2"], dir.path()).status.code(), Some(3));
}

#[test]
fn solve_examples() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "c5.graph", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    write(dir.path(), "p3.graph", "0 1\n1 2\n");
    ok(&fim(
        &["gen", "t-star", "--delta", "3", "--out", "tstar3.graph"],
        dir.path(),
    ));

    let r: RunReport = serde_json::from_str(&ok(&fim(&["solve", "--algo", "lp", "c5.graph"], dir.path()))).unwrap();
    assert_eq!(r.nu_s_star.as_deref(), Some("5/3"));
    let r: RunReport =
        serde_json::from_str(&ok(&fim(&["solve", "--algo", "exact", "tstar3.graph"], dir.path()))).unwrap();
    assert_eq!(r.nu_s, Some(3));
    let r: RunReport =
        serde_json::from_str(&ok(&fim(&["solve", "--algo", "subcubic", "p3.graph"], dir.path()))).unwrap();
    assert_eq!(r.matching_size, Some(1));
    assert_eq!(r.dual_total.as_deref(), Some("1/1"));
    let Certificate::Subcubic(cert) = &r.certificate else {
        panic!("wrong certificate")
    };
    assert!(cert.ratio_ok);
}

#[test]
fn error_classes_map_to_exit_codes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "bad.graph", "0 1 2\n");
    write(dir.path(), "k4.graph", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    assert_eq!(fim(&["solve", "missing.graph"], dir.path()).status.code(), Some(2));
    assert_eq!(fim(&["solve", "bad.graph"], dir.path()).status.code(), Some(2));
    let out = fim(&["solve", "--algo", "subcubic", "k4.graph"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("3-regular"));
    let capped = Command::new(env!("CARGO_BIN_EXE_fim"))
        .args(["solve", "--algo", "exact", "k4.graph"])
        .current_dir(dir.path())
        .env("FIM_ORACLE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn verify_accepts_fresh_and_rejects_tampered_reports() {
    let dir = TempDir::new().unwrap();
    ok(&fim(
        &[
            "gen", "random", "--n", "14", "--delta", "3", "--seed", "11", "--out", "g.graph",
        ],
        dir.path(),
    ));
    for algo in ["lp", "exact", "dual", "subcubic", "localratio", "auto"] {
        let out = fim(&["solve", "--algo", algo, "g.graph", "--out", "r.json"], dir.path());
        if out.status.code() == Some(3) {
            continue;
        }
        ok(&out);
        ok(&fim(&["verify", "r.json"], dir.path()));
    }

    ok(&fim(
        &["solve", "--algo", "lp", "g.graph", "--out", "lp.json"],
        dir.path(),
    ));
    let mut r: RunReport = serde_json::from_str(&fs::read_to_string(dir.path().join("lp.json")).unwrap()).unwrap();
    let Certificate::Lp { dual, .. } = &mut r.certificate else {
        panic!()
    };
    let e = dual.values().iter().position(|v| *v > rational::zero()).unwrap();
    dual.set(e, rational::zero());
    write(dir.path(), "zeroed.json", &serde_json::to_string(&r).unwrap());
    let out = fim(&["verify", "zeroed.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("covering constraint of edge"));

    ok(&fim(
        &["solve", "--algo", "exact", "g.graph", "--out", "ex.json"],
        dir.path(),
    ));
    let mut r: RunReport = serde_json::from_str(&fs::read_to_string(dir.path().join("ex.json")).unwrap()).unwrap();
    let g = fim_core::Graph::parse(&r.graph).unwrap();
    let Certificate::Exact { matching } = &mut r.certificate else {
        panic!()
    };
    let (u, _) = g.edges()[matching[0]];
    let neighbor = g.incident(u).iter().copied().find(|&f| f != matching[0]).unwrap();
    matching.push(neighbor);
    write(dir.path(), "adjacent.json", &serde_json::to_string(&r).unwrap());
    let out = fim(&["verify", "adjacent.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not induced"));

    write(dir.path(), "junk.json", "{\"instance\": 3}");
    assert_eq!(fim(&["verify", "junk.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn lp_dump_writes_both_programs() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "c5.graph", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    ok(&fim(
        &["solve", "--algo", "lp", "c5.graph", "--lp-dump", "c5"],
        dir.path(),
    ));
    let primal = fs::read_to_string(dir.path().join("c5.primal.lp")).unwrap();
    let dual = fs::read_to_string(dir.path().join("c5.dual.lp")).unwrap();
    assert!(primal.contains("\nMaximize\n"));
    assert!(dual.contains("\nMinimize\n") && dual.contains(">= 1"));
}

#[test]
fn batch_blowups_match_the_bound() {
    let dir = TempDir::new().unwrap();
    let manifest: Vec<_> = (2..=6)
        .map(|d| serde_json::json!({"family": "blownup_c5", "delta": d}))
        .collect();
    write(dir.path(), "m.json", &serde_json::to_string(&manifest).unwrap());
    let csv = ok(&fim(&["batch", "m.json", "--jobs", "3"], dir.path()));
    let mut rows = csv.lines();
    let header: Vec<&str> = rows.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    for (d, line) in (2..=6).zip(rows) {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(
            cells[col("gap")],
            rational::format(&conjecture_gap_bound(d).unwrap()),
            "delta {d}"
        );
        assert_eq!(cells[col("nu_s")], "1");
        assert_eq!(cells[col("error")], "");
    }
}

#[test]
fn batch_is_deterministic_and_isolates_errors() {
    let dir = TempDir::new().unwrap();
    let manifest = r#"[
        {"family": "random_bounded", "n": 14, "delta": 4, "seed": 1},
        {"family": "t_star", "delta": 0},
        {"family": "random_bounded", "n": 18, "delta": 3, "seed": 2},
        {"family": 17},
        {"family": "cycle", "n": 7}
    ]"#;
    write(dir.path(), "m.json", manifest);
    let a = ok(&fim(&["batch", "m.json", "--jobs", "4"], dir.path()));
    ok(&fim(&["batch", "m.json", "--jobs", "1", "--out", "b.csv"], dir.path()));
    assert_eq!(a, fs::read_to_string(dir.path().join("b.csv")).unwrap());
    let errors: Vec<bool> = a.lines().skip(1).map(|l| !l.ends_with(',')).collect();
    assert_eq!(errors, [false, true, false, true, false]);

    write(dir.path(), "empty.json", "[]");
    assert_eq!(ok(&fim(&["batch", "empty.json"], dir.path())).lines().count(), 1);
    write(dir.path(), "broken.json", "[{");
    assert_eq!(fim(&["batch", "broken.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn gap_and_params() {
    let dir = TempDir::new().unwrap();
    ok(&fim(
        &["gen", "blowup-c5", "--delta", "4", "--out", "b4.graph"],
        dir.path(),
    ));
    let v: serde_json::Value = serde_json::from_str(&ok(&fim(&["gap", "b4.graph"], dir.path()))).unwrap();
    assert_eq!(v["gap"], "20/7");
    assert_eq!(v["within_bound"], true);
    let p: serde_json::Value = serde_json::from_str(&ok(&fim(&["params", "--delta", "5"], dir.path()))).unwrap();
    assert_eq!(p["q_feasible"], true);
    assert_eq!(p["epsilon"], "401/20000");
    assert_eq!(
        fim(&["params", "--delta", "5", "--epsilon", "1/7"], dir.path())
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    ok(&fim(
        &[
            "gen", "random", "--n", "16", "--delta", "4", "--seed", "3", "--out", "g.graph",
        ],
        dir.path(),
    ));
    for algo in [Algo::Lp, Algo::Dual, Algo::Localratio] {
        let name = serde_json::to_value(algo).unwrap();
        let name = name.as_str().unwrap();
        let strip = |s: String| {
            let mut r: RunReport = serde_json::from_str(&s).unwrap();
            r.wall_time_ms = 0;
            serde_json::to_string(&r).unwrap()
        };
        let a = fim(&["solve", "--algo", name, "g.graph"], dir.path());
        if a.status.code() == Some(3) {
            continue;
        }
        let b = fim(&["solve", "--algo", name, "g.graph"], dir.path());
        assert_eq!(strip(ok(&a)), strip(ok(&b)), "{name}");
    }
}
