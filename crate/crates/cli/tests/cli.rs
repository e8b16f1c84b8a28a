use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn kgb(args: &[&str]) -> Output {
    kgb_env(args, &[])
}

fn kgb_env(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kgb"));
    cmd.args(args).env_remove("KGB_WORKDIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn ok(o: Output) -> String {
    assert!(o.status.success(), "exit {:?}\nstdout {}\nstderr {}", o.status.code(), stdout(&o), stderr(&o));
    stdout(&o)
}

fn spec(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../pipelines").join(format!("{name}.json")).display().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn gen(dir: &Path) -> PathBuf {
    let bench = dir.join("bench");
    ok(kgb(&["gen", "--films", "100", "--seed", "42", "--out", s(&bench)]));
    bench
}

#[test]
fn gen_audit_run_eval_rank() {
    let dir = tempfile::tempdir().unwrap();
    let bench = gen(dir.path());
    assert!(ok(kgb(&["audit", "--bench", s(&bench)])).contains("audit clean"));

    let pipelines = ["RDFa", "JSONb", "TEXTa"];
    for name in pipelines {
        assert!(ok(kgb(&["validate", "--spec", &spec(name)])).contains("valid"));
        let out = dir.path().join("runs").join(name);
        let work = dir.path().join("staging").join(name);
        let printed = ok(kgb_env(
            &["run", "--spec", &spec(name), "--bench", s(&bench), "--increments", "3", "--out", s(&out), "--clean"],
            &[("KGB_WORKDIR", &work)],
        ));
        assert_eq!(printed.lines().count(), 3);
        assert!(work.join("inc3").is_dir() && !out.join("work").exists());

        let mut facts = Vec::new();
        for i in 1..=3 {
            let kg = std::fs::read_to_string(out.join(format!("kg_{i}.nt"))).unwrap();
            facts.push(kg.lines().count());
            assert!(out.join(format!("run_{i}.report.json")).is_file());
        }
        assert!(facts.windows(2).all(|w| w[0] <= w[1]), "{name}: {facts:?}");

        let kg_glob = format!("{}/kg_*.nt", out.display());
        let printed =
            ok(kgb(&["eval", "--bench", s(&bench), "--kg", &kg_glob, "--artifacts", s(&work), "--out", s(&out)]));
        assert_eq!(printed.lines().count(), 3);
        let report: Value = serde_json::from_str(&std::fs::read_to_string(out.join("eval_3.json")).unwrap()).unwrap();
        assert_eq!(report["pipeline"], name);
        assert_eq!(report["increment"], 3);
    }

    let reports = format!("{}/runs/*/eval_3.json", dir.path().display());
    let ranking = dir.path().join("ranking");
    let table = ok(kgb(&["rank", "--reports", &reports, "--scheme", "equal", "--out", s(&ranking)]));
    assert!(table.starts_with("scheme equal (0.25, 0.25, 0.25, 0.25)\n"), "{table}");
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(ranking.join("ranking_equal.json")).unwrap()).unwrap();
    let rows = written["ranking"].as_array().unwrap();
    let mut names: Vec<&str> = rows.iter().map(|r| r["pipeline"].as_str().unwrap()).collect();
    let totals: Vec<f64> = rows.iter().map(|r| r["total"].as_f64().unwrap()).collect();
    assert!(totals.windows(2).all(|w| w[0] >= w[1]));
    names.sort();
    assert_eq!(names, ["JSONb", "RDFa", "TEXTa"]);
    assert_eq!(std::fs::read_to_string(ranking.join("ranking_equal.txt")).unwrap(), table);

    let all = ok(kgb(&["rank", "--reports", &reports, "--all", "--out", s(&ranking)]));
    assert_eq!(all.matches("scheme ").count(), 5);
    for scheme in ["equal", "quantity", "quality", "reference", "efficiency"] {
        assert!(ranking.join(format!("ranking_{scheme}.json")).is_file());
    }

    // Peak memory known for one pipeline only: ranking still works and
    // flags the others as duration-only.
    let rdfa = dir.path().join("runs/RDFa/eval_3.json");
    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(&rdfa).unwrap()).unwrap();
    report["run"]["peakMemoryBytes"] = Value::from(50_000_000u64);
    std::fs::write(&rdfa, serde_json::to_string_pretty(&report).unwrap()).unwrap();
    let mixed = ok(kgb(&["rank", "--reports", &reports, "--scheme", "equal"]));
    let flagged: Vec<&str> = mixed.lines().filter(|l| l.ends_with("(GM4 duration only)")).collect();
    assert_eq!(flagged.len(), 2, "{mixed}");
    assert!(flagged.iter().all(|l| !l.contains("RDFa")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"name":"bad","sourceFormat":"RDF","tasks":[{"id":"a","task":"graph_align","inputs":["$seed"]},{"id":"f","task":"fusion_first","inputs":["$seed","$source","a.out0"]}],"output":"a.out0"}"#,
    )
    .unwrap();
    let o = kgb(&["validate", "--spec", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(msg.contains("takes 2 input(s), got 1") && msg.contains("pipeline output must be RDF"), "{msg}");

    assert_eq!(kgb(&["validate", "--spec", "/nonexistent/spec.json"]).status.code(), Some(1));
    assert_eq!(kgb(&["gen", "--films", "100", "--out", s(dir.path()), "--colour"]).status.code(), Some(1));
    assert_eq!(kgb(&["gen", "--films", "5", "--out", s(&dir.path().join("tiny"))]).status.code(), Some(1));
    assert_eq!(
        kgb(&["rank", "--reports", &format!("{}/*.json.none", dir.path().display()), "--all"]).status.code(),
        Some(2)
    );
    assert_eq!(kgb(&["rank", "--reports", "x", "--scheme", "equal", "--all"]).status.code(), Some(1));
    assert_eq!(kgb(&["audit", "--bench", s(&dir.path().join("missing"))]).status.code(), Some(2));
    assert!(kgb(&["--help"]).status.success());

    let bench = gen(dir.path());
    let (text_spec, out) = (spec("TEXTa"), dir.path().join("r"));
    let run = |extra: &[&str]| {
        let mut args = vec!["run", "--spec", &text_spec, "--bench", s(&bench), "--out", s(&out)];
        args.extend_from_slice(extra);
        kgb(&args)
    };
    let o = run(&["--increments", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("increments must be ≥ 1"));
    let o = run(&["--set", "linkThreshold=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("linkThreshold"));
    assert_eq!(run(&["--set", "=3"]).status.code(), Some(1));
    assert_eq!(run(&["--increments", "9"]).status.code(), Some(2));
    ok(run(&["--increments", "1", "--set", "entities.linkThreshold=0.95"]));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for d in [&a, &b] {
        ok(kgb(&["gen", "--films", "40", "--seed", "3", "--out", s(d)]));
    }
    for f in ["manifest.json", "reference.nt", "seed.nt", "source2/source.json", "source3/gt/matches.er.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}
