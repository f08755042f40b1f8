use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cumdev_cli::config::{ExperimentConfig, Kind};
use cumdev_cli::output::{write_atomic, ResultRecord};
use cumdev_core::rmt::{exact_cumulant, CircularEnsembleSpec};

fn cumdev(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cumdev")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run_ok(config: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", "--config", config.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = cumdev(&args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    out
}

const SUBGRAPH: &str = "kind = \"subgraph\"\ntrials = 20000\nseed = 5\n\n[subgraph]\nn = 12\np = 0.4\n";

#[test]
fn identical_runs_give_identical_payloads() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tri.toml", SUBGRAPH);
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    run_ok(&cfg, &["--out", a.to_str().unwrap()]);
    run_ok(&cfg, &["--out", b.to_str().unwrap(), "--threads", "3"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let (ja, jb) = (dir.path().join("a.json"), dir.path().join("b.json"));
    run_ok(&cfg, &["--format", "json", "--out", ja.to_str().unwrap()]);
    run_ok(&cfg, &["--format", "json", "--out", jb.to_str().unwrap()]);
    let ra: ResultRecord = serde_json::from_slice(&fs::read(&ja).unwrap()).unwrap();
    let rb: ResultRecord = serde_json::from_slice(&fs::read(&jb).unwrap()).unwrap();
    assert_eq!(serde_json::to_vec(&ra.payload).unwrap(), serde_json::to_vec(&rb.payload).unwrap());

    let other = dir.path().join("c.csv");
    run_ok(&cfg, &["--seed", "6", "--out", other.to_str().unwrap()]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&other).unwrap());
}

#[test]
fn records_reparse_and_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tri.toml", SUBGRAPH);
    let target = dir.path().join("r.json");
    run_ok(&cfg, &["--format", "json", "--out", target.to_str().unwrap()]);
    let text = fs::read_to_string(&target).unwrap();
    let record: ResultRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(record.config.kind, Kind::Subgraph);
    assert!(!record.build_id.is_empty());
    record.config.params().unwrap();
    let echo = serde_json::to_string(&record.config).unwrap();
    assert_eq!(ExperimentConfig::parse(&echo, Path::new("echo.json")).unwrap(), record.config);
    assert_eq!(serde_json::to_string_pretty(&record).unwrap() + "\n", text);
}

#[test]
fn csv_has_stable_header_and_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "tri.toml", SUBGRAPH);
    run_ok(&cfg, &[]);
    let text = fs::read_to_string(dir.path().join("tri.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("j,cumulant,std_error,condition_bound,dependency_bound"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1.0000000000000000e0");
    let mantissa = first[1].split('e').next().unwrap();
    assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);
}

#[test]
fn rmt_exact_matches_direct_calls() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "rmt.toml", "kind = \"rmt-exact\"\n\n[rmt-exact]\nbeta = 2\nn = 5\nj_max = 6\n");
    let target = dir.path().join("rmt.json");
    run_ok(&cfg, &["--format", "json", "--out", target.to_str().unwrap()]);
    let record: ResultRecord = serde_json::from_slice(&fs::read(&target).unwrap()).unwrap();
    let e = CircularEnsembleSpec::new(2, 5).unwrap();
    assert_eq!(record.payload.rows.len(), 6);
    for row in &record.payload.rows {
        let j = row[0].unwrap() as usize;
        assert_eq!(row[1].unwrap(), exact_cumulant(&e, j).unwrap());
    }
}

#[test]
fn invalid_probability_exits_2_naming_the_invariant() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "kind = \"subgraph\"\n[subgraph]\nn = 10\np = 1.5\n");
    let out = cumdev(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("edge probability") && err.contains("[0, 1]"), "{err}");
    assert!(!dir.path().join("bad.csv").exists());
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "kind = \"chain\"\n\n[chain]\nn = 10\nlaw = [\n");
    let out = cumdev(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line") && err.contains("column"), "{err}");
}

#[test]
fn numerical_failures_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k.txt", "2 0\n0 0.5\n");
    let cfg = write(
        dir.path(),
        "dpp.toml",
        "kind = \"dpp\"\ntrials = 1000\n[dpp]\nkernel = { family = \"custom\", path = \"k.txt\" }\na = 0.0\nb = 1.0\npoints = 2\n",
    );
    let out = cumdev(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dpp"));
}

#[test]
fn listing_covers_every_kind() {
    let text = String::from_utf8(cumdev(&["list-experiments"]).stdout).unwrap();
    let json: serde_json::Value = serde_json::from_slice(&cumdev(&["list-experiments", "--json"]).stdout).unwrap();
    let entries = json.as_array().unwrap();
    assert_eq!(entries.len(), 7);
    for kind in Kind::ALL {
        assert!(text.lines().any(|l| l.starts_with(kind.name())), "{}", kind.name());
        let e = entries.iter().find(|e| e["kind"] == kind.name()).unwrap();
        assert!(!e["topic"].as_str().unwrap().is_empty());
        assert!(!e["params"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_suites() {
    assert_eq!(cumdev(&["verify", "nightly"]).status.code(), Some(2));
    let out = cumdev(&["verify", "fast"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("7 of 7 criteria passed"), "{text}");
}

#[test]
fn atomic_write_replaces_without_leftovers() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.csv");
    fs::write(&target, "old").unwrap();
    write_atomic(&target, "new contents\n").unwrap();
    assert_eq!(fs::read_to_string(&target).unwrap(), "new contents\n");
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut seen = Vec::new();
    for entry in fs::read_dir(&dir).unwrap() {
        let cfg = ExperimentConfig::load(&entry.unwrap().path()).unwrap();
        cfg.params().unwrap();
        seen.push(cfg.kind);
    }
    for kind in Kind::ALL {
        assert!(seen.contains(&kind), "no shipped config for {}", kind.name());
    }
}
