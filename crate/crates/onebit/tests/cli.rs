use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn onebit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_onebit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sweep_to(path: &Path, extra: &[&str]) -> Output {
    let mut args = vec![
        "sweep",
        "--nt",
        "8",
        "--k",
        "2",
        "--trials",
        "30",
        "--snr",
        "0:10:5",
        "--out",
        path.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    onebit(&args)
}

#[test]
fn sweep_rows_and_header() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ser.csv");
    let out = sweep_to(&csv, &["--methods", "fgreedy,zf"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], onebit::report::CSV_HEADER.join(","));
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines[1].starts_with("fgreedy,0"));
    assert!(lines[6].starts_with("zf,10"));
    // untimed runs leave the timing column empty
    assert!(lines[1..].iter().all(|l| l.ends_with(',')));
    assert!(dir.path().join("ser.csv.manifest.json").exists());
}

#[test]
fn same_seed_same_bytes_and_manifest_replays() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let c = dir.path().join("c.csv");
    assert!(sweep_to(&a, &["--seed", "5"]).status.success());
    assert!(sweep_to(&b, &["--seed", "5"]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let manifest = dir.path().join("a.csv.manifest.json");
    let replay = onebit(&[
        "sweep",
        "--config",
        manifest.to_str().unwrap(),
        "--out",
        c.to_str().unwrap(),
    ]);
    assert!(
        replay.status.success(),
        "{}",
        String::from_utf8_lossy(&replay.stderr)
    );
    assert_eq!(fs::read(&a).unwrap(), fs::read(&c).unwrap());

    let d = dir.path().join("d.csv");
    assert!(sweep_to(&d, &["--seed", "6"]).status.success());
    assert_ne!(fs::read(&a).unwrap(), fs::read(&d).unwrap());
}

#[test]
fn flat_config_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(
        &cfg,
        "nt = 8\nk = 2\ntrials = 5\nsnr_db = 10\nmethods = qzf\n",
    )
    .unwrap();
    let out = onebit(&["sweep", "--config", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("qzf,10.0,0.0,5,"));
}

#[test]
fn bad_input_fails_cleanly() {
    let out = onebit(&["sweep", "--k", "0", "--trials", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    assert!(!onebit(&["sweep", "--methods", "mmse"]).status.success());
    assert!(!onebit(&["sweep", "--config", "/nonexistent/run.cfg"])
        .status
        .success());
    assert!(!onebit(&["oracle", "--nt", "16"]).status.success());
}

#[test]
fn oracle_report() {
    let out = onebit(&["oracle", "--instances", "20", "--seed", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["dominance_violations"], 0);
    assert_eq!(report["greedy_step_violations"], 0);
    assert!(
        report["mean_t_lp"].as_f64().unwrap() >= report["mean_t_star"].as_f64().unwrap() - 1e-8
    );
}

#[test]
fn bench_table() {
    let out = onebit(&[
        "bench",
        "--nt",
        "8,16",
        "--k",
        "2",
        "--repeats",
        "2",
        "--methods",
        "zf,fgreedy",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 4);
}
