use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lamedtn"))
}

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn lamedtn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

#[test]
fn verify_algebra_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = run(&["verify-algebra", "--out", out, "--threads", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS u0-maps-xi-to-e1"));
    assert!(text.contains("NOTE theta-conjugation-printed-orientation"));
    assert_eq!(header(&dir.path().join("algebra.csv")), "identity,dim,instances,max_residual,tolerance,counted,passed");
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["seed"], 2024);
    assert_eq!(summary["config_hash"].as_str().unwrap().len(), 64);
    assert!(summary["library_version"].is_string());
}

#[test]
fn same_seed_gives_identical_summary() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = run(&["verify-algebra", "--seed", "77", "--out", d.path().to_str().unwrap()]);
        assert!(o.status.success());
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("summary.json")).unwrap();
    assert_eq!(read(&a), read(&b));
    let read_csv = |d: &tempfile::TempDir| std::fs::read(d.path().join("algebra.csv")).unwrap();
    assert_eq!(read_csv(&a), read_csv(&b));
}

#[test]
fn transposed_outer_product_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("verify-algebra.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["debug"]["transposed_outer"] = true.into();
    v["instances"] = 20.into();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = run(&["verify-algebra", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL u0-maps-xi-to-e1"));
}

#[test]
fn halfspace_oracle_in_both_orientations() {
    for orientation in ["inward", "outward"] {
        let dir = tempfile::tempdir().unwrap();
        let o = run(&["oracle-halfspace", "--orientation", orientation, "--out", dir.path().to_str().unwrap()]);
        assert!(o.status.success(), "{orientation}: {}", stdout(&o));
        assert_eq!(header(&dir.path().join("halfspace.csv")), "medium,dim,theta,xi_norm,rel_diff,in_regime");
    }
}

#[test]
fn converge_disk_reports_slopes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("converge-disk.json");
    let o = run(&["converge-disk", "--config", cfg.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS per-mode-slope-in-h"));
    assert_eq!(header(&dir.path().join("disk.csv")), "metric,sweep,h,theta,error,worst_xi,in_regime");
}

#[test]
fn eikonal_and_symbol_dump_write_tables() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["eikonal-residual", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(header(&dir.path().join("eikonal.csv")), "theta,xi,branch,order,x1,ratio,log2_ratio,delta,passed");
    let o = run(&["symbol-dump", "--out", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let csv = dir.path().join("symbol.csv");
    assert_eq!(header(&csv), "theta,h,s,xi,matrix,row,col,re,im");
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > 1);
}

#[test]
fn shipped_configs_load_and_match_their_subcommand() {
    for (cmd, file) in [
        ("verify-algebra", "verify-algebra.json"),
        ("oracle-halfspace", "oracle-halfspace.json"),
        ("eikonal-residual", "eikonal-residual.json"),
        ("symbol-dump", "symbol-dump.json"),
    ] {
        let cfg = configs().join(file);
        let o = run(&[cmd, "--config", cfg.to_str().unwrap()]);
        assert!(o.status.success(), "{cmd}: {}", stdout(&o));
    }
}

#[test]
fn config_errors_exit_with_status_two() {
    let cfg = configs().join("converge-disk.json");
    let o = run(&["verify-algebra", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("x.json");
    std::fs::write(&bad, r#"{"version": 1, "experiment": "verify-algebra", "colour": 3}"#).unwrap();
    let o = run(&["verify-algebra", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["verify-algebra", "--config", "/nonexistent/cfg.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
}
