use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use opmean::{ChainWitness, MonotonicityVerdict, PairWitness, SpdMatrix, Status};
use tempfile::TempDir;

fn opmean(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opmean")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn pair_files(dir: &TempDir) -> (String, String) {
    let x = write(dir.path(), "x.json", r#"{"n":2,"rows":[[1,0],[0,1]]}"#);
    let y = write(dir.path(), "y.json", "[[1.25,0],[0,1.25]]");
    (x.display().to_string(), y.display().to_string())
}

#[test]
fn solve_pair_scaled_identity() {
    let dir = TempDir::new().unwrap();
    let (x, y) = pair_files(&dir);
    let o = opmean(&["solve-pair", "--mean", "arithmetic", "--x", &x, "--y", &y]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let w: PairWitness = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(w.within(1e-12));
    let (a, b) = (w.a.get(0, 0), w.b.get(0, 0));
    assert!((a - 2.0).abs() < 1e-12 && (b - 0.5).abs() < 1e-12, "{a} {b}");
    assert!(w.a.get(0, 1).abs() < 1e-14);
}

#[test]
fn eval_mean_returns_spd_json() {
    let dir = TempDir::new().unwrap();
    let (x, y) = pair_files(&dir);
    let o = opmean(&["eval-mean", "--mean", "wgeo:0.5", "--a", &x, "--b", &y]);
    assert!(o.status.success());
    let m: SpdMatrix = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((m.get(1, 1) - 1.25f64.sqrt()).abs() < 1e-15);
}

#[test]
fn square_is_refuted_with_exit_one() {
    let o = opmean(&["check-monotone", "--fn", "t^2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let v: MonotonicityVerdict = serde_json::from_str(&text).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(raw["config"]["seed"], 7);
    assert_eq!(raw["config"]["trials"], 1000);
}

#[test]
fn square_root_passes() {
    let o = opmean(&["check-monotone", "--fn", "sqrt(t)", "--trials", "200"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bh_sweep_rows_and_margins() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bh.csv");
    let o = opmean(&["sweep", "--kind", "bh", "--grid", "0.05:0.95:19", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = fs::read_to_string(&out).unwrap();
    assert!(!text.contains('\r'));
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 19);
    for r in &rows {
        let margin: f64 = r[6].parse().unwrap();
        assert!(margin >= 0.0, "{r:?}");
    }
}

#[test]
fn empty_grid_gives_header_only() {
    let o = opmean(&["sweep", "--kind", "bh", "--grid", "", "--out", "-"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "s,geometric,heinz,heron_squared,heron_abs,arithmetic,min_margin\n");
}

#[test]
fn heron_gamma_sweep_flags_infinity() {
    let o = opmean(&["sweep", "--kind", "gamma", "--family", "heron", "--grid", "0,0.5,1", "--out", "-"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[1].contains(",false,"), "{}", lines[1]);
    assert!(lines[2].contains(",inf,true,") && lines[3].contains(",inf,true,"));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["ka-check", "--sigma", "geometric", "--tau", "heron:0.4", "--trials", "50"];
    let (a, b) = (opmean(&args), opmean(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn chain_roundtrips() {
    let dir = TempDir::new().unwrap();
    let x = write(dir.path(), "x.json", "[[1,0],[0,1]]");
    let y = write(dir.path(), "y.json", "[[6,1],[1,3]]");
    let o = opmean(&["chain", "--mean", "heron:0.5", "--x", x.to_str().unwrap(), "--y", y.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let c: ChainWitness = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(c.verify(1e-10).unwrap().holds(1e-7));
}

#[test]
fn errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", "[[1,2],[0,1]]");
    let p = bad.to_str().unwrap();
    let o = opmean(&["eval-mean", "--mean", "geometric", "--a", p, "--b", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(opmean(&["check-monotone", "--fn", "t^"]).status.code(), Some(2));
    assert_eq!(opmean(&["eval-mean", "--mean", "nope", "--a", p, "--b", p]).status.code(), Some(2));
}

#[test]
fn order_check_by_class() {
    let ok = opmean(&["check-order", "--f", "harmonic", "--g", "geometric", "--trials", "100"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = opmean(&["check-order", "--f", "arithmetic", "--g", "geometric", "--trials", "100"]);
    assert_eq!(bad.status.code(), Some(1));
    let sa = opmean(&["check-order", "--sa", "--f", "wgeo:0.3", "--g", "wgeo:0.7", "--trials", "100"]);
    assert!(sa.status.code().is_some_and(|c| c <= 1));
    let wrong = opmean(&["check-order", "--sa", "--f", "heron:0.5", "--g", "wgeo:0.7"]);
    assert_eq!(wrong.status.code(), Some(2));
}
