use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_ncpoisson"));
    c.env_remove("NCPOISSON_THREADS");
    c
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_kontsevich_passes() {
    let k = data("kontsevich.ncb");
    let o = run(&["verify", "--bracket", &k, "--skew-len", "4", "--jacobi-len", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn moduli_n2_row() {
    let k = data("kontsevich.ncb");
    let o = run(&["moduli", "--bracket", &k, "--dim", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("\"dim_inv\": 5") && s.contains("\"dim_leaf\": 4"), "{s}");
    assert!(s.contains("\"casimir_codim\": 1"), "{s}");
    let bad = run(&["moduli", "--bracket", &k, "--dim", "2", "--expect", "5,5,1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn counterexample_fails_with_list() {
    let o = run(&["verify", "--bracket", "skew_counterexample", "--skew-len", "2", "--jacobi-len", "1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn reports_are_deterministic() {
    let args = ["crosscheck-repalg", "--dim", "2", "--max-len", "1", "--seed", "7", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["spectral", "--dim", "2", "--seed", "3", "--emit-polygon", "--emit-curve", "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn parse_errors_are_machine_readable() {
    let dir = std::env::temp_dir().join(format!("ncpoisson-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("bad.ncb");
    std::fs::write(&f, "[algebra]\ngenerators = a, b\n\n[bracket x]\na, b = \"a * ) (x) 1\"\n").unwrap();
    let o = run(&["verify", "--bracket", f.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "syntax");
    assert_eq!((v["error"]["line"].as_u64(), v["error"]["column"].as_u64()), (Some(5), Some(13)));

    let o = run(&["verify", "--bracket", dir.join("missing.ncb").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(v["error"]["kind"], "definition");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_writes_json_and_text() {
    let dir = std::env::temp_dir().join(format!("ncpoisson-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("tt.json");
    let o = run(&["t-table", "--out", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let json = std::fs::read_to_string(&p).unwrap();
    assert!(json.contains("\"sweep\": \"t-table\""));
    let text = std::fs::read_to_string(dir.join("tt.json.txt")).unwrap();
    assert!(text.starts_with("t-table: PASS"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn thread_count_is_validated() {
    let o = bin().env("NCPOISSON_THREADS", "0").arg("t-table").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("NCPOISSON_THREADS", "2").arg("t-table").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gating_by_command() {
    let k = data("kontsevich.ncb");
    // The Lax identity as written with [L, M] does not hold for the shipped pair.
    assert_eq!(run(&["lax", "--defs", &k]).status.code(), Some(1));
    assert_eq!(run(&["coalgebra-check", "--defs", &k]).status.code(), Some(0));
    assert_eq!(run(&["casimir", "--bracket", &k, "--max-len", "3"]).status.code(), Some(0));
    assert_eq!(run(&["bivector-check", "--bracket", &k, "--polyvector", "kontsevich", "--max-len", "1"]).status.code(), Some(0));
    assert_eq!(run(&["defect", "--bracket", &data("free3_II.ncb"), "--max-len", "1"]).status.code(), Some(0));
    let s = run(&["spectral", "--dim", "2"]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).contains("degree 6"));
}
