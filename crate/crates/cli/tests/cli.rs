use std::fs;
use std::process::{Command, Output};

fn sepdesc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepdesc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    let path = format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_running_example() {
    let o = sepdesc(&["sweep", "9 8 4 1 3 2 7 5 6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "((1-1)-((1-(1+(1-1)))+(1-(1+1))))");
}

#[test]
fn sweep_reports_witness() {
    let o = sepdesc(&["sweep", "3142"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("witness: pattern [3, 1, 4, 2]"), "{err}");
}

#[test]
fn derangement_polynomial() {
    let o = sepdesc(&["poly", "D", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "16t+104t^2+120t^3+24t^4+t^5");
    let e = sepdesc(&["poly", "D", "6", "--method", "enum"]);
    assert_eq!(stdout(&e), stdout(&o));
}

#[test]
fn json_coefficients_are_strings() {
    let o = sepdesc(&["--format", "json", "poly", "S", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coeffs"], serde_json::json!(["1", "10", "10", "1"]));
    assert_eq!(v["family"], "S");
}

#[test]
fn csv_polynomial_rows() {
    let o = sepdesc(&["--format", "csv", "poly", "S", "3"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n0,1\n1,4\n2,1\n");
}

#[test]
fn exit_codes() {
    assert_eq!(sepdesc(&["poly", "S", "11", "--method", "enum"]).status.code(), Some(3));
    assert_eq!(sepdesc(&["poly", "Q", "3"]).status.code(), Some(2));
    assert_eq!(sepdesc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sepdesc(&["gamma", "D", "6"]).status.code(), Some(2));
    assert_eq!(sepdesc(&["verify", "bijection", "--max-n", "12"]).status.code(), Some(3));
}

#[test]
fn gamma_and_rc_index() {
    assert_eq!(stdout(&sepdesc(&["gamma", "S", "6"])).trim(), "1 30 61");
    assert_eq!(stdout(&sepdesc(&["rc-index", "4"])).trim(), "c_1^3+c_1c_2+2c_2c_1+c_3");
    assert_eq!(stdout(&sepdesc(&["rc-index", "5", "--eval", "1"])).trim(), "14");
    assert_eq!(stdout(&sepdesc(&["rc-index", "4", "--ab"])).trim(), "1+10t+10t^2+t^3");
    let o = sepdesc(&["--format", "json", "rc-index", "4"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"][2], serde_json::json!({"factors": [2, 1], "mult": 2}));
}

#[test]
fn tree_with_chains() {
    let o = sepdesc(&["tree", "984132756"]);
    let out = stdout(&o);
    assert!(out.starts_with("(- (- _ _) (+ (- _ (+ _ (- _ _))) (- _ (+ _ _))))\n"), "{out}");
    assert!(out.contains("chain 3: nodes [3, 4, 5] starts - level 1 Hang anchor 6 group 1"), "{out}");
}

#[test]
fn bijection_on_fixture_pair() {
    let text = fixture("bijection_pair.txt");
    let get = |key: &str| {
        text.lines().find_map(|l| l.strip_prefix(key)).map(|s| s.trim().to_string()).unwrap()
    };
    let (left, right) = (get("left ="), get("right ="));
    let dir = tempfile::tempdir().unwrap();
    let lpath = dir.path().join("left.txt");
    let rpath = dir.path().join("right.json");
    fs::write(&lpath, &left).unwrap();
    let right_tree: sepdesc::disk_tree::DiskTree = right.parse().unwrap();
    fs::write(&rpath, right_tree.to_json().to_string()).unwrap();

    let o = sepdesc(&["bij", "psi", "--tree", lpath.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), right);
    let o = sepdesc(&["bij", "phi", "--tree", rpath.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), left);
    // ψ applies only to DT² trees.
    let o = sepdesc(&["bij", "psi", "--tree", rpath.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_tables_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let o = sepdesc(&["--cache-dir", cache, "--format", "json", "verify", "tables"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(v.get("wall_time").is_none());
    let d7 = v["records"].as_array().unwrap().iter().find(|r| r["id"] == "tables/d-poly/07").unwrap();
    assert_eq!(d7["status"], "documented-discrepancy");

    // A tampered entry is caught, reported, and repaired.
    let entry = dir.path().join("D_6.json");
    let good = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, good.replace("\"104\"", "\"105\"")).unwrap();
    let o = sepdesc(&["--cache-dir", cache, "verify", "tables"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("tables/cache/D/06"));
    assert_eq!(fs::read_to_string(&entry).unwrap(), good);
    assert_eq!(sepdesc(&["--cache-dir", cache, "verify", "tables"]).status.code(), Some(0));
    assert_eq!(stdout(&sepdesc(&["--cache-dir", cache, "poly", "D", "6"])).trim(), "16t+104t^2+120t^3+24t^4+t^5");
}

#[test]
fn reports_are_deterministic() {
    let a = sepdesc(&["--format", "json", "verify", "conjectures", "--max-n", "10"]);
    let b = sepdesc(&["--format", "json", "verify", "conjectures", "--max-n", "10"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["label"], "evidence");
    let csv = sepdesc(&["--format", "csv", "verify", "conjectures", "--max-n", "10"]);
    let rows = stdout(&csv).lines().count();
    assert_eq!(rows, v["records"].as_array().unwrap().len() + 1);
}
