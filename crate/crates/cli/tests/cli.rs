use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_verma-lc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("verma-lc-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

#[test]
fn repro_all_passes_and_is_stable() {
    let a = bin(&["repro", "--all", "--json"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
    let b = bin(&["repro", "--all", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["cases"].as_object().unwrap().len(), 14);
}

#[test]
fn repro_mismatch_exits_one() {
    let good = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/repro.json")).unwrap();
    let bad = temp_file("bad.json", &good.replacen("\"value\": \"31\"", "\"value\": \"30\"", 1));
    let o = bin(&["repro", "g2", "--fixtures", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("expected \"30\", got \"31\""));
}

#[test]
fn unknown_case_exits_two() {
    assert_eq!(code(&bin(&["repro", "nope"])), 2);
}

#[test]
fn g2_values() {
    for (a, want) in [("4", "13"), ("5", "20"), ("6", "31")] {
        let o = bin(&["kpf", "g2", a, a, "--json"]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["count"], want);
    }
}

#[test]
fn expect_flag_sets_exit_code() {
    let args = ["sym", "lc", "--family", "hl", "--t", "1/2", "--partition", "2,0"];
    let mut ok = args.to_vec();
    ok.extend(["--expect", "false"]);
    assert_eq!(code(&bin(&ok)), 0);
    let mut bad = args.to_vec();
    bad.extend(["--expect", "true"]);
    assert_eq!(code(&bin(&bad)), 1);
}

#[test]
fn input_errors_exit_two_with_distinct_classes() {
    let o = bin(&["sym", "poly", "--family", "jack", "--tau", "1/0", "--partition", "2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[parse]"));

    let g = temp_file("g.json", r#"{"n_plus_1": 3, "edges": [[3, 2, 1]]}"#);
    let o = bin(&["kpf", "count", "--graph", g.to_str().unwrap(), "--vector", "1,0,-1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("i < j"));

    let o = bin(&["kpf", "count", "--complete", "3", "--vector", "1,-1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[dimension-mismatch]"));

    let w = temp_file("w.json", r#"{"blocks": [{"n": 1, "h": ["1"]}], "eps": [["1", "1"]]}"#);
    let o = bin(&["lie", "antidominant", "--weight", w.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn budget_is_an_input_error() {
    let m = temp_file(
        "verma.json",
        r#"{"algebra": [3], "lambda": {"blocks": [{"n": 3, "h": ["0", "0", "0"]}]}, "kind": {"type": "verma"}}"#,
    );
    let o = bin(&["char", "scan", "--module", m.to_str().unwrap(), "--radius", "6", "--limit", "10"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error[budget]"));
}

#[test]
fn table_one_scan_and_chain() {
    let m = temp_file(
        "hovm.json",
        r#"{"algebra": [3], "lambda": {"blocks": [{"n": 3, "h": ["0", "0", "0"]}]},
            "kind": {"type": "higher_order", "holes": [[[1, 1], [1, 3]]]}}"#,
    );
    let path = m.to_str().unwrap();
    let o = bin(&["char", "mult", "--module", path, "--depth", "1,1,1"]);
    assert!(stdout(&o).contains("multiplicity: 3"));
    let o = bin(&["char", "scan", "--module", path, "--radius", "4", "--expect", "false", "--json"]);
    assert_eq!(code(&o), 0);
    let o = bin(&["char", "chain", "--module", path, "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chain"]["mults"], serde_json::json!([3, 2, 2]));
    assert_eq!(v["violation"], true);
}

#[test]
fn parabolic_polynomial_certifies() {
    let m = temp_file(
        "par.json",
        r#"{"algebra": [2], "lambda": {"blocks": [{"n": 2, "h": ["1", "0"]}], "eps": [[1, 0, 0]]},
            "kind": {"type": "parabolic", "J": [[1, 1]]}}"#,
    );
    let o = bin(&["char", "poly", "--module", m.to_str().unwrap(), "--delta", "1,0,1", "--certify", "--expect", "true"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn flow_and_cert_commands() {
    let o = bin(&["flow", "volume", "--complete", "3"]);
    assert!(stdout(&o).contains("volume: 1 x1^1"));
    let o = bin(&["flow", "oracle", "--complete", "4", "--netflow", "2,1,0", "--expect", "true"]);
    assert_eq!(code(&o), 0);
    let p = temp_file("square.txt", "1 x1^2\n2 x1 x2\n1 x2^2");
    let o = bin(&["cert", "lorentzian", p.to_str().unwrap(), "--expect", "true"]);
    assert_eq!(code(&o), 0);
    let o = bin(&["repro", "huh-product", "--json"]);
    assert_eq!(code(&o), 0);
    let gap = temp_file("gap.txt", "1 x1^2\n1 x2^2");
    let o = bin(&["cert", "mconvex", gap.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], false);
}

#[test]
fn float_layer_keeps_exact_values() {
    let o = bin(&[
        "sym", "okounkov", "--family", "jack", "--tau", "1/2", "--lambda", "3", "--mu", "1", "--nu", "2", "--json", "--float",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["difference"].as_str().unwrap().contains("-4/15"));
    assert!(v["approx_note"].is_string());
}
