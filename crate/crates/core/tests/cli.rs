use std::io::Write as _;

use seifert_psc::cli::run;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["seifert-psc"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn outcome(rec: &Value, criterion: &str) -> Option<String> {
    rec["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["criterion"] == criterion)
        .map(|v| v["outcome"].as_str().unwrap().to_string())
}

#[test]
fn compute_table() {
    let (code, out, _) = call(&["compute", "Sigma(2,3,11)"]);
    assert_eq!(code, 0);
    assert!(out.contains("mu_bar = 0  rokhlin = 0  delta = 1  alpha = 2  beta = 0  gamma = 0"));
    assert!(out.contains("IF a PSC cross-section pair exists, then lambda_SW = delta"));
    assert_eq!(out.matches("obstructed").count(), 5);
}

#[test]
fn compute_s3_json() {
    let (code, out, _) = call(&["compute", "S3", "--json"]);
    assert_eq!(code, 0);
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["schema_version"], 1);
    for k in ["alpha", "beta", "gamma", "delta"] {
        assert_eq!(rec["manolescu"][k], 0);
    }
    for v in rec["verdicts"].as_array().unwrap() {
        assert_eq!(v["outcome"], "inconclusive");
    }
}

#[test]
fn compute_connected_sum_json() {
    let (code, out, _) = call(&["compute", "2*Sigma(2,3,11)", "--json"]);
    assert_eq!(code, 0);
    let rec = &json_lines(&out)[0];
    let m = &rec["manolescu"];
    assert_eq!(
        (
            m["alpha"].clone(),
            m["beta"].clone(),
            m["gamma"].clone(),
            m["delta"].clone()
        ),
        (2.into(), 2.into(), 0.into(), 2.into())
    );
    assert_eq!(outcome(rec, "connected-sum").as_deref(), Some("obstructed"));
    assert_eq!(outcome(rec, "mu-bar"), None);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["compute", "Sigma(2,3"]).0, 2);
    assert_eq!(call(&["compute", "Sigma(2,4,5)"]).0, 3);
    assert_eq!(call(&["compute", "Sigma(2,3,11) # Sigma(2,5,7)"]).0, 3);
    assert_eq!(call(&["compute", "Sigma(2,3,11) # -Sigma(2,3,5)"]).0, 3);
    assert_eq!(call(&["frobnicate"]).0, 2);
    let (code, out, _) = call(&[
        "compute",
        "Sigma(2,3,11) # Sigma(2,5,7)",
        "--assume-projective",
        "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(json_lines(&out)[0]["uncertified"], true);
}

#[test]
fn obstruct_prints_verdicts_only() {
    let (code, out, _) = call(&["obstruct", "Sigma(2,3,7)", "--json"]);
    assert_eq!(code, 0);
    let rec = &json_lines(&out)[0];
    assert!(rec.get("manolescu").is_none());
    assert_eq!(rec["verdicts"].as_array().unwrap().len(), 5);
}

#[test]
fn plumbing_dumps() {
    let (code, out, _) = call(&["plumbing", "Sigma(2,3,7)"]);
    assert_eq!(code, 0);
    assert!(out.contains("graph summand0 {"));
    assert!(out.contains("v0 [label=\"-1\"];"));
    let (_, out, _) = call(&[
        "plumbing",
        "Sigma(2,3,5) # Sigma(2,3,7)",
        "--plumbing",
        "json",
    ]);
    let rec = &json_lines(&out)[0];
    assert_eq!(
        rec["graphs"][0]["graph"]["weights"]
            .as_array()
            .unwrap()
            .len(),
        8
    );
    let (_, out, _) = call(&["compute", "Sigma(2,3,7)", "--plumbing", "dot"]);
    assert!(out.contains("v0 -- v1;"));
}

#[test]
fn family_sweep() {
    let (code, out, _) = call(&["family", "2,3,12n-1", "--from", "1", "--to", "3", "--json"]);
    assert_eq!(code, 0);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 4);
    for rec in &lines[..3] {
        assert_eq!(rec["manolescu"]["delta"], 1);
    }
    assert_eq!(lines[3]["constant"], true);

    let (_, out, _) = call(&["family", "Sigma(2,5,20n-1)", "--to", "2", "--json"]);
    let lines = json_lines(&out);
    assert_eq!(lines[2]["values"], serde_json::json!([0, 1, 2, 0, 0]));

    let (code, out, err) = call(&["family", "2,3,3n+1", "--from", "1", "--to", "3"]);
    assert_eq!(code, 0);
    assert!(err.contains("skipping Sigma(2,3,7)") || err.contains("skipping Sigma(2,3,4)"));
    assert!(out.contains("constant across computed members"));

    assert_eq!(call(&["family", "2,3,5"]).0, 2);
}

#[test]
fn batch_mode_keeps_order_and_count() {
    let dir = tempdir();
    let path = dir.join("batch.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "# header\nSigma(2,3,7)\n\nS3\n# middle\nSigma(2,4,5)\n2*Sigma(2,3,11)"
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["compute", "--batch", p, "--json"]);
    assert_eq!(code, 3);
    let lines = json_lines(&out);
    let inputs: Vec<&str> = lines.iter().map(|l| l["input"].as_str().unwrap()).collect();
    assert_eq!(
        inputs,
        ["Sigma(2,3,7)", "S3", "Sigma(2,4,5)", "2*Sigma(2,3,11)"]
    );
    assert_eq!(lines[2]["error"]["kind"], "domain");
}

#[test]
fn json_is_identical_across_worker_counts() {
    let dir = tempdir();
    let path = dir.join("batch.txt");
    std::fs::write(
        &path,
        "Sigma(2,3,5)\nSigma(2,3,11) # Sigma(2,7,27)\n-Sigma(2,3,7)\n3*Sigma(2,5,19)\nSigma(3,5,7)\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let one = call(&["--jobs", "1", "compute", "--batch", p, "--json"]).1;
    let four = call(&["--jobs", "4", "compute", "--batch", p, "--json"]).1;
    let again = call(&["--jobs", "4", "compute", "--batch", p, "--json"]).1;
    assert_eq!(one, four);
    assert_eq!(four, again);
}

#[test]
fn selftest_passes_and_detects_corruption() {
    let (code, out, _) = call(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("KNOWN-DISPUTED"));

    let dir = tempdir();
    let bad = dir.join("bad.jsonl");
    std::fs::write(
        &bad,
        "{\"expr\":\"S3\",\"status\":\"normative\"}\n{\"expr\":\"S3\",\"status\":\n",
    )
    .unwrap();
    let (code, _, err) = call(&["selftest", "--fixtures", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("fixture line 2"));

    let wrong = dir.join("wrong.jsonl");
    std::fs::write(
        &wrong,
        "{\"expr\":\"Sigma(2,3,7)\",\"expected\":{\"delta\":3},\"status\":\"normative\"}\n",
    )
    .unwrap();
    let (code, out, _) = call(&["selftest", "--fixtures", wrong.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(
        out.contains("FAIL")
            && out.contains("Sigma(2,3,7)")
            && out.contains("delta: expected 3, got 0")
    );
}

fn tempdir() -> std::path::PathBuf {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "seifert-psc-cli-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::SeqCst)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
