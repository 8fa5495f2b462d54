use std::path::Path;
use std::process::{Command, Output};

fn repfun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repfun"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn compute_pairs_of_naturals() {
    let out = repfun(&[
        "compute", "--config", "1:2", "--seq", "naturals", "--limit", "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "# schema: 1\nn,r\n0,1\n1,2\n2,3\n3,4\n");
}

#[test]
fn compute_moser_is_constant() {
    let out = repfun(&[
        "compute", "--config", "1:1,2:1", "--seq", "moser:2", "--limit", "4",
    ]);
    assert_eq!(code(&out), 0);
    let rows: Vec<String> = stdout(&out).lines().skip(2).map(String::from).collect();
    assert_eq!(rows, ["0,1", "1,1", "2,1", "3,1", "4,1"]);
}

#[test]
fn compute_rejects_bad_grammar() {
    for bad in ["1:0", "0:1", "2:1,1:1", "1:1,1:2", "", "x"] {
        let out = repfun(&[
            "compute", "--config", bad, "--seq", "naturals", "--limit", "3",
        ]);
        assert_eq!(code(&out), 2, "config {bad:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = repfun(&[
        "compute", "--config", "1:2", "--seq", "cubes", "--limit", "3",
    ]);
    assert_eq!(code(&out), 2);
    let out = repfun(&["compute", "--config", "1:2", "--seq", "naturals"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn compute_writes_file_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let p = path.to_str().unwrap();
    let out = repfun(&[
        "compute", "--config", "1:3", "--seq", "primes", "--limit", "20", "--out", p,
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# schema: 1\nn,r\n"));
    assert_eq!(text.lines().count(), 2 + 21);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn compute_from_sequence_file() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("a.txt");
    std::fs::write(&seq, "# a small set\n0\n1\n3\n").unwrap();
    let spec = format!("file:{}", seq.display());
    let out = repfun(&["compute", "--config", "1:2", "--seq", &spec, "--limit", "3"]);
    assert_eq!(code(&out), 0);
    // (0,0) (0,1)(1,0) (1,1) (0,3)(3,0)
    assert_eq!(stdout(&out), "# schema: 1\nn,r\n0,1\n1,2\n2,1\n3,2\n");
    // the file is only complete up to its last element
    let out = repfun(&["compute", "--config", "1:2", "--seq", &spec, "--limit", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_parity_for_primes() {
    let out = repfun(&[
        "verify", "parity", "--p", "2", "--seq", "primes", "--limit", "10000",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_parity_rejects_composite() {
    let out = repfun(&[
        "verify", "parity", "--p", "4", "--seq", "primes", "--limit", "100",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_poly_tail_for_primes() {
    let out = repfun(&[
        "verify",
        "poly-tail",
        "--config",
        "1:2",
        "--seq",
        "primes",
        "--limit",
        "10000",
        "--max-degree",
        "0",
        "--window",
        "5000",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "PASS");
    assert!(v["fit"].is_null());
    let w = &v["witnesses"][0];
    assert_eq!(w["degree"], 0);
    assert!(w["n"].as_u64().unwrap() >= 5000);
}

#[test]
fn verify_poly_tail_reports_fit() {
    let out = repfun(&[
        "verify",
        "poly-tail",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--limit",
        "300",
        "--max-degree",
        "2",
        "--window",
        "100",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["verdict"], "FAIL");
    assert_eq!(v["fit_degree"], 1);
    assert_eq!(v["fit"], "n + 1");
}

#[test]
fn verify_poly_tail_short_window() {
    let out = repfun(&[
        "verify",
        "poly-tail",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--limit",
        "10",
        "--max-degree",
        "3",
        "--window",
        "8",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ef_rejects_degree_one_and_bad_epsilon() {
    let out = repfun(&[
        "ef",
        "--config",
        "1:1,2:1",
        "--seq",
        "moser:2",
        "--limit",
        "100",
        "--epsilon",
        "0.05",
    ]);
    assert_eq!(code(&out), 2);
    for eps in ["0", "0.25", "-0.1"] {
        let out = repfun(&[
            "ef",
            "--config",
            "1:2",
            "--seq",
            "squares",
            "--limit",
            "100",
            "--epsilon",
            eps,
        ]);
        assert_eq!(code(&out), 2, "epsilon {eps}");
    }
    let out = repfun(&[
        "ef",
        "--config",
        "1:2",
        "--seq",
        "squares",
        "--limit",
        "100",
        "--epsilon",
        "0.1",
        "--c",
        "0",
    ]);
    assert_eq!(code(&out), 2);
    let out = repfun(&[
        "ef",
        "--config",
        "1:2",
        "--seq",
        "squares",
        "--limit",
        "100",
        "--epsilon",
        "0.1",
        "--c",
        "pi",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn ef_exact_constant_gives_closed_form() {
    // naturals {(1,2)}: r(j) = j + 1, so with c = 1 the sums are n(n+1)/2
    let dir = tempfile::tempdir().unwrap();
    let summary = dir.path().join("s.json");
    let out = repfun(&[
        "ef",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--limit",
        "63",
        "--c",
        "1",
        "--epsilon",
        "0.05",
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: 1"));
    assert_eq!(lines.next(), Some("k,block_lo,block_hi,S_k,rho_k"));
    let rows: Vec<Vec<String>> = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 6);
    for row in &rows {
        let hi: u64 = row[2].parse().unwrap();
        assert_eq!(row[3], (hi * (hi + 1) / 2).to_string());
    }
    let s: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["c_mode"], "exact");
    assert_eq!(s["trend"], "non-decreasing");
    assert_eq!(s["schema"], 1);
}

#[test]
fn ef_summary_defaults_to_stderr() {
    let out = repfun(&[
        "ef",
        "--config",
        "1:2",
        "--seq",
        "squares",
        "--limit",
        "4096",
        "--epsilon",
        "0.05",
        "--c",
        "3/4",
    ]);
    assert_eq!(code(&out), 0);
    let s: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(s["c_mode"], "exact");
    assert_eq!(s["c"], 0.75);
}

#[test]
fn generate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&repfun(&[
            "generate", "--seq", "moser:2", "--limit", "21", "--out", p
        ])),
        0
    );
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "0\n1\n4\n5\n16\n17\n20\n21\n"
    );
    assert_eq!(
        code(&repfun(&[
            "generate", "--seq", "primes", "--limit", "10", "--out", p
        ])),
        0
    );
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "2\n3\n5\n7\n");
    assert_eq!(
        code(&repfun(&[
            "generate", "--seq", "moser:1", "--limit", "21", "--out", p
        ])),
        2
    );
    assert!(Path::new(p).exists());
}

#[test]
fn generated_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mc.txt");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&repfun(&[
            "generate",
            "--seq",
            "mianchowla",
            "--limit",
            "500",
            "--out",
            p
        ])),
        0
    );
    let spec = format!("file:{p}");
    let a = repfun(&[
        "compute", "--config", "1:2", "--seq", &spec, "--limit", "200",
    ]);
    let b = repfun(&[
        "compute",
        "--config",
        "1:2",
        "--seq",
        "mianchowla",
        "--limit",
        "200",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn moments_examples() {
    let out = repfun(&[
        "moments",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--M",
        "16",
        "--epsilon",
        "0.05",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["schema"], 1);

    let out = repfun(&[
        "moments",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--M",
        "1",
        "--epsilon",
        "0.05",
        "--r2",
        "0.9",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["h_r2"], 1.0);

    let out = repfun(&[
        "moments",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--M",
        "1",
        "--epsilon",
        "0.05",
    ]);
    assert_eq!(code(&out), 2);

    for r2 in ["1.0", "0", "1.5"] {
        let out = repfun(&[
            "moments",
            "--config",
            "1:2",
            "--seq",
            "naturals",
            "--M",
            "16",
            "--epsilon",
            "0.05",
            "--r2",
            r2,
        ]);
        assert_eq!(code(&out), 2, "r2 {r2}");
    }
    let out = repfun(&[
        "moments",
        "--config",
        "1:1,2:1",
        "--seq",
        "naturals",
        "--M",
        "16",
        "--epsilon",
        "0.05",
    ]);
    assert_eq!(code(&out), 2);
    let out = repfun(&[
        "moments",
        "--config",
        "1:2",
        "--seq",
        "naturals",
        "--M",
        "16",
        "--epsilon",
        "0.05",
        "--limit",
        "100",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&repfun(&["--help"])), 0);
    assert_eq!(code(&repfun(&["verify", "--help"])), 0);
    assert_eq!(code(&repfun(&[])), 2);
}
