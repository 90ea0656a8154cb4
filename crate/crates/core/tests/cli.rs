use std::fs;

use gvforge::cli::run_from;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["gvforge"];
    argv.extend_from_slice(args);
    let code = run_from(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn bounds_beats_gv_at_2_pow_42() {
    let r = run(&["bounds", "--q", "4398046511104", "--delta", "0.5"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let row = &csv_rows(&r.out)[0];
    let gv: f64 = row[2].parse().unwrap();
    let nfc: f64 = row[4].parse().unwrap();
    assert!(nfc > gv);
}

#[test]
fn bounds_small_q() {
    let r = run(&["bounds", "--q", "2", "--delta", "0.5"]);
    assert_eq!(r.code, 0);
    assert_eq!(csv_rows(&r.out)[0][2], "0");

    let r = run(&["bounds", "--q", "64", "--delta-grid", "0.1:0.9:0.1", "--budget", "8"]);
    assert_eq!(r.code, 0);
    let rows = csv_rows(&r.out);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|row| row[4].is_empty()));

    let r = run(&["bounds", "--q", "64", "--delta", "1.5"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("outside"));
}

#[test]
fn construct_and_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    let p = path.to_str().unwrap();
    let r = run(&["construct", "--disc", "-4", "--r", "9", "--q", "13", "--G", "1", "-o", p]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.out.starts_with("n=3 M=9 M_bound=5"));

    let v = run(&["verify", p]);
    assert_eq!(v.code, 0, "{}", v.out);
    assert!(v.out.trim_end().ends_with("PASS"));

    let v = run(&["verify", p, "--norm-chain", "--format", "json"]);
    assert_eq!(v.code, 0);
    let json: serde_json::Value = serde_json::from_str(&v.out).unwrap();
    assert_eq!(json["pass"], true);
}

#[test]
fn verify_reports_duplicate_codeword() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.txt");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "--disc", "-4", "--r", "9", "--q", "13", "--G", "1", "-o", p]).code, 0);
    let text = fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    lines[3] = lines[2];
    fs::write(&path, lines.join("\n") + "\n").unwrap();
    let v = run(&["verify", p]);
    assert_eq!(v.code, 2);
    assert!(v.out.contains("first violating pair"), "{}", v.out);
    assert!(v.out.trim_end().ends_with("FAIL"));
}

#[test]
fn verify_rejects_malformed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "# lenstra q=13 r=9 G=1 disc=-4 n=3 tau=0.890625,0.890625\n4 6 9\n7 x 10\n").unwrap();
    let v = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(v.code, 1);
    assert!(v.err.contains("line 3"), "{}", v.err);
}

#[test]
fn construct_variants() {
    let r = run(&["construct", "--disc", "-3", "--r", "9", "--q", "13", "--G", "1"]);
    assert_eq!(r.code, 0, "{}", r.err);
    assert!(r.err.starts_with("n="));

    let r = run(&["construct", "--disc", "-8", "--r", "3", "--q", "2", "--G", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("r ≤ q"));

    // G = n: distance guarantee drops to 1 but the code stays injective
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    assert_eq!(run(&["construct", "--disc", "-4", "--r", "9", "--q", "13", "--G", "3", "-o", p]).code, 0);
    let v = run(&["verify", p]);
    assert_eq!(v.code, 0, "{}", v.out);
    assert!(v.out.contains("d ≥ 1"));
}

#[test]
fn construct_is_deterministic() {
    let args = ["construct", "--disc", "-7", "--r", "20", "--q", "40", "--G", "2", "--seed", "3"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.code, 0, "{}", a.err);
    assert_eq!(a.out, b.out);

    let mut one = vec!["--threads", "1"];
    one.extend_from_slice(&args);
    let mut four = vec!["--threads", "4"];
    four.extend_from_slice(&args);
    assert_eq!(run(&one).out, run(&four).out);
}

#[test]
fn certify_exit_codes() {
    let r = run(&["certify", "--q", "4398046511104"]);
    assert_eq!(r.code, 0, "{}", r.err);
    let json: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(json["overall"], "pass");

    let r = run(&["certify", "--q", "1000003"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("warning"));

    let r = run(&["certify", "--q", "4"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("below Q"));

    let r = run(&["certify", "--q", "4398046511104", "--sieve-limit", "1000"]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("uncertifiable"));

    let r = run(&["certify", "--q", "1000003", "--schedule", "theorem1"]);
    assert_eq!(r.code, 1);
}

#[test]
fn certify_threads_do_not_change_output() {
    let a = run(&["--threads", "1", "certify", "--q", "4398046511104"]);
    let b = run(&["--threads", "4", "certify", "--q", "4398046511104"]);
    assert_eq!(a.out, b.out);
}

#[test]
fn tower_cases() {
    let r = run(&["tower", "--disc", "-19399380"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("d2=7"));
    assert!(r.out.contains("infinite tower certified"));

    let r = run(&["tower", "--disc", "-4"]);
    assert_eq!(r.code, 2);
    assert!(r.out.contains("not certified"));

    let r = run(&["tower", "--disc", "-19399380", "--sc-size", "3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let json: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(json["d2_source"], "class group");
}

#[test]
fn help_and_usage() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    for sub in ["bounds", "construct", "verify", "certify", "tower"] {
        assert!(r.out.contains(sub));
    }
    assert_eq!(run(&["frobnicate"]).code, 1);
}
