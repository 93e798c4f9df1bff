use std::process::{Command, Output};

use serde_json::{json, Value};

fn lchi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lchi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn pi_is_deterministic() {
    let a = lchi(&["pi", "--q", "2", "--prec-theta", "8"]);
    let b = lchi(&["pi", "--q", "2", "--prec-theta", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["schema"], json!(1));
    assert_eq!(v["object"], json!("pi_qm1"));
    assert_eq!(
        v["field"],
        json!({ "p": 2, "e": 1, "modulus": [0, 1], "q": 2 })
    );
    assert_eq!(v["window"], json!({ "Nt": null, "theta_prec": 8 }));
    let x = &v["results"][0]["value"];
    assert_eq!(x["field"], json!("#/field"));
    // pi = -theta^2 (1 + ...) for q = 2
    assert_eq!(x["lead"], json!(-2));
    assert_eq!(x["prec"], json!(8));
    assert_eq!(x["coeffs"][0], json!({ "coeffs": [1] }));
}

#[test]
fn lambda_one_is_minus_one() {
    for (q, minus_one) in [("2", 1), ("3", 2)] {
        let o = lchi(&["lambda", "--alpha", "1", "--q", q]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let v = stdout_json(&o);
        let r = &v["results"][0];
        assert_eq!(r["alpha"], json!(1));
        assert_eq!(
            r["value"]["lambda"],
            json!({
                "num": { "terms": [{ "t": 0, "theta": 0, "c": { "coeffs": [minus_one] } }] },
                "den": { "terms": [{ "t": 0, "theta": 0, "c": { "coeffs": [1] } }] },
            })
        );
        assert_eq!(
            r["value"]["psi"]["weight"],
            json!(q.parse::<u64>().unwrap() + 1)
        );
    }
}

#[test]
fn default_verify_passes() {
    let o = lchi(&["verify"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
    assert_eq!(v["params"]["prec_theta"], json!(24));
    assert_eq!(v["params"]["Nt"], json!(6));
}

#[test]
fn verify_failure_reports_the_identity() {
    // the Euler product at q = 3 and window 24 exceeds the enumeration budget
    let o = lchi(&["verify", "--q", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(r["object"], json!("verify_failure"));
    assert_eq!(r["criterion"], json!(2));
    assert!(r["identity"].as_str().unwrap().contains("euler_product"));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["pi", "--q", "12"][..],
        &["pi", "--q", "32"],
        &["pi", "--p", "4"],
        &["pi", "--prec-theta", "0"],
        &["pi", "--bogus"],
        &["frobnicate"],
        &["dirichlet", "--r", "2", "--xi", "1,x"],
        &["dirichlet", "--r", "2", "--xi", "1,0,0"],
    ] {
        let o = lchi(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn compute_errors_exit_1_with_report() {
    let o = lchi(&["lseries", "--q", "3", "--prec-theta", "24", "--Nt", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let r: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(r["object"], json!("error"));
    assert_eq!(r["context"], json!("euler_product"));
    let o = lchi(&["lambda", "--alpha", "2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn jobs_do_not_change_output() {
    for args in [
        &["lambda", "--alpha", "1,2,3", "--q", "2"][..],
        &["dirichlet", "--r", "2", "--prec-theta", "10"],
        &[
            "lseries",
            "--alpha",
            "1,2",
            "--prec-theta",
            "10",
            "--Nt",
            "3",
        ],
    ] {
        let one = lchi(&[args, &["--jobs", "1"]].concat());
        let many = lchi(&[args, &["--jobs", "4"]].concat());
        assert!(one.status.success(), "{args:?}");
        assert_eq!(one.stdout, many.stdout, "{args:?}");
    }
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["uexp", "--q", "3", "--Nu", "9", "--k", "1,4"];
    let fresh = lchi(&args);
    let first = lchi(&[&args[..], &["--cache-dir", d]].concat());
    let second = lchi(&[&args[..], &["--cache-dir", d, "--jobs", "3"]].concat());
    assert!(fresh.status.success());
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, second.stdout);
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    // a different parameter is a different entry
    let other = lchi(&["uexp", "--q", "3", "--Nu", "6", "--cache-dir", d]);
    assert!(other.status.success());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn cached_entries_are_served() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["pi", "--prec-theta", "6", "--cache-dir", d];
    assert!(lchi(&args).status.success());
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    std::fs::write(&entry, "{\"marker\": true}\n").unwrap();
    assert_eq!(lchi(&args).stdout, b"{\"marker\": true}\n");
}

#[test]
fn text_format() {
    let o = lchi(&["pi", "--prec-theta", "4", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.starts_with("pi_qm1 over F_2"));
    assert!(s.contains("O(θ^-4)"), "{s}");
    let o = lchi(&["lambda", "--alpha", "2", "--format", "text"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert!(s.contains("lambda = (1) / (θ^2 + t)"), "{s}");
}

#[test]
fn zeta_and_dirichlet_outputs() {
    let v = stdout_json(&lchi(&[
        "zeta",
        "--q",
        "3",
        "--alpha",
        "2",
        "--k",
        "1,2",
        "--prec-theta",
        "12",
    ]));
    let names: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["zeta", "zeta_special_check", "zeta_special_check"]);
    for r in &v["results"].as_array().unwrap()[1..] {
        assert_eq!(r["value"]["max_nonzero_exponent"], Value::Null);
        assert_eq!(r["value"]["vanishes"], json!(true));
    }
    let v = stdout_json(&lchi(&[
        "dirichlet",
        "--r",
        "2",
        "--xi",
        "0,1",
        "--prec-theta",
        "10",
    ]));
    assert_eq!(v["ext_field"]["modulus"], json!([1, 1, 1]));
    let r = v["results"].as_array().unwrap();
    assert_eq!(r.len(), 3);
    assert_eq!(r[0]["value"]["field"], json!("#/ext_field"));
    assert!(r[1..].iter().all(|x| x["value"]["vanishes"] == json!(true)));
}

#[test]
fn uexp_tags_weights() {
    let v = stdout_json(&lchi(&["uexp", "--q", "3", "--Nu", "6", "--k", "3"]));
    let r = v["results"].as_array().unwrap();
    assert_eq!(r[0]["name"], json!("g"));
    assert_eq!(r[0]["value"]["weight"], json!(2));
    assert_eq!(r[1]["value"]["weight"], json!(4));
    assert_eq!(r[1]["value"]["type"], json!(1));
    assert_eq!(r[2]["value"]["type"], json!(0));
    assert_eq!(r[3]["name"], json!("goss"));
    assert_eq!(r[3]["value"]["Nu"], json!(3));
    assert_eq!(r[4]["name"], json!("d2"));
}
