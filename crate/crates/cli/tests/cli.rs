use std::process::{Command, Output};

use ggmorse_core::{parse_rational, MorsePolynomial};
use serde_json::Value;

fn ggmorse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggmorse"))
        .args(args)
        .output()
        .expect("spawn ggmorse")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = ggmorse(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn bound_n2_headline_values() {
    let v = json(&["bound", "--n", "2", "--format", "json"]);
    assert_eq!(v["ggl_bound"], "1224");
    assert_eq!(v["kobayashi_bound"], "37179/4");
    assert_eq!(v["threshold_2m"], "1224");
    assert_eq!(v["scan_threshold"], 215);
    assert_eq!(v["params"]["eps"], "13");
    assert!(v["approx"]["kobayashi_bound"].is_f64());
}

#[test]
fn bound_reports_positivity_at_d() {
    let v = json(&[
        "bound", "--n", "2", "--eps", "13", "--d", "1225", "--format", "json",
    ]);
    assert_eq!(v["evaluation"]["d"], 1225);
    assert_eq!(v["evaluation"]["positive"], true);
    let value = parse_rational(v["evaluation"]["value"].as_str().unwrap()).unwrap();
    assert!(value > parse_rational("0").unwrap());
    let text = stdout(&ggmorse(&[
        "bound", "--n", "2", "--eps", "13", "--d", "1225",
    ]));
    assert!(text.contains("> 0"), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bound", "--n", "1"][..],
        &["bound", "--n", "2", "--eps", "0"],
        &["bound", "--n", "2", "--eps", "1/0"],
        &["bound", "--n", "2", "--eps", "abc"],
        &["morse", "--n", "2", "--k", "0"],
        &["bound"],
        &["verify", "--suite", "nope"],
        &["annex", "--weights", "1,2", "--p", "1"],
    ] {
        let o = ggmorse(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn morse_json_coefficients() {
    let v = json(&[
        "morse", "--n", "2", "--k", "2", "--eps", "13", "--format", "json",
    ]);
    assert_eq!(v["q"][2], "1/2");
    assert_eq!(v["q"][0], "-299/2");
    let v = json(&["morse", "--n", "3", "--k", "3", "--format", "json"]);
    assert_eq!(v["params"]["eps"], "18");
    assert_eq!(v["q"][3], "1/6");
}

#[test]
fn morse_json_round_trips() {
    let o = ggmorse(&[
        "morse", "--n", "4", "--k", "3", "--eps", "7/3", "--format", "json",
    ]);
    let text = stdout(&o);
    let mp: MorsePolynomial = serde_json::from_str(&text).unwrap();
    assert_eq!(mp, ggmorse_core::morse_polynomial(&mp.params).unwrap());
    let again = serde_json::to_value(&mp).unwrap();
    let mut orig: Value = serde_json::from_str(&text).unwrap();
    orig.as_object_mut().unwrap().remove("evaluation");
    assert_eq!(again, orig);
}

#[test]
fn tampered_json_is_rejected() {
    let text = stdout(&ggmorse(&["morse", "--n", "2", "--format", "json"]));
    let tampered = text.replacen("\"1/2\"", "\"1/3\"", 1);
    assert!(serde_json::from_str::<MorsePolynomial>(&tampered).is_err());
}

#[test]
fn csv_headers_are_fixed() {
    let b = stdout(&ggmorse(&["bound", "--n-range", "2..3", "--format", "csv"]));
    let lines: Vec<&str> = b.lines().collect();
    assert_eq!(lines[0], "n,alpha,q,r");
    assert_eq!(lines.len(), 1 + 3 + 4);
    assert_eq!(lines[3], "2,2,1/2,1/2");
    let m = stdout(&ggmorse(&["morse", "--n", "2", "--format", "csv"]));
    assert_eq!(m.lines().next(), Some("n,k,eps,alpha,q,raw"));
    assert!(m.lines().any(|l| l == "2,2,13,2,1/2,-213/8"));
    let c = stdout(&ggmorse(&[
        "coeffs", "--n", "2", "--k", "2", "--format", "csv",
    ]));
    assert_eq!(c, "n,k,index,b,c\n2,2,0,1,1\n2,2,1,6,3/2\n2,2,2,41/2,1/2\n");
}

#[test]
fn verify_suites_pass() {
    for args in [
        &[
            "verify", "--suite", "whitney", "--max-n", "2", "--max-r", "2",
        ][..],
        &["verify", "--suite", "lemmas", "--n-range", "2..6"],
        &["verify", "--suite", "coeffs", "--n", "3", "--k", "3"],
        &["verify", "--suite", "morse", "--n-range", "2..4"],
        &[
            "verify",
            "--suite",
            "fujiwara",
            "--samples",
            "50",
            "--seed",
            "7",
        ],
        &["verify-lemmas", "--n", "7"],
        &[
            "verify-whitney",
            "--max-n",
            "1",
            "--max-r",
            "3",
            "--degree-min",
            "-2",
            "--degree-max",
            "1",
        ],
    ] {
        let o = ggmorse(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        let text = stdout(&o);
        assert!(!text.contains("[FAIL]"), "{text}");
        assert!(text.lines().last().unwrap().ends_with("checks passed"));
    }
}

#[test]
fn output_is_independent_of_jobs() {
    let base = [
        "verify", "--suite", "whitney", "--max-n", "2", "--max-r", "2", "--format", "json",
    ];
    let one = ggmorse(&[&base[..], &["--jobs", "1"]].concat());
    let four = ggmorse(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    let b1 = ggmorse(&[
        "bound",
        "--n-range",
        "2..4",
        "--format",
        "json",
        "--jobs",
        "1",
    ]);
    let b3 = ggmorse(&[
        "bound",
        "--n-range",
        "2..4",
        "--format",
        "json",
        "--jobs",
        "3",
    ]);
    assert_eq!(b1.stdout, b3.stdout);
}

#[test]
fn annex_reports_convergence_and_whitney() {
    let v = json(&[
        "annex",
        "--weights",
        "1,2,3",
        "--p",
        "1,0,0",
        "--degrees",
        "1,-1,2",
        "--n",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(v["volume_squared"], "14");
    assert_eq!(v["simplex_ratio"], "1/12");
    assert_eq!(v["whitney"]["equal"], true);
    assert_eq!(v["convergence"]["within_tolerance"], true);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ggmorse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.json");
    let o = ggmorse(&[
        "coeffs",
        "--n",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["b"][2], "41/2");
    std::fs::remove_dir_all(dir).unwrap();
}
