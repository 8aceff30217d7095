use std::fs;
use std::process::Command;

use pwl_tongues::cli::run;
use pwl_tongues::pwlmap::PwlMap;
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pwl-tongues").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json(o: &Outcome) -> Value {
    assert_eq!(o.code, 0, "stderr: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

fn error_kind(o: &Outcome) -> String {
    let v: Value = serde_json::from_str(o.stderr.trim()).unwrap();
    assert_eq!(v["exit_code"], o.code);
    v["error"].as_str().unwrap().to_string()
}

#[test]
fn cycle_reports_stable_admissible_orbit() {
    let v = json(&cli(&[
        "cycle", "--family", "pws2d", "--alpha", "-0.444", "--beta", "-0.6", "--word", "F[2,2,7]",
    ]));
    assert_eq!(v["cycle"]["admissibility"], "admissible");
    assert_eq!(v["cycle"]["stable"], true);
    assert_eq!(v["config"]["word"], "LRRRLRR");
    assert!(v["first_component"]["difference"].as_f64().unwrap() < 1e-12);
    assert_eq!(v["rotational"]["m"], 2);
}

#[test]
fn cycle_of_single_symbol_matches_fixed_point() {
    let v = json(&cli(&["cycle", "--family", "pws2d", "--word", "R"]));
    assert_eq!(v["cycle"]["points"][0], v["fixed_point"]["point"]);
    assert_eq!(v["fixed_point"]["side"], "R");
}

#[test]
fn singular_cycle_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    fs::write(
        &path,
        r#"{"n": 2, "A_L": [[2, 0], [0, 0.5]], "A_R": [[0.5, 0], [0, 0.5]], "b": [1, 0]}"#,
    )
    .unwrap();
    let o = cli(&["cycle", "--map", path.to_str().unwrap(), "--word", "LR"]);
    assert_eq!(o.code, 2);
    assert_eq!(error_kind(&o), "NoUniqueCycle");
}

#[test]
fn unknown_map_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("map.json");
    fs::write(
        &path,
        r#"{"n": 1, "A_L": [[0.5]], "A_R": [[-0.5]], "b": [1], "comment": "x"}"#,
    )
    .unwrap();
    let o = cli(&["cycle", "--map", path.to_str().unwrap(), "--word", "L"]);
    assert_eq!(o.code, 2);
    assert_eq!(error_kind(&o), "Domain");
}

#[test]
fn bad_arguments_exit_with_domain_code() {
    assert_eq!(cli(&["cycle", "--family", "pws2d"]).code, 2);
    assert_eq!(
        cli(&["cycle", "--family", "pws2d", "--word", "F[2,2,6]"]).code,
        2
    );
    assert_eq!(
        cli(&["cycle", "--family", "pws2d", "--tl", "1", "--word", "L"]).code,
        2
    );
    assert_eq!(
        cli(&["scan", "--family", "pws2d", "--alpha", "-1:1:3"]).code,
        2
    );
    assert_eq!(
        cli(&["scan", "--family", "pws2d", "--alpha", "1:2:0", "--beta", "0:1:2"]).code,
        2
    );
    assert_eq!(cli(&["--help"]).code, 0);
}

#[test]
fn map_documents_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nf.json");
    let first = cli(&[
        "map",
        "--family",
        "nf2d",
        "--tl",
        "0.1",
        "--dl",
        "0.3",
        "--tr",
        "-1.7",
        "--dr",
        "0.9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(first.code, 0);
    let again = cli(&["map", "--map", path.to_str().unwrap()]);
    assert_eq!(again.stdout, fs::read_to_string(&path).unwrap());
    let a = PwlMap::from_json(&again.stdout).unwrap();
    let b = pwl_tongues::pwlmap::normal_form_2d(0.1, 0.3, -1.7, 0.9);
    assert_eq!(a, b);
}

#[test]
fn trivial_grid_gives_four_rows() {
    let o = cli(&[
        "scan",
        "--family",
        "pws2d",
        "--alpha",
        "0:0:2",
        "--beta",
        "-0.6:-0.6:2",
        "--pmax",
        "5",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "alpha,beta,verdict,m,p,ell,max_modulus,word");
}

#[test]
fn scan_writes_summary_and_is_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let csv = |threads: &str| {
        let out = dir.path().join(format!("cells-{threads}.csv"));
        let summary = dir.path().join(format!("summary-{threads}.json"));
        let o = cli(&[
            "scan",
            "--family",
            "pws2d",
            "--alpha",
            "-0.6:-0.3:16",
            "--beta",
            "-0.7:-0.5:8",
            "--pmax",
            "9",
            "--threads",
            threads,
            "--out",
            out.to_str().unwrap(),
            "--summary",
            summary.to_str().unwrap(),
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        (fs::read(out).unwrap(), fs::read_to_string(summary).unwrap())
    };
    let (one, summary_one) = csv("1");
    let (three, summary_three) = csv("3");
    assert_eq!(one, three);
    assert_eq!(summary_one, summary_three);
    let summary: Value = serde_json::from_str(&summary_one).unwrap();
    assert_eq!(summary["cells"], 128);
    assert_eq!(summary["config"]["p_max"], 9);
    let tongues = summary["tongues"].as_array().unwrap();
    assert!(tongues.iter().any(|t| t["m"] == 2 && t["p"] == 7));
}

#[test]
fn single_word_scan_of_the_period_nine_orbit() {
    let o = cli(&[
        "scan",
        "--family",
        "nf2d",
        "--dl",
        "0.1",
        "--dr",
        "1.2",
        "--tl",
        "0.6:0.8:5",
        "--tr",
        "-1.65:-1.55:5",
        "--mode",
        "single-word",
        "--word",
        "LLRRRRLRR",
        "--format",
        "json",
    ]);
    let v = json(&o);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 25);
    assert!(cells
        .iter()
        .any(|c| c["verdict"]["kind"] == "mode_locked" && c["word_admissibility"] == "admissible"));
}

#[test]
fn bcb_on_a_tongue_edge_is_a_nonsmooth_fold() {
    let v = json(&cli(&[
        "bcb",
        "--family",
        "pws2d",
        "--beta",
        "-0.6",
        "--vary",
        "alpha",
        "--bracket",
        "-0.5:-0.3",
        "--word",
        "F[2,2,7]",
    ]));
    assert_eq!(v["event"]["classification"], "nonsmooth_fold");
    assert_eq!(v["audit"]["verdict"], "PASS");
}

#[test]
fn bcb_of_the_period_nine_orbit_is_persistence() {
    let v = json(&cli(&[
        "bcb",
        "--family",
        "nf2d",
        "--tl",
        "0.7",
        "--dl",
        "0.1",
        "--dr",
        "1.2",
        "--vary",
        "tr",
        "--bracket",
        "-1.63:-1.59",
        "--word",
        "LLRRRRLRR",
        "--flip",
        "7",
    ]));
    assert_eq!(v["event"]["classification"], "persistence");
    assert_eq!(v["audit"]["verdict"], "N/A");
    assert_eq!(v["ell_before"], 3);
    assert_eq!(v["ell_after"], 4);
}

#[test]
fn bcb_without_sign_change_exits_2() {
    let o = cli(&[
        "bcb",
        "--family",
        "pws2d",
        "--beta",
        "-0.6",
        "--vary",
        "alpha",
        "--bracket",
        "-0.5:-0.49",
        "--word",
        "F[2,2,7]",
        "--flip",
        "0",
    ]);
    assert_eq!(o.code, 2);
    assert_eq!(error_kind(&o), "NoSignChange");
}

#[test]
fn circle_exports_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("circle.csv");
    let v = json(&cli(&[
        "circle",
        "--family",
        "pws2d",
        "--alpha",
        "-0.444",
        "--beta",
        "-0.6",
        "--csv",
        path.to_str().unwrap(),
    ]));
    assert_eq!(v["degree"], 1);
    assert_eq!(v["rotation"]["approximant"], serde_json::json!([2, 7]));
    assert_eq!(v["ordering"]["d"], 4);
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("t,g,lift,x1,x2\n"));
    assert_eq!(
        text.lines().count(),
        1 + v["samples"].as_u64().unwrap() as usize
    );
}

#[test]
fn pencil_circle_reverses_orientation() {
    let v = json(&cli(&["circle", "--family", "nf2d", "--method", "pencil"]));
    assert_eq!(v["degree"], -1);
    assert_eq!(v["invertibility"], "homeomorphism");
}

#[test]
fn campaign_is_seeded() {
    let run_with = |threads: &str| {
        json(&cli(&[
            "campaign",
            "--seed",
            "11",
            "--families",
            "4",
            "--threads",
            threads,
        ]))
    };
    let a = run_with("1");
    let b = run_with("2");
    assert_eq!(a, b);
    assert_eq!(a["report"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn binary_propagates_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_pwl-tongues");
    let ok = Command::new(exe)
        .args(["cycle", "--family", "pws2d", "--word", "L"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(exe)
        .args([
            "bcb",
            "--family",
            "pws2d",
            "--vary",
            "alpha",
            "--bracket",
            "-0.5:-0.49",
            "--word",
            "LR",
            "--flip",
            "0",
        ])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("\"exit_code\":2"));
}
