use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn tischler(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tischler"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let (code, stdout, stderr) = tischler(&a);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

#[test]
fn obstructed_graph_exits_one() {
    let (code, r) = json(&["obstruct", "data/fig6.rot"]);
    assert_eq!(code, 1);
    assert_eq!(r["schema"], "tischler-report/1");
    assert_eq!(r["results"]["obstructed"], true);
    assert_eq!(
        r["results"]["witness_edge_endpoints"],
        serde_json::json!([[0, 1], [2, 3]])
    );
    let (code, _) = json(&["obstruct", "data/fig6.rot", "--expect", "obstructed"]);
    assert_eq!(code, 0);
    let (code, r) = json(&["obstruct", "data/k4.rot"]);
    assert_eq!(
        (code, &r["results"]["obstructed"]),
        (0, &Value::Bool(false))
    );
}

#[test]
fn degree_three_nonpolynomial_enumeration() {
    let (code, r) = json(&[
        "enumerate",
        "--degree",
        "3",
        "--unobstructed",
        "--nonpolynomial",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["count"], 1);
    assert_eq!(
        r["results"]["entries"][0]["branching"],
        serde_json::json!([1, 1, 1, 1])
    );
}

#[test]
fn power_map_report() {
    let (code, r) = json(&["verify-map", "--name", "zbar", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["counts"]["superattracting"], 2);
    assert_eq!(r["results"]["counts"]["repelling"], 3);
    assert_eq!(r["results"]["identity_ok"], true);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["enumerate", "--degree", "4", "--json"],
        vec!["verify-map", "--name", "tetrahedral", "--json"],
        vec!["check-all", "--seed", "5", "--json"],
    ] {
        let a = tischler(&args);
        let b = tischler(&args);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn human_and_json_verdicts_agree() {
    for args in [
        vec!["obstruct", "data/fig6.rot"],
        vec!["levy", "data/fig6.rot"],
        vec!["validate", "data/k4.rot"],
        vec!["symmetry", "data/k4.rot"],
        vec!["trees", "--degree", "4"],
        vec!["verify-icosahedral"],
    ] {
        let (code_h, human, _) = tischler(&args);
        let (code_j, r) = json(&args);
        assert_eq!(code_h, code_j, "{args:?}");
        let pass = r["pass"].as_bool().unwrap();
        assert!(human.starts_with(&format!(
            "{}: {}",
            args[0],
            if pass { "PASS" } else { "FAIL" }
        )));
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(tischler(&["no-such-command"]).0, 2);
    assert_eq!(tischler(&["obstruct", "missing.rot"]).0, 2);
    assert_eq!(tischler(&["enumerate", "--degree", "3", "--bogus"]).0, 2);
    assert_eq!(tischler(&["verify-map", "--name", "nope"]).0, 2);
    assert_eq!(
        tischler(&[
            "enumerate",
            "--degree",
            "3",
            "--nonpolynomial",
            "--antipolynomial"
        ])
        .0,
        2
    );
    assert_eq!(tischler(&["--help"]).0, 0);
}

#[test]
fn levy_cycle_on_fig6() {
    let (code, r) = json(&["levy", "data/fig6.rot"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["certified"], true);
    assert_eq!(r["results"]["thurston_matrix"], serde_json::json!([["1"]]));
}

#[test]
fn pullback_orbit_of_stored_seed() {
    let (code, r) = json(&[
        "pullback",
        "data/k4.rot",
        "--curve",
        "@data/k4_fig7_seed.word",
        "--iterate",
        "6",
    ]);
    assert_eq!(code, 0);
    let cx: Vec<u64> = r["results"]["orbit"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["complexity"].as_u64().unwrap())
        .collect();
    assert_eq!(cx, vec![12, 8, 4]);
    assert_eq!(r["results"]["end"]["reason"], "cycle");
    let (code, r) = json(&[
        "pullback",
        "data/k4.rot",
        "--curve",
        "@data/k4_fig7_seed.word",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["complexity"], 12);
    assert_eq!(r["results"]["total_complexity"], 8);
    let (_, by_flag) = json(&[
        "pullback",
        "--graph",
        "data/k4.rot",
        "--curve",
        "data/k4_fig7_seed.word",
    ]);
    assert_eq!(by_flag, r);
    assert_eq!(tischler(&["pullback", "--curve", "e0"]).0, 2);
}

#[test]
fn extracted_graph_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("tischler-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("g.rot");
    let (code, stdout, _) = tischler(&[
        "extract-graph",
        "--name",
        "f_2_1",
        "--out",
        out.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let report: Value = serde_json::from_str(&stdout).unwrap();
    let (code, v) = json(&["validate", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        v["results"]["tischler"]["canonical_code"],
        report["results"]["tischler"]["canonical_code"]
    );
    assert_eq!(
        v["results"]["tischler"]["branching"],
        serde_json::json!([3, 2, 1])
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn map_files_are_accepted() {
    let dir = std::env::temp_dir().join(format!("tischler-map-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tetra.map");
    std::fs::write(&path, "# 3z^2 / (2z^3 + 1)\n0 0 3+0i\n1 0 0 2\n").unwrap();
    let (code, r) = json(&["verify-map", "--map", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["counts"]["superattracting"], 4);
    assert_eq!(r["results"]["counts"]["repelling"], 6);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn data_directory_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_tischler"))
        .args(["validate", "k4.rot", "--json"])
        .env("TISCHLER_DATA", root().join("data"))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_all_passes() {
    let (code, stdout, _) = tischler(&["check-all"]);
    assert_eq!(code, 0, "{stdout}");
    assert_eq!(
        stdout
            .lines()
            .filter(|l| l.trim_start().starts_with("PASS"))
            .count(),
        12
    );
}
