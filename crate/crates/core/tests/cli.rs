use serde_json::Value;
use tropbal::cli::run;

fn tropbal(args: &[&str]) -> tropbal::cli::Outcome {
    run(std::iter::once("tropbal").chain(args.iter().copied()))
}

fn fixture_dir(name: &str) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = tropbal(&["fixture", name, "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    dir
}

fn file(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn fixture_writes_three_files() {
    let dir = fixture_dir("toric-simplex");
    for suffix in ["degeneration", "curve", "annuli"] {
        let text =
            std::fs::read_to_string(file(&dir, &format!("toric-simplex.{suffix}.json"))).unwrap();
        serde_json::from_str::<Value>(&text).unwrap();
    }
}

#[test]
fn fixture_stdout_matches_files() {
    let dir = fixture_dir("k3-quartic");
    let combined: Value =
        serde_json::from_str(&tropbal(&["fixture", "k3-quartic"]).stdout).unwrap();
    let deg: Value = serde_json::from_str(
        &std::fs::read_to_string(file(&dir, "k3-quartic.degeneration.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(combined["degeneration"], deg);
}

#[test]
fn check_output_is_byte_deterministic() {
    let dir = fixture_dir("k3-quartic");
    let deg = file(&dir, "k3-quartic.degeneration.json");
    let curve = file(&dir, "k3-quartic.curve.json");
    let args = [
        "check",
        "--degeneration",
        deg.as_str(),
        "--curve",
        curve.as_str(),
    ];
    let a = tropbal(&args);
    let b = tropbal(&args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(report["overall"], "all_balanced");
    assert_eq!(report["verdicts"][0]["vertex"], "d0");
    assert_eq!(
        report["verdicts"][0]["witness"],
        serde_json::json!({"H": 1})
    );
}

#[test]
fn check_text_format() {
    let dir = fixture_dir("toric-simplex");
    let deg = file(&dir, "toric-simplex.degeneration.json");
    let curve = file(&dir, "toric-simplex.curve.json");
    let out = tropbal(&[
        "check",
        "--degeneration",
        &deg,
        "--curve",
        &curve,
        "--format",
        "text",
    ]);
    assert_eq!(out.code, 0);
    assert!(out
        .stdout
        .contains("c {D0,D1,D2} sigma=(0, 0, 0): consistent with the balancing condition"));
    assert!(out.stdout.ends_with("overall: all_balanced\n"));
}

#[test]
fn weights_set_mode_overrides_curve() {
    let dir = fixture_dir("toric-simplex");
    let deg = file(&dir, "toric-simplex.degeneration.json");
    let curve_path = file(&dir, "toric-simplex.curve.json");
    let annuli = file(&dir, "toric-simplex.annuli.json");
    let mut curve: Value =
        serde_json::from_str(&std::fs::read_to_string(&curve_path).unwrap()).unwrap();
    curve["edges"][0]["weight"] = serde_json::json!({"D0": 4, "D1": -2, "D2": -2});
    std::fs::write(&curve_path, curve.to_string()).unwrap();

    let plain = tropbal(&["check", "--degeneration", &deg, "--curve", &curve_path]);
    assert_eq!(plain.code, 1);
    let set = tropbal(&[
        "check",
        "--degeneration",
        &deg,
        "--curve",
        &curve_path,
        "--weights",
        &annuli,
    ]);
    assert_eq!(set.code, 0);
    let verify = tropbal(&[
        "check",
        "--degeneration",
        &deg,
        "--curve",
        &curve_path,
        "--weights",
        &annuli,
        "--weights-mode",
        "verify",
    ]);
    assert_eq!(verify.code, 2);
    let err: Value = serde_json::from_str(&verify.stdout).unwrap();
    assert_eq!(err["error"], "E_WEIGHT_MISMATCH");
}

#[test]
fn errors_print_only_the_error_object() {
    let dir = fixture_dir("toric-simplex");
    let deg = file(&dir, "toric-simplex.degeneration.json");
    let curve_path = file(&dir, "toric-simplex.curve.json");
    let mut curve: Value =
        serde_json::from_str(&std::fs::read_to_string(&curve_path).unwrap()).unwrap();
    curve["edges"][0]["weight"] = serde_json::json!({"D0": 0, "D1": 0, "D2": 0});
    std::fs::write(&curve_path, curve.to_string()).unwrap();

    let strict = tropbal(&[
        "check",
        "--degeneration",
        &deg,
        "--curve",
        &curve_path,
        "--strict",
    ]);
    assert_eq!(strict.code, 2);
    let err: Value = serde_json::from_str(&strict.stdout).unwrap();
    assert_eq!(err.as_object().unwrap().len(), 2);
    assert_eq!(err["error"], "E_ZERO_WEIGHT");

    // Lenient mode downgrades a zero weight to a warning; the star is then unbalanced.
    let lenient = tropbal(&["check", "--degeneration", &deg, "--curve", &curve_path]);
    assert_eq!(lenient.code, 1);
    let report: Value = serde_json::from_str(&lenient.stdout).unwrap();
    assert_eq!(report["warnings"][0]["code"], "E_ZERO_WEIGHT");

    let missing = tropbal(&[
        "check",
        "--degeneration",
        "/nonexistent",
        "--curve",
        &curve_path,
    ]);
    assert_eq!(missing.code, 2);
    let err: Value = serde_json::from_str(&missing.stdout).unwrap();
    assert_eq!(err["error"], "E_IO");
}

#[test]
fn alpha_and_locate() {
    let dir = fixture_dir("k3-quartic");
    let deg = file(&dir, "k3-quartic.degeneration.json");
    let out = tropbal(&["alpha", "--degeneration", &deg, "--stratum", "D1,D0"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["stratum"], serde_json::json!(["D0", "D1"]));
    assert_eq!(
        v["alpha"]["entries"],
        serde_json::json!([[-3], [1], [1], [1]])
    );

    let out = tropbal(&["alpha", "--degeneration", &deg, "--stratum", "D0,D1,D2,D3"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("E_UNKNOWN_STRATUM"));

    let out = tropbal(&[
        "locate",
        "--degeneration",
        &deg,
        "--point",
        "D1=1/3,D2=1/3,D3=1/3",
        "--format",
        "text",
    ]);
    assert_eq!(out.stdout, "{D1,D2,D3}\n");
    let out = tropbal(&[
        "locate",
        "--degeneration",
        &deg,
        "--point",
        "D0=1/3,D1=1/3,D2=1/3",
    ]);
    assert_eq!(out.code, 0);
    let out = tropbal(&[
        "locate",
        "--degeneration",
        &deg,
        "--point",
        "D0=1/4,D1=1/4,D2=1/4,D3=1/4",
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("E_NOT_IN_SKELETON"));
}

#[test]
fn skeleton_and_weights() {
    let dir = fixture_dir("toric-simplex");
    let deg = file(&dir, "toric-simplex.degeneration.json");
    let out = tropbal(&["skeleton", "--degeneration", &deg]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["faces"].as_array().unwrap().len(), 1);
    assert_eq!(v["faces"][0]["face"], serde_json::json!(["D0", "D1", "D2"]));

    let annuli = file(&dir, "toric-simplex.annuli.json");
    let out = tropbal(&["weights", "--annuli", &annuli]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(
        v["edges"][0]["weight"],
        serde_json::json!({"D0": 2, "D1": -1, "D2": -1})
    );
}

#[test]
fn usage_errors_exit_2() {
    let out = tropbal(&["check"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("E_USAGE"));
    let out = tropbal(&["fixture", "nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("E_UNKNOWN_FIXTURE"));
    let out = tropbal(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("check"));
}
