use macias_cli::{run_cli, EXIT_BUDGET, EXIT_OK, EXIT_UNSUPPORTED, EXIT_USAGE, EXIT_VIOLATION};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["macias"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sigma", "3", "--method", "oracle"][..],
        &["comax", "2", "3", "--ring", "Z,Zi"],
        &["closure", "3", "--method", "nope"],
        &["sigma", "3", "--ring", "Q"],
        &["sigma", "1+", "--ring", "Zi"],
        &["generate", "irreducibles", "--from", "4"],
        &["generate", "maximal-ideals", "--count", "0"],
        &["dense", "everything"],
        &["verify", "--suite", "NoSuchCheck"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn unsupported_and_budget() {
    assert_eq!(run(&["jrad", "x", "--ring", "Z[x]"]).0, EXIT_UNSUPPORTED);
    assert_eq!(
        run(&[
            "closure", "x", "--ring", "Z[x]", "--method", "exact-j", "--window", "1", "--degree",
            "1"
        ])
        .0,
        EXIT_UNSUPPORTED
    );
    assert_eq!(run(&["golomb", "3", "--ring", "Zi"]).0, EXIT_UNSUPPORTED);
    assert_eq!(
        run(&["sigma", "2", "--ring", "Zi", "--window", "5000"]).0,
        EXIT_BUDGET
    );
}

#[test]
fn refuted_density_exits_one() {
    let (code, out, _) = run(&["dense", "set:2;3", "--sep-window", "10"]);
    assert_eq!(code, EXIT_VIOLATION, "{out}");
    assert!(out.contains("refuted by"));
}

#[test]
fn product_ring_suite_reports_expected_failure() {
    let (code, out, _) = run(&[
        "verify", "--ring", "ZxZ", "--window", "6", "--suite", "Cor3.5", "--output", "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(j["result"]["summary"]["expected_fail"], 1);
    assert_eq!(
        j["result"]["reports"][0]["violations"][0]["inputs"],
        serde_json::json!(["(2,0)", "(0,3)"])
    );
}

#[test]
fn seed_comes_from_flag_or_environment() {
    let args = [
        "verify", "--window", "5", "--suite", "T2.1-1", "--output", "json",
    ];
    let seed_of = |out: &str| serde_json::from_str::<Value>(out).unwrap()["seed"].clone();
    let (_, a, _) = run(&args);
    assert_eq!(seed_of(&a), 0);
    std::env::set_var("MACIAS_SEED", "11");
    let (_, b, _) = run(&args);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "5"]);
    let (_, c, _) = run(&with_flag);
    std::env::remove_var("MACIAS_SEED");
    assert_eq!(seed_of(&b), 11);
    assert_eq!(seed_of(&c), 5);
}

#[test]
fn listing_covers_the_registry() {
    let (code, out, _) = run(&["verify", "--list", "--output", "json"]);
    assert_eq!(code, EXIT_OK);
    let j: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        j["result"].as_array().unwrap().len(),
        macias_core::lab::registry().len()
    );
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("closure"));
}
