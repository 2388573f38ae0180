use std::collections::BTreeSet;

use num_bigint::BigInt;
use nwalk_cli::{run, Outcome, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use nwalk_typelab::TransitionSystem;
use proptest::prelude::*;
use serde_json::Value;

fn nwalk(args: &[&str]) -> Outcome {
    run(std::iter::once("nwalk").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = nwalk(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", out.stdout))
}

fn int_list(v: &Value) -> Vec<BigInt> {
    v.as_array().unwrap().iter().map(|x| x.to_string().parse().unwrap()).collect()
}

fn big(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn count_bridges_json() {
    let v = json(&["count", "--steps", "{-1};{1};{-1,1}", "--class", "bridge", "-n", "8", "--json"]);
    assert_eq!(int_list(&v), big(&[1, 0, 7, 0, 63, 0, 583, 0, 5407]));
}

#[test]
fn large_counts_stay_exact_in_json() {
    let v = json(&["count", "--family", "motzkin", "--class", "walk", "-n", "40", "--json"]);
    let last = int_list(&v).pop().unwrap();
    assert_eq!(last, num_traits::pow(BigInt::from(7), 40));
}

#[test]
fn weighted_counts_are_rational_strings() {
    let v = json(&["count", "--weights", "1/2,1/3,1/6", "--class", "excursion", "-n", "2", "--json"]);
    assert_eq!(v, serde_json::json!([1, 0, "1/3"]));
}

#[test]
fn classify_example() {
    let out = nwalk(&["classify", "--walk", "{2};{-1,1};{-2,0};{0,1,2}"]);
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(out.stdout.lines().next(), Some("bridge=true meander=true excursion=false"));
}

fn gamma_by_bisection() -> f64 {
    let f = |g: f64| 1024.0 * g.powi(4) - 8019.0 * g * g + 2916.0;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = (lo + hi) / 2.0;
        if f(lo) * f(mid) <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    lo
}

#[test]
fn asym_motzkin_excursion_example() {
    let v = json(&["asym", "--family", "motzkin", "--class", "excursion", "-n", "40", "--json"]);
    let n = 40f64;
    let want = 9.0 / 16.0 * 7f64.powi(40) - gamma_by_bisection() * 6f64.powi(40) / (std::f64::consts::PI * n.powi(3)).sqrt();
    let got = v["asymptotic"].as_f64().unwrap();
    assert!((got / want - 1.0).abs() < 1e-12, "{got} vs {want}");
    let ratio = v["ratio"].as_f64().unwrap();
    assert!((ratio - 1.0).abs() < 1e-3, "{ratio}");
    assert!(v["exact"].is_number());
}

#[test]
fn usage_errors_exit_1() {
    for args in [
        &["count", "-n", "3", "--bogus"][..],
        &["count", "--steps", "{-1};{1", "-n", "3"],
        &["count", "--steps", "{-1};{1}", "--weights", "1,2,3", "-n", "3"],
        &["count", "--steps", "{-1};{1}", "--weights", "1,-2", "-n", "3"],
        &["count", "--steps", "{}", "-n", "3"],
        &["frobnicate"],
        &["oracle-check", "--row", "Z9"],
        &["classify", "--walk", "{1};{x}"],
        &["simulate", "-n", "10", "--stat", "height"],
        &["series", "--family", "motzkin", "--class", "bridge", "--source", "closed-form"],
        &["count", "-n", "20", "--verify"],
    ] {
        let out = nwalk(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty() && out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_0() {
    let out = nwalk(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("oracle-check"));
    assert_eq!(nwalk(&["--version"]).code, EXIT_OK);
    assert_eq!(nwalk(&["count", "--help"]).code, EXIT_OK);
}

#[test]
fn verify_agrees_on_gapped_steps() {
    let out = nwalk(&["count", "--steps", "{-2};{0,3};{1}", "--class", "excursion", "-n", "9", "--verify", "--json"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    assert!(out.stderr.contains("enumeration agrees"));
}

#[test]
fn oracle_check_exit_codes() {
    let a1 = nwalk(&["oracle-check", "--row", "a1"]);
    assert_eq!(a1.code, EXIT_OK, "{}", a1.stdout);
    assert!(a1.stdout.contains("pass"));
    // E1's tabulated formula is off by one index, so the full table reports a failure
    assert_eq!(nwalk(&["oracle-check", "--row", "E1"]).code, EXIT_VERIFY);
    let all = nwalk(&["oracle-check", "--json"]);
    assert_eq!(all.code, EXIT_VERIFY);
    let v: Value = serde_json::from_str(&all.stdout).unwrap();
    assert_eq!(v["failed"], 1);
    let failing: Vec<&str> = v["rows"].as_array().unwrap().iter().filter(|r| r["status"] == "FAIL").map(|r| r["row"].as_str().unwrap()).collect();
    assert_eq!(failing, ["E1"]);
}

#[test]
fn e1_counts_are_the_tabulated_formula_shifted_by_one() {
    let out = nwalk(&["oracle-check", "--row", "E1", "--dump", "--json", "-n", "14"]);
    assert_eq!(out.code, EXIT_VERIFY);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let dp = int_list(&v["rows"][0]["counts"]);
    let tabulated = |n: u32| num_traits::pow(BigInt::from(3), n as usize + 1) - num_traits::pow(BigInt::from(2), n as usize);
    assert_eq!(dp[0], BigInt::from(1));
    for n in 1..14u32 {
        assert_eq!(dp[n as usize + 1], tabulated(n), "n={n}");
    }
}

#[test]
fn dp_only_rows_are_dumped() {
    let v = json(&["oracle-check", "--row", "M38", "-n", "6", "--json"]);
    let row = &v["rows"][0];
    assert_eq!(row["status"], "dp-only");
    assert!(row["formula"].is_null());
    assert_eq!(int_list(&row["counts"]).len(), 7);
    let list = json(&["oracle-check", "--list", "--json"]);
    assert_eq!(list["rows"].as_array().unwrap().len(), nwalk_cli::registry::ROWS.len());
}

#[test]
fn automaton_json_round_trips() {
    let v = json(&["automaton", "--family", "motzkin", "--variant", "meander"]);
    let doc = TransitionSystem::from_json(&v.to_string()).unwrap();
    assert_eq!(doc.states.len(), 2);
    for key in ["states", "transitions", "boundary"] {
        assert!(v[key].is_array(), "{key}");
    }
    let t = &v["transitions"][0];
    for key in ["from", "step", "to", "dmin", "dmax"] {
        assert!(t[key].is_i64(), "{key}");
    }
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("nwalk-aut-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let out = nwalk(&["automaton", "--steps", "{-1};{1};{-1,1}", "--out", p]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.is_empty());
    let doc = TransitionSystem::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(doc.states.len(), 1);
    assert_eq!(doc.states[0].g, 2);
}

#[test]
fn series_sources_agree() {
    let coeffs = |source: &str, class: &str| {
        int_list(&json(&["series", "--family", "dyck", "--class", class, "--order", "20", "--source", source, "--json"])["coefficients"])
    };
    for class in ["bridge", "meander", "excursion", "walk"] {
        let dp = coeffs("dp", class);
        assert_eq!(dp.len(), 20);
        assert_eq!(coeffs("closed-form", class), dp, "{class}");
        assert_eq!(coeffs("automaton", class), dp, "{class}");
    }
    let text = nwalk(&["series", "--family", "dyck", "--class", "bridge", "--order", "9"]);
    assert_eq!(text.stdout.trim(), "1 + 7*t^2 + 63*t^4 + 583*t^6 + 5407*t^8");
}

#[test]
fn simulate_csv_is_deterministic() {
    let args = ["simulate", "--weights", "1/2,1/2,0", "-n", "30", "--runs", "20000", "--seed", "42", "--stat", "returns", "--format", "csv"];
    let a = nwalk(&args);
    assert_eq!(a.code, EXIT_OK, "{}", a.stderr);
    assert_eq!(a.stdout.lines().next(), Some("bin,count"));
    assert_eq!(a, nwalk(&args));
    let seeded = nwalk(&["simulate", "--weights", "1/2,1/2,0", "-n", "30", "--runs", "20000", "--seed", "43", "--stat", "returns", "--format", "csv"]);
    assert_ne!(a.stdout, seeded.stdout);
}

#[test]
fn simulate_reports_probabilities() {
    let v = json(&["simulate", "-n", "10", "--runs", "4000", "--seed", "1", "--stat", "walk", "--json"]);
    assert_eq!(v["estimate"], 1.0);
    let v = json(&["simulate", "-n", "40", "--runs", "4000", "--seed", "1", "--json"]);
    assert_eq!(v["class"], "excursion");
    assert!(v["hits"].as_u64().unwrap() <= 4000);
}

#[test]
fn zero_acceptance_is_a_failure() {
    let out = nwalk(&["simulate", "--steps", "{-1}", "--weights", "1", "-n", "5", "--runs", "10", "--stat", "returns"]);
    assert_eq!(out.code, EXIT_VERIFY);
}

#[test]
fn feasible_from_topology_files() {
    let dir = std::env::temp_dir().join(format!("nwalk-net-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let g = dir.join("g.txt");
    let c = dir.join("c.txt");
    std::fs::write(&g, "a b\nb c\nc d\n# comment\nd e\n").unwrap();
    std::fs::write(&c, "a encap\nb both\nc decap\nd decap\ne passive\n").unwrap();
    let (g, c) = (g.to_str().unwrap().to_owned(), c.to_str().unwrap().to_owned());
    let v = json(&["feasible", "--topology", &g, "--caps", &c, "--path", "a,b,c,d", "--json"]);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["assignment"], serde_json::json!([1, 1, -1, -1]));
    let v = json(&["feasible", "--topology", &g, "--caps", &c, "--path", "a,b,c", "--json"]);
    assert_eq!(v["feasible"], false);
    assert!(v["assignment"].is_null());
    assert_eq!(nwalk(&["feasible", "--topology", &g, "--caps", &c, "--path", "a,c"]).code, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn feasible_rate_has_theory() {
    let v = json(&["feasible", "--dist", "encap=1/3,decap=1/3,both=1/3", "-n", "40", "--runs", "2000", "--json"]);
    assert_eq!(v["theory"]["regime"], "constant");
    assert!(v["estimate"].as_f64().unwrap() > 0.1);
}

#[test]
fn module_commands() {
    let v = json(&["dyck", "--class", "excursion", "--weights", "1/3,1/3,1/3", "--order", "8", "--json"]);
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, "4/9", 0, "28/81", 0, "224/729", 0]));
    assert_eq!(v["regime"]["name"], "constant");
    let v = json(&["motzkin", "--check", "closed-forms", "--order", "20", "--json"]);
    assert_eq!(v["passed"], true);
    assert!(v["quartic_first_nonzero"].is_null());
}

#[test]
fn csv_where_unsupported_is_usage_error() {
    assert_eq!(nwalk(&["motzkin", "--format", "csv"]).code, EXIT_USAGE);
}

/// Test-local classification: every compatible classical walk, explicitly.
fn brute_classify(walk: &[Vec<i64>]) -> (bool, bool, bool) {
    let mut paths: Vec<(i64, bool)> = vec![(0, true)];
    for s in walk {
        paths = paths.iter().flat_map(|&(x, ok)| s.iter().map(move |d| (x + d, ok && x + d >= 0))).collect();
    }
    let bridge = paths.iter().any(|&(x, _)| x == 0);
    let meander = paths.iter().any(|&(_, ok)| ok);
    let excursion = paths.iter().any(|&(x, ok)| ok && x == 0);
    (bridge, meander, excursion)
}

fn walk_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::btree_set(-2i64..=2, 1..=3), 0..=6)
        .prop_map(|w| w.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn render(walk: &[Vec<i64>]) -> String {
    walk.iter()
        .map(|s| format!("{{{}}}", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(";")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn classify_matches_compatible_walks(walk in walk_strategy()) {
        let v = json(&["classify", "--walk", &render(&walk), "--json"]);
        let (b, m, e) = brute_classify(&walk);
        prop_assert_eq!(v["bridge"].as_bool(), Some(b));
        prop_assert_eq!(v["meander"].as_bool(), Some(m));
        prop_assert_eq!(v["excursion"].as_bool(), Some(e));
        let reach: BTreeSet<i64> = walk.iter().fold(BTreeSet::from([0]), |acc, s| acc.iter().flat_map(|x| s.iter().map(move |d| x + d)).collect());
        let shown = format!("{{{}}}", reach.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
        prop_assert_eq!(v["reach"].as_str(), Some(shown.as_str()));
    }

    #[test]
    fn every_json_output_parses(class in prop::sample::select(vec!["walk", "bridge", "meander", "excursion"]), n in 0usize..12) {
        let n = n.to_string();
        let v = json(&["count", "--family", "motzkin", "--class", class, "-n", &n, "--json"]);
        prop_assert_eq!(v.as_array().map(Vec::len), Some(n.parse::<usize>().unwrap() + 1));
        let csv = nwalk(&["count", "--family", "motzkin", "--class", class, "-n", &n, "--format", "csv"]);
        prop_assert_eq!(csv.stdout.lines().count(), n.parse::<usize>().unwrap() + 2);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nwalk");
    let status = |args: &[&str]| std::process::Command::new(bin).args(args).output().unwrap();
    let ok = status(&["count", "--steps", "{-1};{1};{-1,1}", "--class", "bridge", "-n", "8", "--json"]);
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(int_list(&v), big(&[1, 0, 7, 0, 63, 0, 583, 0, 5407]));
    assert_eq!(status(&["count", "--nope"]).status.code(), Some(EXIT_USAGE));
    assert_eq!(status(&["oracle-check", "--row", "E1"]).status.code(), Some(EXIT_VERIFY));
}
