use std::process::{Command, Output};

use proptest::prelude::*;
use tollkit::calibration::{builtin_scenario, eta_grid};
use tollkit_cli::analysis::{analyze, sweep, sweep_row, write_sweep_csv, SweepRow, SWEEP_HEADER};
use tollkit_cli::crossover::crossover;
use tollkit_cli::verify::{theorem_suite, verify_random, verify_scenario};
use tollkit_model::Regime;

fn tollkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tollkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn assert_row_invariants(row: &SweepRow, c_w: f64) {
    let revs = [row.rev_static_ro, row.rev_static_so, row.rev_dynamic_ro, row.rev_dynamic_so];
    let scs = [row.sc_static_ro, row.sc_static_so, row.sc_dynamic_ro, row.sc_opt];
    let rev_ratios = [
        row.rev_ratio_static_ro,
        row.rev_ratio_static_so,
        row.rev_ratio_dynamic_ro,
        row.rev_ratio_dynamic_so,
    ];
    let sc_ratios = [
        row.sc_ratio_static_ro,
        row.sc_ratio_static_so,
        row.sc_ratio_dynamic_ro,
        row.sc_ratio_dynamic_so,
    ];
    for (rev, ratio) in revs.iter().zip(rev_ratios) {
        if row.rev_dynamic_ro > 0.0 {
            assert!((rev / row.rev_dynamic_ro - ratio).abs() <= 1e-12, "eta {}", row.eta);
        }
        assert!(ratio <= 1.0 + 1e-12, "eta {}: revenue ratio {ratio}", row.eta);
        assert!(*rev <= row.rev_dynamic_ro * (1.0 + 1e-12));
    }
    for (sc, ratio) in scs.iter().zip(sc_ratios) {
        assert!((sc / row.sc_opt - ratio).abs() <= 1e-12, "eta {}", row.eta);
        assert!(ratio >= 1.0 - 1e-12, "eta {}: cost ratio {ratio}", row.eta);
        assert!(*sc >= row.sc_opt * (1.0 - 1e-12));
    }
    assert_eq!(row.tau_static_ro_usd, row.tau_static_ro_h * c_w);
    assert_eq!(row.tau_static_so_usd, row.tau_static_so_h * c_w);
}

#[test]
fn bay_bridge_sweep_rows_are_consistent() {
    let s = builtin_scenario("bay_bridge").unwrap();
    let rows = sweep(&s, &s.eta_sweep, None, 4096).unwrap();
    assert_eq!(rows.len(), 100);
    for row in &rows {
        assert_row_invariants(row, 22.0);
    }
    let plateau: Vec<_> = rows.iter().filter(|r| r.eta >= 8.697).collect();
    assert!(plateau.iter().all(|r| (r.sc_ratio_static_so - 1.78071480).abs() < 1e-7));
}

#[test]
fn nyc_sweep_rows_are_consistent() {
    let s = builtin_scenario("nyc").unwrap();
    let rows = sweep(&s, &s.eta_sweep, None, 4096).unwrap();
    for row in &rows {
        assert_row_invariants(row, 40.0);
    }
    let so: Vec<f64> = rows.iter().map(|r| r.rev_ratio_dynamic_so).collect();
    let lo = so.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = so.iter().cloned().fold(0.0, f64::max);
    assert!((lo - 0.94175936).abs() < 1e-7 && (hi - 0.99952020).abs() < 1e-7, "{lo} {hi}");
}

#[test]
fn row_values_follow_header() {
    let s = builtin_scenario("bay_bridge").unwrap();
    let row = sweep_row(&s, 1.5, None, 64).unwrap();
    let values = row.values();
    assert_eq!(values.len(), SWEEP_HEADER.len());
    assert_eq!(values[0], 1.5);
    assert_eq!(values[13], row.rev_ratio_static_ro);
    assert_eq!(values[20], row.sc_ratio_dynamic_so);
}

#[test]
fn all_transit_row_reads_as_unit_ratios() {
    let s = builtin_scenario("bay_bridge").unwrap();
    let row = sweep_row(&s, 0.1, None, 64).unwrap();
    assert_eq!(row.regime, Regime::AllTransit);
    assert_eq!(row.rev_static_ro, 0.0);
    assert_eq!(row.rev_ratio_static_ro, 1.0);
    assert_eq!(row.sc_ratio_static_ro, 1.0);
}

#[test]
fn csv_is_deterministic_and_formatted() {
    let s = builtin_scenario("nyc").unwrap();
    let etas = eta_grid(1.5, 18.0, 7);
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_sweep_csv(&sweep(&s, &etas, None, 512).unwrap(), &mut a).unwrap();
    write_sweep_csv(&sweep(&s, &etas, None, 512).unwrap(), &mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, format!("{},regime", SWEEP_HEADER.join(",")));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first.len(), SWEEP_HEADER.len() + 1);
    assert_eq!(first[0], "1.50000000");
    assert!(first[1..21].iter().all(|f| f.split('.').nth(1).map(str::len) == Some(8)));
    assert_eq!(lines.count(), 6);
}

#[test]
fn analyze_reports() {
    let bay = builtin_scenario("bay_bridge").unwrap();
    let report = analyze(&bay, 1.5, None, 4096).unwrap();
    assert!((report.row.sc_ratio_static_ro - 1.00034).abs() < 5e-6);
    let text = report.to_string();
    assert!(text.contains("regime: mixed_low"));
    assert!(text.contains("1.00034"));
    assert!(text.contains("$2.53"));

    let nyc = builtin_scenario("nyc").unwrap();
    let report = analyze(&nyc, 1.5, None, 4096).unwrap();
    assert!((report.row.rev_ratio_static_ro - 0.99568).abs() < 5e-6);
    assert!(report.to_string().contains("0.99568"));
    assert_eq!(report.jam_accumulation, Some(140_000.0));

    let text = analyze(&bay, 0.1, None, 64).unwrap().to_string();
    assert!(text.contains("all users take transit; revenue 0"));
}

#[test]
fn crossover_reports() {
    let bay = builtin_scenario("bay_bridge").unwrap();
    let r = crossover(&bay, None, 4096).unwrap();
    let eta = r.eta.unwrap();
    assert!((eta - 1.76).abs() < 0.01, "{eta}");
    assert_eq!(r.reference_eta, Some(2.1));
    assert!(r.discrepancy().unwrap() < -0.3);
    let text = r.to_string();
    assert!(text.contains("informational") && text.contains("reference crossover eta approximately 2.1"));

    let mut free = bay.clone();
    free.implemented_toll = Some(0.0);
    let eta = crossover(&free, None, 4096).unwrap().eta.unwrap();
    let p = bay.params_at(eta).unwrap();
    assert!(p.cost_gap().abs() < 1e-8, "{}", p.cost_gap());

    let mut none = bay.clone();
    none.implemented_toll = None;
    assert!(crossover(&none, None, 64).is_err());

    let mut huge = bay;
    huge.implemented_toll = Some(10_000.0);
    let r = crossover(&huge, None, 64).unwrap();
    assert!(r.eta.is_none());
    assert!(r.to_string().contains("no crossover"));
}

#[test]
fn scenario_verification_passes() {
    let bay = builtin_scenario("bay_bridge").unwrap();
    let summary = verify_scenario(&bay, None, 1e-4, 4096);
    assert!(summary.passed(), "{summary}");
    assert!(summary.notes.iter().any(|n| n.contains("cost bound")), "{:?}", summary.notes);
}

#[test]
fn zero_cases_pass_with_warning() {
    let s = verify_random(7, 0, 0, 1e-4, 10_000);
    assert!(s.passed());
    assert!(!s.warnings.is_empty());
}

#[test]
fn theorem_suite_small_run() {
    let s = theorem_suite(3, 500);
    assert!(s.passed(), "{s}");
    assert!(s.checks.iter().all(|c| c.cases > 0 || c.name.contains("free")));
}

#[test]
fn binary_exit_codes() {
    let ok = tollkit(&["analyze", "--scenario", "nyc", "--eta", "18"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("regime: mixed_mid"));

    let unknown = tollkit(&["analyze", "--scenario", "atlantis"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("atlantis"));

    let usage = tollkit(&["sweep", "--eta-range", "1:2"]);
    assert_eq!(usage.status.code(), Some(1));

    let coarse = tollkit(&["verify", "--scenario", "bay_bridge", "--step", "0.5"]);
    assert_eq!(coarse.status.code(), Some(2));
    assert!(stdout(&coarse).contains("FAIL"));

    let vacuous = tollkit(&["verify", "--random", "--cases", "0", "--network-cases", "0"]);
    assert_eq!(vacuous.status.code(), Some(0));
}

#[test]
fn binary_sweep_outputs() {
    let empty = tollkit(&["sweep", "--eta-range", "1:2:0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty).lines().count(), 1);

    let args = ["sweep", "--scenario", "bay_bridge", "--eta-range", "1.5:30:12"];
    let a = tollkit(&args);
    let b = tollkit(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 13);

    let dir = std::env::temp_dir().join(format!("tollkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("nyc.csv");
    let run = tollkit(&["sweep", "--scenario", "nyc", "--out", path.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run.stderr).contains("all columns identical"));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 19);
    let bad = dir.join("missing").join("x.csv");
    let fail = tollkit(&["sweep", "--out", bad.to_str().unwrap()]);
    assert_eq!(fail.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_reads_scenario_files() {
    let dir = std::env::temp_dir().join(format!("tollkit-scn-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bay.scn");
    std::fs::write(&path, builtin_scenario("bay_bridge").unwrap().to_string()).unwrap();
    let out = tollkit(&["crossover", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("crossover eta = 1.76"));
    std::fs::write(&path, "scenario.name = broken\n").unwrap();
    let out = tollkit(&["analyze", "--scenario", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bottleneck_rows_hold_invariants(eta in 0.5..40.0f64) {
        let s = builtin_scenario("bay_bridge").unwrap();
        let row = sweep_row(&s, eta, None, 64).unwrap();
        assert_row_invariants(&row, 22.0);
    }

    #[test]
    fn network_rows_hold_invariants(eta in 0.5..30.0f64, n_j in 1e4..1e6f64) {
        let s = builtin_scenario("nyc").unwrap();
        let row = sweep_row(&s, eta, Some(n_j), 256).unwrap();
        assert_row_invariants(&row, 40.0);
    }
}
