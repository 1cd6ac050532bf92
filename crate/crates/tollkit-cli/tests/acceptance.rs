//! Acceptance gate: one PASS/FAIL line per sub-check, grouped by criterion.
//!
//! Sub-checks listed in `KNOWN_UNMET` are reported as FAIL and do not fail
//! the target; any other failure, or a known item that starts passing, does.

use std::collections::BTreeSet;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tollkit::bottleneck as bn;
use tollkit::calibration::{builtin_scenario, eta_grid, Scenario};
use tollkit::mfd;
use tollkit_cli::analysis::{sweep, sweep_row, SweepRow};
use tollkit_cli::crossover::crossover;
use tollkit_cli::verify::{
    network_suite, oracle_suite, random_network_case, relative_gap, theorem_suite, VerifySummary,
    LIMIT_JAM_ACCUMULATION, LIMIT_TOLERANCE,
};

const SEED: u64 = 42;
const GRID: usize = 4096;

const KNOWN_UNMET: [&str; 3] = ["6/bay-sc-1.25", "9/jam-limit-literal", "10/nyc-crossover"];

#[derive(Default)]
struct Gate {
    failed: BTreeSet<String>,
    count: usize,
}

impl Gate {
    fn report(&mut self, id: &str, pass: bool, detail: String) {
        self.count += 1;
        let status = if pass { "PASS" } else { "FAIL" };
        let known = if !pass && KNOWN_UNMET.contains(&id) { " [known unmet]" } else { "" };
        println!("{status} {id:<28} {detail}{known}");
        if !pass {
            self.failed.insert(id.to_string());
        }
    }

    fn near(&mut self, id: &str, got: f64, want: f64, tol: f64) {
        let pass = (got - want).abs() <= tol;
        self.report(id, pass, format!("got {got:.8} want {want:.8} +/- {tol:.0e}"));
    }

    fn suite(&mut self, id: &str, summary: &VerifySummary, names: &[&str]) {
        for name in names {
            match summary.check(name) {
                Some(c) => self.report(
                    &format!("{id}/{name}"),
                    c.passed() && c.cases > 0,
                    format!(
                        "cases {} failures {} worst {:.3e} tol {:.0e}",
                        c.cases, c.failures, c.worst, c.tolerance
                    ),
                ),
                None => self.report(&format!("{id}/{name}"), false, "check missing".into()),
            }
        }
    }
}

fn scenario(name: &str) -> Scenario {
    builtin_scenario(name).expect("builtin scenario")
}

fn row(s: &Scenario, eta: f64) -> SweepRow {
    sweep_row(s, eta, None, GRID).expect("sweep row")
}

fn criterion_1(g: &mut Gate) {
    let r = row(&scenario("bay_bridge"), 1.5);
    g.near("1/bay-static-ro-sc", r.sc_ratio_static_ro, 1.00033537, 1e-4);
    g.near("1/bay-dynamic-ro-sc", r.sc_ratio_dynamic_ro, 1.00015769, 1e-4);
}

fn criteria_2_3(g: &mut Gate) {
    let s = scenario("bay_bridge");
    let rows = sweep(&s, &s.eta_sweep, None, GRID).expect("bay sweep");
    let at = |eta: f64| rows.iter().min_by(|a, b| (a.eta - eta).abs().total_cmp(&(b.eta - eta).abs())).unwrap();
    g.near("2/bay-static-so-8.40909", at(8.40909).sc_ratio_static_so, 1.75844216, 1e-3);

    let worst = |pick: fn(&SweepRow) -> f64, from: f64| {
        rows.iter()
            .filter(|r| r.eta >= from - 1e-4)
            .map(|r| (pick(r) - 1.78071480).abs())
            .fold(0.0, f64::max)
    };
    let so = worst(|r| r.sc_ratio_static_so, 8.697);
    g.report("2/bay-static-so-plateau", so <= 1e-3, format!("max deviation {so:.3e} for eta >= 8.697"));
    let ro = worst(|r| r.sc_ratio_static_ro, 15.894);
    g.report("2/bay-static-ro-rejoins", ro <= 1e-3, format!("max deviation {ro:.3e} for eta >= 15.894"));

    let peak = rows.iter().max_by(|a, b| a.sc_ratio_static_ro.total_cmp(&b.sc_ratio_static_ro)).unwrap();
    g.near("3/bay-static-ro-peak", peak.sc_ratio_static_ro, 2.06002496, 5e-3);
    let step = s.eta_sweep[1] - s.eta_sweep[0];
    let off = (peak.eta - 12.1515).abs();
    g.report(
        "3/bay-static-ro-peak-eta",
        off <= step + 1e-4,
        format!("at eta {:.4}, {off:.4} from 12.1515 (step {step:.4})", peak.eta),
    );
}

fn criteria_4_5(g: &mut Gate) {
    let s = scenario("nyc");
    let r = row(&s, 1.5);
    g.near("4/nyc-static-ro-rev", r.rev_ratio_static_ro, 0.99568183, 1e-4);
    g.near("4/nyc-dynamic-so-rev", r.rev_ratio_dynamic_so, 0.99952020, 1e-4);
    g.near("4/nyc-static-ro-sc", r.sc_ratio_static_ro, 1.00005841, 1e-4);

    let r = row(&s, 18.0);
    g.near("5/nyc-static-ro-rev", r.rev_ratio_static_ro, 0.47583426, 1e-3);
    g.near("5/nyc-dynamic-so-rev", r.rev_ratio_dynamic_so, 0.94175936, 1e-3);
    g.near("5/nyc-static-ro-sc", r.sc_ratio_static_ro, 1.76931204, 1e-3);
    g.near("5/nyc-dynamic-ro-sc", r.sc_ratio_dynamic_ro, 1.04808200, 1e-3);

    for eta in [1.5, 18.0] {
        let rows: Vec<SweepRow> = s
            .jam_sweep()
            .iter()
            .map(|&n_j| sweep_row(&s, eta, Some(n_j), GRID).expect("jam row"))
            .collect();
        let same = rows.windows(2).all(|w| w[0].values() == w[1].values());
        g.report(
            &format!("5/nyc-jam-sweep-eta-{eta}"),
            same,
            format!("{} jam accumulations {:?}", rows.len(), s.jam_sweep()),
        );
    }
}

fn criterion_6(g: &mut Gate) {
    let etas = eta_grid(1.5, 5.0, 351);
    let bay = scenario("bay_bridge");
    let nyc = scenario("nyc");
    let bay_rows = sweep(&bay, &etas, None, GRID).expect("bay rows");
    let nyc_rows = sweep(&nyc, &etas, None, GRID).expect("nyc rows");
    let extreme = |rows: &[SweepRow], pick: fn(&SweepRow) -> f64, max: bool| {
        rows.iter()
            .map(|r| (pick(r), r.eta))
            .reduce(|a, b| if (b.0 > a.0) == max { b } else { a })
            .unwrap()
    };
    let (v, at) = extreme(&bay_rows, |r| r.rev_ratio_static_ro, false);
    g.report("6/bay-rev-0.90", v >= 0.90, format!("min {v:.6} at eta {at:.3}"));
    let (v, at) = extreme(&nyc_rows, |r| r.rev_ratio_static_ro, false);
    g.report("6/nyc-rev-0.80", v >= 0.80, format!("min {v:.6} at eta {at:.3}"));
    let (v, at) = extreme(&nyc_rows, |r| r.sc_ratio_static_ro, true);
    g.report("6/nyc-sc-1.08", v <= 1.08, format!("max {v:.6} at eta {at:.3}"));
    let (v, at) = extreme(&bay_rows, |r| r.sc_ratio_static_ro, true);
    g.report("6/bay-sc-1.25", v <= 1.25, format!("max {v:.6} at eta {at:.3}"));
}

fn criterion_7(g: &mut Gate) {
    let summary = oracle_suite(SEED, 1000, 1e-4, 10_000);
    g.suite(
        "7",
        &summary,
        &[
            "static revenue vs oracle",
            "static transit cost vs oracle",
            "static car cost vs oracle",
            "static queuing cost vs oracle",
            "static schedule cost vs oracle",
            "static total cost vs oracle",
            "dynamic revenue vs oracle",
            "dynamic transit cost vs oracle",
            "dynamic car cost vs oracle",
            "dynamic schedule cost vs oracle",
            "dynamic total cost vs oracle",
            "grid search tau* (steps)",
            "grid search f* (steps)",
        ],
    );
}

fn criterion_8(g: &mut Gate) {
    let summary = theorem_suite(SEED, 10_000);
    g.suite(
        "8",
        &summary,
        &[
            "revenue ratio lower bound",
            "revenue ratio at least 1/2",
            "static-RO cost at most 2x optimum",
            "dynamic-RO cost at most 2x optimum",
            "free-driving cost ratio exact",
            "dynamic revenue dominates static",
        ],
    );
}

/// Relative gap between network revenue at the widest jam accumulation and
/// the bottleneck revenue at μ = μ_f, over the admissible toll range.
fn literal_jam_gap(p: &tollkit_model::BottleneckParams, m: &tollkit_model::TriangularMfd) -> f64 {
    let wide = m.with_jam_accumulation(LIMIT_JAM_ACCUMULATION).expect("larger jam");
    let eq = mfd::bottleneck_equivalent(p, &wide);
    let lo = mfd::static_lower_toll(p, &wide);
    (0..=20)
        .map(|k| lo + k as f64 / 20.0 * (p.cost_gap() - lo))
        .map(|tau| match mfd::static_revenue_mfd(p, &wide, tau) {
            Ok(r) => relative_gap(r, bn::static_revenue(&eq, tau), f64::MIN_POSITIVE),
            Err(_) => f64::NAN,
        })
        .fold(0.0, |a: f64, b| if b.is_nan() || b > a { b } else { a })
}

fn criterion_9(g: &mut Gate) {
    let summary = network_suite(SEED, 100, 1e-4);
    g.suite(
        "9",
        &summary,
        &[
            "network revenue vs quadrature",
            "network early queuing integral",
            "network late queuing integral",
            "network early schedule integral",
            "network late schedule integral",
            "jam-limit gap within mu_f*w/n_j",
            "network revenue guarantee",
            "network cost guarantee",
        ],
    );

    let nyc = scenario("nyc");
    let m = nyc.mfd().expect("network scenario");
    let mut worst = (0.0f64, String::new());
    for &eta in &nyc.eta_sweep {
        let gap = literal_jam_gap(&nyc.params_at(eta).expect("params"), &m);
        if !(gap <= worst.0) {
            worst = (gap, format!("nyc eta {eta}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let case = random_network_case(&mut rng);
        let _: f64 = rng.random();
        let gap = literal_jam_gap(&case.params, &case.mfd);
        if !(gap <= worst.0) {
            worst = (gap, format!("random case {i}"));
        }
    }
    g.report(
        "9/jam-limit-literal",
        worst.0 <= LIMIT_TOLERANCE,
        format!("worst relative gap {:.3e} ({}) at n_j = 1e9", worst.0, worst.1),
    );
}

fn criterion_10(g: &mut Gate) {
    let nyc = crossover(&scenario("nyc"), None, GRID).expect("nyc crossover");
    match nyc.eta {
        Some(eta) => g.report(
            "10/nyc-crossover",
            (eta - 1.7).abs() <= 0.1,
            format!("computed eta {eta:.4}, reference 1.7 +/- 0.1"),
        ),
        None => g.report("10/nyc-crossover", false, "no crossover in bracket".into()),
    }
    let bay = crossover(&scenario("bay_bridge"), None, GRID).expect("bay crossover");
    let text = bay.to_string();
    let present = bay.eta.is_some() && bay.discrepancy().is_some() && text.contains("reference");
    g.report(
        "10/bay-crossover-report",
        present,
        format!(
            "computed eta {:.4}, reference {:?}, discrepancy {:+.4}",
            bay.eta.unwrap_or(f64::NAN),
            bay.reference_eta,
            bay.discrepancy().unwrap_or(f64::NAN)
        ),
    );
}

fn main() -> ExitCode {
    let mut g = Gate::default();
    criterion_1(&mut g);
    criteria_2_3(&mut g);
    criteria_4_5(&mut g);
    criterion_6(&mut g);
    criterion_7(&mut g);
    criterion_8(&mut g);
    criterion_9(&mut g);
    criterion_10(&mut g);

    let known: BTreeSet<String> = KNOWN_UNMET.iter().map(|s| s.to_string()).collect();
    let unexpected: Vec<_> = g.failed.difference(&known).collect();
    let fixed: Vec<_> = known.difference(&g.failed).collect();
    println!(
        "{} sub-checks, {} failed ({} known unmet)",
        g.count,
        g.failed.len(),
        g.failed.intersection(&known).count()
    );
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
    }
    if !fixed.is_empty() {
        println!("known unmet items now pass; update KNOWN_UNMET: {fixed:?}");
    }
    if unexpected.is_empty() && fixed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
