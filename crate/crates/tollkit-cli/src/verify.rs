//! Oracle agreement and bound audits over seeded random cases or a scenario.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use tollkit::bottleneck as bn;
use tollkit::calibration::Scenario;
use tollkit::mfd;
use tollkit_model::{
    classify_regime, BottleneckParams, CostBreakdown, EquilibriumOutcome, Regime, RegimeThresholds,
    TollPolicy, TriangularMfd,
};
use tollkit_oracle::{self as oracle, Simulation, TraceCheck};

use crate::analysis::{sweep_row, DEFAULT_JAM_ACCUMULATION};

/// Relative tolerance for closed form against time-grid quadrature.
pub const ORACLE_TOLERANCE: f64 = 1e-6;
/// Relative tolerance for closed-form identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-9;
/// Relative tolerance for network ramp integrals against adaptive quadrature.
pub const INTEGRAL_TOLERANCE: f64 = 1e-8;
/// Relative tolerance for the large-jam-accumulation limit.
pub const LIMIT_TOLERANCE: f64 = 1e-4;
/// Jam accumulation standing in for an unbounded network.
pub const LIMIT_JAM_ACCUMULATION: f64 = 1e9;

/// One audited property across a set of cases.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub cases: usize,
    pub failures: usize,
    /// Largest discrepancy seen; NaN counts as a failure and is kept.
    pub worst: f64,
    pub worst_case: Option<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            cases: 0,
            failures: 0,
            worst: 0.0,
            worst_case: None,
        }
    }

    fn record(&mut self, gap: f64, describe: impl FnOnce() -> String) {
        self.cases += 1;
        let failed = !(gap <= self.tolerance);
        if failed {
            self.failures += 1;
        }
        if (gap.is_nan() || gap > self.worst) && !self.worst.is_nan() {
            self.worst = gap;
            self.worst_case = Some(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Default)]
pub struct VerifySummary {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub notes: Vec<String>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: VerifySummary) {
        self.checks.extend(other.checks);
        self.warnings.extend(other.warnings);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for VerifySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<34} cases {:>6}  failures {:>5}  worst {:.3e}  (tol {:.0e})",
                c.name, c.cases, c.failures, c.worst, c.tolerance
            )?;
            if !c.passed() {
                if let Some(case) = &c.worst_case {
                    writeln!(f, "     worst case: {case}")?;
                }
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// |a − b| / max(|b|, floor).
pub fn relative_gap(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}

/// Amount by which `value` exceeds `limit`, relative to the limit; 0 if within.
fn excess(value: f64, limit: f64) -> f64 {
    ((value - limit) / limit.abs().max(f64::MIN_POSITIVE)).max(0.0)
}

/// Runs `eval` on every case in parallel and folds the per-case gaps into
/// one check per name. `eval` returns one entry per name, `None` when the
/// property does not apply to that case.
fn audit<C, F>(cases: &[C], names: &[(&'static str, f64)], eval: F) -> Vec<Check>
where
    C: Sync + fmt::Debug,
    F: Fn(&C) -> Vec<Option<f64>> + Sync,
{
    let gaps: Vec<Vec<Option<f64>>> = cases.par_iter().map(&eval).collect();
    let mut checks: Vec<Check> = names.iter().map(|&(n, t)| Check::new(n, t)).collect();
    for (case, row) in cases.iter().zip(&gaps) {
        for (check, gap) in checks.iter_mut().zip(row) {
            if let Some(gap) = gap {
                check.record(*gap, || format!("{case:?}"));
            }
        }
    }
    checks
}

/// Congestible parameters with z_T ≥ z_C, spread across all mixed regimes.
pub fn random_params<R: Rng>(rng: &mut R) -> BottleneckParams {
    let total = 10f64.powf(rng.random_range(3.0..6.0));
    let lambda = total / rng.random_range(1.0..8.0);
    let mu = lambda * rng.random_range(0.2..0.95);
    let e = rng.random_range(0.05..0.95);
    let l = rng.random_range(0.5..5.0);
    let z_c = rng.random_range(0.0..2.0);
    let base = BottleneckParams::new(total, lambda, mu, e, l, z_c, z_c).expect("valid draw");
    let t = RegimeThresholds::of(&base).expect("congestible draw");
    let t_c = bn::max_wait_car_only(&base);
    let u: f64 = rng.random_range(0.0..1.0);
    let delta = match rng.random_range(0..4) {
        0 => u * t.low,
        1 => t.low + u * (t.high - t.low),
        2 => t.high * (1.0 + u),
        _ => 2.0 * u * t_c,
    };
    base.with_mode_costs(z_c, z_c + delta).expect("valid draw")
}

/// Network case: parameters (capacity = μ_f), a diagram and a toll in the
/// network domain.
#[derive(Debug, Clone, Copy)]
pub struct NetworkCase {
    pub params: BottleneckParams,
    pub mfd: TriangularMfd,
    pub tau: f64,
}

/// Random network case with a toll drawn from [static_lower_toll, δ].
pub fn random_network_case<R: Rng>(rng: &mut R) -> NetworkCase {
    let p = random_params(rng);
    let mu_f = p.capacity();
    let trip = rng.random_range(1.0..20.0);
    let speed = rng.random_range(10.0..80.0);
    let n_c = mu_f * trip / speed;
    let n_j = n_c * 10f64.powf(rng.random_range(0.3..3.0));
    let net = TriangularMfd::new(mu_f, n_j, speed, trip).expect("valid draw");
    let lo = mfd::static_lower_toll(&p, &net);
    let tau = lo + rng.random_range(0.0..=1.0) * (p.cost_gap() - lo);
    NetworkCase { params: p, mfd: net, tau }
}

fn draw<T>(seed: u64, n: usize, mut f: impl FnMut(&mut ChaCha8Rng) -> T) -> Vec<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| f(&mut rng)).collect()
}

/// Gap of each breakdown entry with the oracle's resolution as floor: one
/// step's worth of arrivals, Δt·λ users, at the mean per-user cost.
fn breakdown_gaps(p: &BottleneckParams, dt: f64, cf: &CostBreakdown, or: &CostBreakdown) -> [f64; 6] {
    let floor = dt * p.arrival_rate() * (or.total / p.total_demand()).max(p.transit_cost());
    let g = |a: f64, b: f64| relative_gap(a, b, floor.max(f64::MIN_POSITIVE));
    [
        g(cf.revenue, or.revenue),
        g(cf.transit, or.transit),
        g(cf.car_freeflow, or.car_freeflow),
        g(cf.queuing, or.queuing),
        g(cf.schedule, or.schedule),
        g(cf.total, or.total),
    ]
}

fn outcome_gap(p: &BottleneckParams, dt: f64, cf: &EquilibriumOutcome, or: &EquilibriumOutcome) -> f64 {
    let g = |a: f64, b: f64| relative_gap(a, b, dt * p.arrival_rate());
    [
        g(cf.n_early, or.n_early),
        g(cf.n_late, or.n_late),
        g(cf.n_ontime_car, or.n_ontime_car),
        g(cf.n_transit, or.n_transit),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

fn trace_violations(p: &BottleneckParams, sim: &Simulation, dt: f64) -> f64 {
    let check = TraceCheck {
        early_penalty: p.early_penalty(),
        late_penalty: p.late_penalty(),
        cost_gap: p.cost_gap(),
        expected_departures: sim.outcome.n_car(),
        tolerance: 1e-6 * (1.0 + p.total_demand() * dt),
    };
    sim.trace.violations(&check).len() as f64
}

/// Closed-form static and dynamic bottleneck results against the time-grid
/// oracle at step `dt`, plus grid recovery of τ* and f* with `grid` points.
pub fn oracle_suite(seed: u64, n_cases: usize, dt: f64, grid: usize) -> VerifySummary {
    const NAMES: [(&str, f64); 15] = [
        ("static revenue vs oracle", ORACLE_TOLERANCE),
        ("static transit cost vs oracle", ORACLE_TOLERANCE),
        ("static car cost vs oracle", ORACLE_TOLERANCE),
        ("static queuing cost vs oracle", ORACLE_TOLERANCE),
        ("static schedule cost vs oracle", ORACLE_TOLERANCE),
        ("static total cost vs oracle", ORACLE_TOLERANCE),
        ("static mode split vs oracle", ORACLE_TOLERANCE),
        ("dynamic revenue vs oracle", ORACLE_TOLERANCE),
        ("dynamic transit cost vs oracle", ORACLE_TOLERANCE),
        ("dynamic car cost vs oracle", ORACLE_TOLERANCE),
        ("dynamic schedule cost vs oracle", ORACLE_TOLERANCE),
        ("dynamic total cost vs oracle", ORACLE_TOLERANCE),
        ("trace invariants", 0.0),
        ("grid search tau* (steps)", 1.0),
        ("grid search f* (steps)", 1.0),
    ];
    let cases = draw(seed, n_cases, |rng| {
        let p = random_params(rng);
        let tau = rng.random_range(0.0..=1.0) * p.cost_gap();
        let (f_lo, _) = bn::dynamic_fraction_band(&p);
        let f = f_lo + rng.random_range(0.0..=1.0) * (1.0 - f_lo);
        (p, tau, f)
    });
    let checks = audit(&cases, &NAMES, |&(p, tau, f)| {
        let mut out = vec![None; NAMES.len()];
        let (tau_star, _) = bn::static_revenue_optimal_toll(&p);
        let mut traces = 0.0;
        let mut static_gaps = [0.0f64; 7];
        for t in [tau, tau_star] {
            let Ok(sim) = oracle::simulate_static_bottleneck(&p, t, dt) else {
                static_gaps = [f64::NAN; 7];
                break;
            };
            let cf = bn::static_system_cost(&p, t);
            let cf = CostBreakdown::new(cf.transit, cf.car_freeflow, cf.queuing, cf.schedule, bn::static_revenue(&p, t));
            for (slot, g) in static_gaps.iter_mut().zip(breakdown_gaps(&p, dt, &cf, &sim.costs)) {
                *slot = slot.max(g);
            }
            let eq = bn::static_equilibrium(&p, t).expect("valid toll");
            static_gaps[6] = static_gaps[6].max(outcome_gap(&p, dt, &eq, &sim.outcome));
            traces += trace_violations(&p, &sim, dt);
        }
        for (i, g) in static_gaps.into_iter().enumerate() {
            out[i] = Some(g);
        }
        let f_star = bn::dynamic_revenue_optimal(&p).flat_fraction;
        let mut dyn_gaps = [0.0f64; 6];
        for frac in [f, f_star] {
            let Ok(sim) = oracle::simulate_dynamic_bottleneck(&p, frac, dt) else {
                dyn_gaps = [f64::NAN; 6];
                break;
            };
            let mut cf = bn::dynamic_system_cost_at_fraction(&p, frac).expect("valid fraction");
            cf.revenue = bn::dynamic_revenue_at_fraction(&p, frac).expect("valid fraction");
            for (slot, g) in dyn_gaps.iter_mut().zip(breakdown_gaps(&p, dt, &cf, &sim.costs)) {
                *slot = slot.max(g);
            }
            traces += trace_violations(&p, &sim, dt);
        }
        out[7] = Some(dyn_gaps[0]);
        out[8] = Some(dyn_gaps[1]);
        out[9] = Some(dyn_gaps[2]);
        out[10] = Some(dyn_gaps[4]);
        out[11] = Some(dyn_gaps[5]);
        out[12] = Some(traces);
        let delta = p.cost_gap();
        if delta > 0.0 {
            let step = delta / (grid - 1) as f64;
            let (tau_hat, _) = oracle::grid_search_static(&p, grid);
            out[13] = Some((tau_hat - tau_star).abs() / step);
            let (f_lo, _) = bn::dynamic_fraction_band(&p);
            let step = (1.0 - f_lo) / (grid - 1) as f64;
            let (f_hat, _) = oracle::grid_search_dynamic_fraction(&p, grid);
            if step > 0.0 {
                out[14] = Some((f_hat - f_star).abs() / step);
            }
        }
        out
    });
    finish(checks, n_cases)
}

fn finish(checks: Vec<Check>, n_cases: usize) -> VerifySummary {
    let mut summary = VerifySummary {
        checks,
        ..Default::default()
    };
    if n_cases == 0 {
        summary.warnings.push("no cases requested; checks pass vacuously".into());
    }
    summary
}

/// Revenue and cost guarantees, argmax optimality and closed-form identities
/// on random parameters.
pub fn theorem_suite(seed: u64, n_cases: usize) -> VerifySummary {
    const NAMES: [(&str, f64); 11] = [
        ("revenue ratio lower bound", IDENTITY_TOLERANCE),
        ("revenue ratio at least 1/2", IDENTITY_TOLERANCE),
        ("static-RO cost at most 2x optimum", IDENTITY_TOLERANCE),
        ("dynamic-RO cost at most 2x optimum", IDENTITY_TOLERANCE),
        ("free-driving cost ratio exact", IDENTITY_TOLERANCE),
        ("dynamic revenue dominates static", IDENTITY_TOLERANCE),
        ("static argmax over 2000-point grid", IDENTITY_TOLERANCE),
        ("mode split conservation", IDENTITY_TOLERANCE),
        ("revenue equals toll times cars", IDENTITY_TOLERANCE),
        ("continuity at band edges", IDENTITY_TOLERANCE),
        ("trapezoid nonnegative, peak = gap", IDENTITY_TOLERANCE),
    ];
    let cases = draw(seed, n_cases, |rng| {
        let p = random_params(rng);
        let t = RegimeThresholds::of(&p).expect("congestible draw");
        let free = p
            .with_mode_costs(0.0, t.high * (1.0 + rng.random_range(0.001..3.0)))
            .expect("valid draw");
        (p, free)
    });
    let checks = audit(&cases, &NAMES, |&(p, free)| {
        let mut out = vec![None; NAMES.len()];
        let bounds = bn::theorem_bounds(&p);
        let (tau_s, rev_s) = bn::static_revenue_optimal_toll(&p);
        let dynamic = bn::dynamic_revenue_optimal(&p);
        let ratio = rev_s / dynamic.revenue;
        out[0] = Some(excess(bounds.revenue_ratio_lower_bound, ratio));
        out[1] = Some(excess(0.5, ratio));
        let sc_star = bn::optimal_system_cost(&p);
        if bounds.sc_ratio_upper_bound.is_some() {
            out[2] = Some(excess(bn::static_system_cost(&p, tau_s).total, 2.0 * sc_star));
            out[3] = Some(excess(bn::dynamic_ro_system_cost(&p).total, 2.0 * sc_star));
        }
        let fb = bn::theorem_bounds(&free);
        if let Some(exact) = fb.unbounded_case_ratio {
            let (tau_f, _) = bn::static_revenue_optimal_toll(&free);
            let r = bn::static_system_cost(&free, tau_f).total / bn::optimal_system_cost(&free);
            out[4] = Some(relative_gap(r, exact, 0.0));
        }
        out[5] = Some(excess(rev_s, dynamic.revenue));
        let delta = p.cost_gap();
        let best_grid = (0..2000)
            .map(|i| bn::static_revenue(&p, delta * i as f64 / 1999.0))
            .fold(f64::NEG_INFINITY, f64::max);
        out[6] = Some(excess(best_grid, rev_s));
        let lo = bn::static_band_floor(&p);
        let mut conservation: f64 = 0.0;
        let mut identity: f64 = 0.0;
        for tau in [0.0, lo, 0.5 * (lo + delta), delta] {
            let eq = bn::static_equilibrium(&p, tau).expect("valid toll");
            conservation = conservation.max(relative_gap(eq.total(), p.total_demand(), 0.0));
            identity = identity.max(relative_gap(
                bn::static_revenue(&p, tau),
                tau * eq.n_car(),
                IDENTITY_TOLERANCE * p.total_demand() * delta,
            ));
        }
        out[7] = Some(conservation);
        out[8] = Some(identity);
        let h = 1e-12 * delta;
        let mut jump: f64 = 0.0;
        for (edge, two_sided) in [(lo, lo > 0.0), (delta, false)] {
            let mut sides = vec![edge - h];
            if two_sided {
                sides.push(edge + h);
            }
            let sc = bn::static_system_cost(&p, edge).total;
            let rev = bn::static_revenue(&p, edge);
            let rev_scale = (p.total_demand() * delta).max(f64::MIN_POSITIVE);
            for t in sides.into_iter().filter(|&t| t >= 0.0 && h > 0.0) {
                jump = jump.max((bn::static_system_cost(&p, t).total - sc).abs() / sc);
                jump = jump.max((bn::static_revenue(&p, t) - rev).abs() / rev_scale);
            }
        }
        out[9] = Some(jump.max(0.0));
        if let TollPolicy::TrapezoidDynamic(trap) = dynamic.policy {
            let negative = (-trap.start_level()).max(-trap.end_level()).max(0.0);
            out[10] = Some(negative.max(relative_gap(trap.peak, delta, 0.0)));
        } else {
            out[10] = Some(f64::NAN);
        }
        out
    });
    finish(checks, n_cases)
}

/// Relative gap between a network revenue and its bottleneck limit, in units
/// of the expansion parameter x = μ_f·w̄/n_j; the first-order bound is 1.
pub fn jam_limit_gap(network: f64, bottleneck: f64, x: f64) -> f64 {
    let gap = relative_gap(network, bottleneck, f64::MIN_POSITIVE);
    if x > 0.0 {
        gap / x
    } else if gap <= 1e-12 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Network revenue and ramp integrals against quadrature, the unbounded-jam
/// limit and the guarantee at τ = δ.
pub fn network_suite(seed: u64, n_cases: usize, dt: f64) -> VerifySummary {
    const NAMES: [(&str, f64); 8] = [
        ("network revenue vs quadrature", ORACLE_TOLERANCE),
        ("network early queuing integral", INTEGRAL_TOLERANCE),
        ("network late queuing integral", INTEGRAL_TOLERANCE),
        ("network early schedule integral", INTEGRAL_TOLERANCE),
        ("network late schedule integral", INTEGRAL_TOLERANCE),
        ("jam-limit gap within mu_f*w/n_j", 1.0 + 1e-6),
        ("network revenue guarantee", IDENTITY_TOLERANCE),
        ("network cost guarantee", IDENTITY_TOLERANCE),
    ];
    let cases = draw(seed, n_cases, |rng| {
        let case = random_network_case(rng);
        let u: f64 = rng.random_range(0.0..=1.0);
        (case, u)
    });
    let checks = audit(&cases, &NAMES, |&(c, u)| {
        let mut out = vec![None; NAMES.len()];
        let p = &c.params;
        let closed = mfd::static_revenue_mfd(p, &c.mfd, c.tau);
        let quad = oracle::integrate_mfd_revenue(p, &c.mfd, c.tau, dt);
        out[0] = Some(match (closed, quad) {
            (Ok(a), Ok(b)) => relative_gap(a, b, f64::MIN_POSITIVE),
            _ => f64::NAN,
        });
        let comps = mfd::static_cost_components_mfd(p, &c.mfd, c.tau);
        let printed = oracle::mfd_printed_integrals(p, &c.mfd, c.tau);
        if let (Ok(cf), Ok(pr)) = (comps, printed) {
            let floor = INTEGRAL_TOLERANCE * cf.total();
            out[1] = Some(relative_gap(cf.queue_early, pr.queue_early, floor));
            out[2] = Some(relative_gap(cf.queue_late, pr.queue_late, floor));
            out[3] = Some(relative_gap(cf.schedule_early, pr.schedule_early, floor));
            out[4] = Some(relative_gap(cf.schedule_late, pr.schedule_late, floor));
        } else {
            out[1..5].fill(Some(f64::NAN));
        }
        let wide = c.mfd.with_jam_accumulation(LIMIT_JAM_ACCUMULATION).expect("larger jam");
        let lo = mfd::static_lower_toll(p, &wide);
        let tau = lo + u * (p.cost_gap() - lo);
        let x = p.capacity() * (p.cost_gap() - tau) / LIMIT_JAM_ACCUMULATION;
        out[5] = Some(match mfd::static_revenue_mfd(p, &wide, tau) {
            Ok(r) => jam_limit_gap(r, bn::static_revenue(p, tau), x),
            Err(_) => f64::NAN,
        });
        let low = RegimeThresholds::of(p).expect("congestible draw").low;
        let delta = p.cost_gap();
        if delta > 0.0 && delta <= low {
            let bench = mfd::dynamic_benchmarks_mfd(p, &c.mfd);
            let rho = p.capacity_ratio();
            let rev = mfd::static_revenue_mfd(p, &c.mfd, delta).unwrap_or(f64::NAN);
            out[6] = Some(excess(2.0 / (3.0 - rho) * bench.ro.revenue, rev));
            let sc = mfd::static_system_cost_mfd(p, &c.mfd, delta)
                .map(|b| b.total)
                .unwrap_or(f64::NAN);
            if delta <= bn::max_wait_car_only(p) {
                out[7] = Some(excess(sc, 2.0 * bench.sc_opt));
            }
        }
        out
    });
    finish(checks, n_cases)
}

/// All random suites from one seed.
pub fn verify_random(
    seed: u64,
    n_cases: usize,
    network_cases: usize,
    dt: f64,
    grid: usize,
) -> VerifySummary {
    let mut summary = oracle_suite(seed, n_cases, dt, grid);
    summary.extend(theorem_suite(seed.wrapping_add(1), n_cases));
    summary.extend(network_suite(seed.wrapping_add(2), network_cases, dt));
    summary.warnings.dedup();
    summary
}

/// Deterministic audit of a scenario over its η sweep.
pub fn verify_scenario(scenario: &Scenario, n_j: Option<f64>, dt: f64, grid: usize) -> VerifySummary {
    const NAMES: [(&str, f64); 9] = [
        ("static revenue vs oracle", ORACLE_TOLERANCE),
        ("static total cost vs oracle", ORACLE_TOLERANCE),
        ("dynamic revenue vs oracle", ORACLE_TOLERANCE),
        ("dynamic total cost vs oracle", ORACLE_TOLERANCE),
        ("revenue ratio lower bound", IDENTITY_TOLERANCE),
        ("system cost at most 2x optimum", IDENTITY_TOLERANCE),
        ("revenue ratios at most 1", 1e-12),
        ("cost ratios at least 1", 1e-12),
        ("jam accumulation invariance", IDENTITY_TOLERANCE),
    ];
    let mut summary = VerifySummary::default();
    let net = scenario.mfd().map(|m| {
        m.with_jam_accumulation(n_j.unwrap_or(DEFAULT_JAM_ACCUMULATION))
    });
    let net = match net.transpose() {
        Ok(n) => n,
        Err(e) => {
            summary.warnings.push(format!("invalid jam accumulation: {e}"));
            return summary;
        }
    };
    let mut points = Vec::new();
    for &eta in &scenario.eta_sweep {
        match scenario.params_at(eta) {
            Ok(p) => points.push((eta, p)),
            Err(e) => summary.warnings.push(format!("eta = {eta}: {e}")),
        }
    }
    let checks = audit(&points, &NAMES, |&(eta, p)| {
        let mut out = vec![None; NAMES.len()];
        let eff = match &net {
            Some(m) => mfd::bottleneck_equivalent(&p, m),
            None => p,
        };
        let delta = p.cost_gap();
        let congestible = eff.is_congestible() && delta >= 0.0;
        if congestible {
            match &net {
                None => {
                    let (tau, rev) = bn::static_revenue_optimal_toll(&p);
                    out[0..2].fill(Some(f64::NAN));
                    if let Ok(sim) = oracle::simulate_static_bottleneck(&p, tau, dt) {
                        out[0] = Some(relative_gap(rev, sim.costs.revenue, f64::MIN_POSITIVE));
                        out[1] = Some(relative_gap(
                            bn::static_system_cost(&p, tau).total,
                            sim.costs.total,
                            0.0,
                        ));
                    }
                }
                Some(m) => {
                    out[0..2].fill(Some(f64::NAN));
                    let lo = mfd::static_lower_toll(&p, m);
                    let tau = 0.5 * (lo + delta);
                    if let (Ok(rev), Ok(sim)) = (
                        mfd::static_revenue_mfd(&p, m, tau),
                        oracle::simulate_static_mfd(&p, m, tau, dt),
                    ) {
                        out[0] = Some(relative_gap(rev, sim.costs.revenue, f64::MIN_POSITIVE));
                    }
                    if let (Ok(cf), Ok(sim)) = (
                        mfd::static_system_cost_mfd(&p, m, delta),
                        oracle::simulate_static_mfd(&p, m, delta, dt),
                    ) {
                        out[1] = Some(relative_gap(cf.total, sim.costs.total, 0.0));
                    }
                }
            }
            let design = bn::dynamic_revenue_optimal(&eff);
            out[2..4].fill(Some(f64::NAN));
            if let Ok(sim) = oracle::simulate_dynamic_bottleneck(&eff, design.flat_fraction, dt) {
                out[2] = Some(relative_gap(design.revenue, sim.costs.revenue, f64::MIN_POSITIVE));
                out[3] = Some(relative_gap(
                    bn::dynamic_ro_system_cost(&eff).total,
                    sim.costs.total,
                    0.0,
                ));
            }
        }
        let Ok(row) = sweep_row(scenario, eta, n_j, grid) else {
            out[6] = Some(f64::NAN);
            return out;
        };
        let bounds = bn::theorem_bounds(&eff);
        let guaranteed = match &net {
            None => classify_regime(&eff).is_mixed(),
            Some(_) => classify_regime(&eff) == Regime::MixedLow,
        };
        if guaranteed {
            out[4] = Some(excess(bounds.revenue_ratio_lower_bound, row.rev_ratio_static_ro));
        }
        if bounds.sc_ratio_upper_bound.is_some() && (net.is_none() || guaranteed) {
            out[5] = Some(excess(row.sc_ratio_static_ro.max(row.sc_ratio_dynamic_ro), 2.0));
        }
        let revs = [row.rev_ratio_static_ro, row.rev_ratio_static_so, row.rev_ratio_dynamic_so];
        out[6] = Some(revs.iter().map(|r| r - 1.0).fold(0.0, f64::max));
        let scs = [row.sc_ratio_static_ro, row.sc_ratio_static_so, row.sc_ratio_dynamic_ro];
        out[7] = Some(scs.iter().map(|r| 1.0 - r).fold(0.0, f64::max));
        if net.is_some() && row.tau_static_ro_h == delta {
            let mut gap: f64 = 0.0;
            for &other in scenario.jam_sweep() {
                match sweep_row(scenario, eta, Some(other), grid) {
                    Ok(alt) => {
                        for (x, y) in alt.values().iter().zip(row.values()) {
                            gap = gap.max(relative_gap(*x, y, f64::MIN_POSITIVE));
                        }
                    }
                    Err(_) => gap = f64::NAN,
                }
            }
            out[8] = Some(gap);
        }
        out
    });
    summary.checks = checks;
    let active = points
        .iter()
        .filter(|(_, p)| {
            let eff = match &net {
                Some(m) => mfd::bottleneck_equivalent(p, m),
                None => *p,
            };
            let low = net.is_none() || classify_regime(&eff) == Regime::MixedLow;
            low && bn::theorem_bounds(&eff).sc_ratio_upper_bound.is_some()
        })
        .map(|(eta, _)| *eta)
        .collect::<Vec<_>>();
    if let (Some(first), Some(last)) = (active.first(), active.last()) {
        summary.notes.push(format!(
            "system cost bound active at {} of {} sweep points (eta {first:.4} to {last:.4})",
            active.len(),
            points.len()
        ));
    }
    summary
}
