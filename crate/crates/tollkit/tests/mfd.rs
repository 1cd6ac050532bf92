use proptest::prelude::*;
use tollkit::bottleneck;
use tollkit::calibration::builtin_scenario;
use tollkit::mfd::*;
use tollkit_model::{BottleneckParams, RegimeThresholds, TriangularMfd};
use tollkit_oracle::{integrate_mfd_revenue, mfd_printed_integrals};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

macro_rules! assert_rel {
    ($a:expr, $b:expr, $tol:expr) => {{
        let (a, b): (f64, f64) = ($a, $b);
        assert!(rel(a, b) <= $tol, "{} = {a}, expected {b} (rel {})", stringify!($a), $tol);
    }};
}

fn nyc_mfd(n_j: f64) -> TriangularMfd {
    TriangularMfd::new(45_000.0, n_j, 40.0, 6.0).unwrap()
}

fn nyc(eta: f64) -> BottleneckParams {
    builtin_scenario("nyc").unwrap().params_at(eta).unwrap()
}

#[test]
fn throughput_examples() {
    let m = nyc_mfd(140_000.0);
    assert_eq!(throughput(&m, m.critical_accumulation()).unwrap(), 45_000.0);
    assert_eq!(throughput(&m, 140_000.0).unwrap(), 0.0);
    assert_eq!(throughput(&m, 0.0).unwrap(), 0.0);
    assert_rel!(throughput(&m, 73_375.0).unwrap(), 22_500.0, 1e-12);
    assert!(throughput(&m, -1.0).is_err());
    assert!(throughput(&m, 140_001.0).is_err());
}

#[test]
fn throughput_from_wait_examples() {
    let m = nyc_mfd(140_000.0);
    assert_eq!(throughput_from_wait(&m, 0.0), 45_000.0);
    assert_rel!(throughput_from_wait(&m, 140_000.0 / 45_000.0), 22_500.0, 1e-12);
    assert!(throughput_from_wait(&m, 1e12) < 1e-3);
}

#[test]
fn lower_toll_examples() {
    let m = nyc_mfd(140_000.0);
    assert_eq!(static_lower_toll(&nyc(1.5), &m), 0.0);
    let flat = nyc(1.5).with_mode_costs(0.9, 0.9).unwrap();
    assert_eq!(static_lower_toll(&flat, &m), 0.0);
    let p = nyc(18.0);
    let limit = bottleneck::static_band_floor(&bottleneck_equivalent(&p, &m));
    let far = static_lower_toll(&p, &nyc_mfd(1e12));
    assert!((far - limit).abs() < 1e-5, "{far} vs {limit}");
    assert!(static_lower_toll(&p, &m) <= limit);
}

#[test]
fn revenue_at_full_toll() {
    let m = nyc_mfd(140_000.0);
    let p = nyc(1.5);
    let delta = p.cost_gap();
    assert_rel!(delta, 0.0375, 1e-12);
    let r = static_revenue_mfd(&p, &m, delta).unwrap();
    assert_rel!(r, 8_437.5, 1e-12);
    let r_star = dynamic_benchmarks_mfd(&p, &m).ro.revenue;
    assert_rel!(r / r_star, 0.99568183, 1e-8);

    let p = nyc(18.0);
    let r = static_revenue_mfd(&p, &m, p.cost_gap()).unwrap();
    assert_rel!(r, 2_143_125.0, 1e-12);
    assert_rel!(r / dynamic_benchmarks_mfd(&p, &m).ro.revenue, 0.47583426, 1e-8);
    assert!(static_revenue_mfd(&p, &m, p.cost_gap() + 0.1).is_err());
}

#[test]
fn revenue_matches_quadrature() {
    let p = nyc(18.0);
    for n_j in [14_000.0, 140_000.0] {
        let m = nyc_mfd(n_j);
        let lo = static_lower_toll(&p, &m);
        for x in [0.0, 0.3, 0.8] {
            let tau = lo + x * (p.cost_gap() - lo);
            let closed = static_revenue_mfd(&p, &m, tau).unwrap();
            let numeric = integrate_mfd_revenue(&p, &m, tau, 1e-4).unwrap();
            assert_rel!(closed, numeric, 1e-6);
        }
    }
}

#[test]
fn system_cost_at_full_toll() {
    let m = nyc_mfd(140_000.0);
    let p = nyc(18.0);
    let sc = static_system_cost_mfd(&p, &m, p.cost_gap()).unwrap();
    assert_rel!(sc.total, 7_239_375.0, 1e-12);
    assert_eq!(sc.queuing, 0.0);
    assert_eq!(sc.schedule, 0.0);
    let bench = dynamic_benchmarks_mfd(&p, &m);
    assert_rel!(sc.total / bench.sc_opt, 1.76931204, 1e-8);
    let p = nyc(1.5);
    let sc = static_system_cost_mfd(&p, &m, p.cost_gap()).unwrap();
    assert_rel!(sc.total / dynamic_benchmarks_mfd(&p, &m).sc_opt, 1.00005841, 1e-8);
}

#[test]
fn printed_integrals_match_closed_forms() {
    let p = nyc(18.0);
    for n_j in [14_000.0, 42_000.0, 140_000.0] {
        let m = nyc_mfd(n_j);
        let lo = static_lower_toll(&p, &m);
        let tau = lo + 0.25 * (p.cost_gap() - lo);
        let closed = static_cost_components_mfd(&p, &m, tau).unwrap();
        let printed = mfd_printed_integrals(&p, &m, tau).unwrap();
        assert_rel!(closed.queue_early, printed.queue_early, 1e-8);
        assert_rel!(closed.queue_late, printed.queue_late, 1e-8);
        assert_rel!(closed.schedule_early, printed.schedule_early, 1e-8);
        assert_rel!(closed.schedule_late, printed.schedule_late, 1e-8);
    }
}

#[test]
fn optimizers_pick_full_toll_for_nyc() {
    let m = nyc_mfd(140_000.0);
    for eta in [1.5, 18.0] {
        let p = nyc(eta);
        let (tau, rev) = static_revenue_optimal_mfd(&p, &m, DEFAULT_GRID_POINTS).unwrap();
        assert_eq!(tau, p.cost_gap());
        assert_rel!(rev, static_revenue_mfd(&p, &m, tau).unwrap(), 1e-15);
        let (tau, sc) = static_sc_optimal_mfd(&p, &m, DEFAULT_GRID_POINTS).unwrap();
        assert_eq!(tau, p.cost_gap());
        assert!(sc <= static_system_cost_mfd(&p, &m, p.cost_gap()).unwrap().total);
    }
    let flat = nyc(1.5).with_mode_costs(0.5, 0.5).unwrap();
    assert_eq!(static_revenue_optimal_mfd(&flat, &m, 64).unwrap(), (0.0, 0.0));
}

#[test]
fn dynamic_benchmarks_delegate() {
    let m = nyc_mfd(140_000.0);
    let p = nyc(18.0);
    let b = dynamic_benchmarks_mfd(&p, &m);
    assert_rel!(b.ro.revenue, 4_503_931.7, 1e-7);
    assert_rel!(b.sc_opt, 4_091_632.7, 1e-7);
    assert_rel!(b.ro_system_cost.total, 4_288_366.6, 1e-7);
    assert_rel!(b.so.revenue / b.ro.revenue, 0.94175936, 1e-8);
    assert_rel!(b.ro_system_cost.total / b.sc_opt, 1.04808200, 1e-8);
    assert_rel!(dynamic_benchmarks_mfd(&nyc(1.5), &m).ro.revenue, 8_474.09, 1e-6);

    let flat = p.with_mode_costs(0.5, 0.5).unwrap();
    let b = dynamic_benchmarks_mfd(&flat, &m);
    assert_eq!(b.ro.revenue, 0.0);
    assert_rel!(b.sc_opt, 0.5 * 900_000.0, 1e-12);
}

#[test]
fn jam_sweep_leaves_full_toll_values_unchanged() {
    for eta in [1.5, 6.0, 12.0, 18.0] {
        let p = nyc(eta);
        let base_m = nyc_mfd(140_000.0);
        let rev = static_revenue_mfd(&p, &base_m, p.cost_gap()).unwrap();
        let sc = static_system_cost_mfd(&p, &base_m, p.cost_gap()).unwrap().total;
        for n_j in [14_000.0, 42_000.0, 70_000.0] {
            let m = nyc_mfd(n_j);
            let (tau, r) = static_revenue_optimal_mfd(&p, &m, DEFAULT_GRID_POINTS).unwrap();
            assert_eq!(tau, p.cost_gap());
            assert_eq!(r, rev);
            assert_eq!(static_system_cost_mfd(&p, &m, tau).unwrap().total, sc);
        }
    }
}

fn network_case() -> impl Strategy<Value = (BottleneckParams, TriangularMfd, f64)> {
    (
        3.0..6.0f64,
        1.0..8.0f64,
        0.2..0.95f64,
        0.05..0.95f64,
        0.5..5.0f64,
        0.0..2.0f64,
        0.0..1.2f64,
        (1.0..20.0f64, 10.0..80.0f64, 0.3..3.0f64),
        0.0..=1.0f64,
    )
        .prop_map(|(log_demand, hours, ratio, e, l, z_c, scale, (trip, speed, log_jam), x)| {
            let demand = 10f64.powf(log_demand);
            let lambda = demand / hours;
            let mu_f = lambda * ratio;
            let base = BottleneckParams::new(demand, lambda, mu_f, e, l, z_c, z_c).unwrap();
            let t = RegimeThresholds::of(&base).unwrap();
            let p = base.with_mode_costs(z_c, z_c + scale * t.high).unwrap();
            let n_c = mu_f * trip / speed;
            let m = TriangularMfd::new(mu_f, n_c * 10f64.powf(log_jam), speed, trip).unwrap();
            let lo = static_lower_toll(&p, &m);
            (p, m, lo + x * (p.cost_gap() - lo))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn throughput_from_wait_strictly_decreasing(n_j in 1e4..1e7f64, w in 0.0..50.0f64, dw in 1e-6..5.0f64) {
        let m = TriangularMfd::new(45_000.0, n_j.max(7_000.0), 40.0, 6.0).unwrap();
        prop_assert!(throughput_from_wait(&m, w + dw) < throughput_from_wait(&m, w));
    }

    #[test]
    fn throughput_unimodal(n_j in 1e4..1e7f64, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let m = TriangularMfd::new(45_000.0, n_j, 40.0, 6.0).unwrap();
        let n_c = m.critical_accumulation();
        let (x, y) = (a.min(b), a.max(b));
        let below = |u: f64| throughput(&m, u * n_c).unwrap();
        let above = |u: f64| throughput(&m, n_c + u * (n_j - n_c)).unwrap();
        prop_assert!(below(x) <= below(y));
        prop_assert!(above(x) >= above(y));
        prop_assert!(below(y) <= 45_000.0 && above(x) <= 45_000.0);
    }

    #[test]
    fn jam_limit_deviation_is_first_order((p, m, tau) in network_case()) {
        let far = m.with_jam_accumulation(1e9).unwrap();
        let tau = tau.max(static_lower_toll(&p, &far));
        let network = static_revenue_mfd(&p, &far, tau).unwrap();
        let closed = bottleneck::static_revenue(&bottleneck_equivalent(&p, &far), tau);
        let wait = p.cost_gap() - tau;
        let x = far.max_throughput() * wait / 1e9;
        let gap = (network - closed).abs();
        prop_assert!(gap <= (x * (1.0 + 1e-6) + 1e-12) * closed.abs().max(1e-300));
        if x <= 1e-4 {
            prop_assert!(gap <= 1e-4 * closed.abs());
        }
    }

    #[test]
    fn full_toll_guarantee_in_low_regime((p, m, _) in network_case(), u in 0.0..1.0f64) {
        let eq = bottleneck_equivalent(&p, &m);
        let t = RegimeThresholds::of(&eq).unwrap();
        let p = p.with_mode_costs(p.car_cost(), p.car_cost() + u * t.low).unwrap();
        let delta = p.cost_gap();
        let bench = dynamic_benchmarks_mfd(&p, &m);
        let rev = static_revenue_mfd(&p, &m, delta).unwrap();
        prop_assert!(rev >= 2.0 / (3.0 - eq.capacity_ratio()) * bench.ro.revenue * (1.0 - 1e-9));
        if delta <= bottleneck::max_wait_car_only(&eq) {
            let sc = static_system_cost_mfd(&p, &m, delta).unwrap().total;
            prop_assert!(sc <= 2.0 * bench.sc_opt * (1.0 + 1e-9));
        }
    }

    #[test]
    fn components_nonnegative_and_sum((p, m, tau) in network_case()) {
        let c = static_cost_components_mfd(&p, &m, tau).unwrap();
        for v in [c.transit, c.car_freeflow, c.queue_ontime, c.queue_early, c.queue_late, c.schedule_early, c.schedule_late] {
            prop_assert!(v >= 0.0);
        }
        let b = c.breakdown(0.0);
        prop_assert!(rel(b.total, c.total()) < 1e-12);
    }
}
