//! Urban network with a triangular macroscopic fundamental diagram.
//!
//! Functions taking [`BottleneckParams`] replace its capacity by the
//! diagram's maximum throughput μ_f.

use tollkit_model::{BottleneckParams, CostBreakdown, ModelError, Result, TriangularMfd};

use crate::bottleneck::{self, DynamicTollDesign};
use crate::search::grid_golden_max;

/// Default number of grid nodes for static MFD toll searches.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Throughput at accumulation n.
///
/// ```
/// use tollkit::mfd::throughput;
/// use tollkit_model::TriangularMfd;
/// let mfd = TriangularMfd::new(45_000.0, 140_000.0, 40.0, 6.0).unwrap();
/// assert_eq!(throughput(&mfd, 6_750.0).unwrap(), 45_000.0);
/// assert_eq!(throughput(&mfd, 140_000.0).unwrap(), 0.0);
/// ```
pub fn throughput(mfd: &TriangularMfd, n: f64) -> Result<f64> {
    let n_j = mfd.jam_accumulation();
    if !(0.0..=n_j).contains(&n) {
        return Err(ModelError::Domain {
            name: "accumulation",
            value: n,
            domain: format!("[0, {n_j}]"),
        });
    }
    let n_c = mfd.critical_accumulation();
    Ok(if n <= n_c {
        n * mfd.free_flow_speed() / mfd.trip_distance()
    } else {
        mfd.max_throughput() * (n_j - n) / (n_j - n_c)
    })
}

/// Congested-branch throughput as a function of the queuing wait:
/// n_j/(n_j/μ_f + w).
pub fn throughput_from_wait(mfd: &TriangularMfd, w: f64) -> f64 {
    let n_j = mfd.jam_accumulation();
    n_j / (n_j / mfd.max_throughput() + w)
}

/// x − ln(1 + x), accurate for small x.
fn x_minus_log1p(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let mut term = -x;
        let mut sum = 0.0;
        for k in 2..30 {
            term *= -x;
            sum += term / k as f64;
        }
        sum
    } else {
        x - x.ln_1p()
    }
}

/// Parameters with capacity replaced by the diagram's maximum throughput.
pub fn bottleneck_equivalent(params: &BottleneckParams, mfd: &TriangularMfd) -> BottleneckParams {
    params
        .with_capacity(mfd.max_throughput())
        .expect("positive max throughput")
}

/// Smallest static toll whose equilibrium keeps a nonnegative on-time
/// segment: max{0, δ − (n_j/μ_f)(exp(ΛeL/(n_j(e + L))) − 1)}.
pub fn static_lower_toll(params: &BottleneckParams, mfd: &TriangularMfd) -> f64 {
    let n_j = mfd.jam_accumulation();
    let span = n_j / mfd.max_throughput()
        * (params.total_demand() * params.harmonic_penalty() / n_j).exp_m1();
    (params.cost_gap() - span).max(0.0)
}

fn check_domain(params: &BottleneckParams, mfd: &TriangularMfd, tau: f64) -> Result<()> {
    let delta = params.cost_gap();
    let lo = static_lower_toll(params, mfd);
    let slack = 1e-12 * (1.0 + delta.abs());
    if delta >= 0.0 && tau >= lo - slack && tau <= delta + slack {
        Ok(())
    } else {
        Err(ModelError::Domain {
            name: "tau",
            value: tau,
            domain: format!("[{lo}, {delta}]"),
        })
    }
}

/// Quantities shared by the revenue and cost expressions at peak wait w̄.
struct Profile {
    wait: f64,
    mu_wait: f64,
    log_term: f64,
    cars: f64,
    flat: f64,
}

fn profile(params: &BottleneckParams, mfd: &TriangularMfd, tau: f64) -> Profile {
    let n_j = mfd.jam_accumulation();
    let wait = (params.cost_gap() - tau).max(0.0);
    let mu_wait = throughput_from_wait(mfd, wait);
    let log_term = (wait * mfd.max_throughput() / n_j).ln_1p();
    let ramp_cars = n_j / params.harmonic_penalty() * log_term;
    let lambda = params.arrival_rate();
    Profile {
        wait,
        mu_wait,
        log_term,
        cars: params.rush_length() * mu_wait + ramp_cars * (1.0 - mu_wait / lambda),
        flat: params.rush_length() - ramp_cars / lambda,
    }
}

/// Revenue of a static toll τ in [static_lower_toll, δ]:
/// τ[(Λ/λ)μ(w̄) + n_j((e + L)/(eL))·ln(1 + w̄μ_f/n_j)·(1 − μ(w̄)/λ)], w̄ = δ − τ.
///
/// ```
/// use tollkit::mfd::static_revenue_mfd;
/// use tollkit_model::{BottleneckParams, TriangularMfd};
/// let mfd = TriangularMfd::new(45_000.0, 140_000.0, 40.0, 6.0).unwrap();
/// let p = BottleneckParams::new(900_000.0, 180_000.0, 45_000.0, 0.61, 2.4, 0.9, 0.9375).unwrap();
/// let r = static_revenue_mfd(&p, &mfd, 0.0375).unwrap();
/// assert!((r - 8_437.5).abs() < 1e-9);
/// ```
pub fn static_revenue_mfd(params: &BottleneckParams, mfd: &TriangularMfd, tau: f64) -> Result<f64> {
    check_domain(params, mfd, tau)?;
    Ok(tau * profile(params, mfd, tau).cars)
}

/// The seven system-cost components of a static MFD toll, in user-hours.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfdCostComponents {
    pub transit: f64,
    pub car_freeflow: f64,
    pub queue_ontime: f64,
    pub queue_early: f64,
    pub queue_late: f64,
    pub schedule_early: f64,
    pub schedule_late: f64,
}

impl MfdCostComponents {
    /// Sum of all seven components.
    pub fn total(&self) -> f64 {
        self.transit
            + self.car_freeflow
            + self.queue_ontime
            + self.queue_early
            + self.queue_late
            + self.schedule_early
            + self.schedule_late
    }

    /// Collapses into the four-group breakdown.
    pub fn breakdown(&self, revenue: f64) -> CostBreakdown {
        CostBreakdown::new(
            self.transit,
            self.car_freeflow,
            self.queue_ontime + self.queue_early + self.queue_late,
            self.schedule_early + self.schedule_late,
            revenue,
        )
    }
}

/// Component-wise system cost of a static MFD toll.
///
/// The schedule-delay terms use the closed forms
/// (n_j/p)(w̄ − (n_j/λ)ℓ)(1 − (n_j/μ_f)ℓ/w̄) for p ∈ {e, L}, ℓ = ln(1 + w̄μ_f/n_j).
pub fn static_cost_components_mfd(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    tau: f64,
) -> Result<MfdCostComponents> {
    check_domain(params, mfd, tau)?;
    let prof = profile(params, mfd, tau);
    let n_j = mfd.jam_accumulation();
    let a = n_j / mfd.max_throughput();
    let x = prof.wait / a;
    let gap = x_minus_log1p(x);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let queue_unit = n_j * a * gap;
    let schedule_unit = if x > 0.0 {
        n_j * (prof.wait - n_j / params.arrival_rate() * prof.log_term) * gap / x
    } else {
        0.0
    };
    Ok(MfdCostComponents {
        transit: params.transit_cost() * (params.total_demand() - prof.cars),
        car_freeflow: params.car_cost() * prof.cars,
        queue_ontime: prof.flat * prof.mu_wait * prof.wait,
        queue_early: queue_unit / e,
        queue_late: queue_unit / l,
        schedule_early: schedule_unit / e,
        schedule_late: schedule_unit / l,
    })
}

/// System cost of a static MFD toll as a four-group breakdown.
pub fn static_system_cost_mfd(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    tau: f64,
) -> Result<CostBreakdown> {
    let components = static_cost_components_mfd(params, mfd, tau)?;
    Ok(components.breakdown(static_revenue_mfd(params, mfd, tau)?))
}

/// Grid-plus-golden-section revenue maximization over [static_lower_toll, δ].
pub fn static_revenue_optimal_mfd(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    grid_points: usize,
) -> Result<(f64, f64)> {
    let delta = params.cost_gap();
    if delta <= 0.0 {
        return Ok((0.0, 0.0));
    }
    let lo = static_lower_toll(params, mfd);
    let best = grid_golden_max(
        |tau| static_revenue_mfd(params, mfd, tau).unwrap_or(f64::NEG_INFINITY),
        lo,
        delta,
        grid_points,
    );
    Ok((best.x, best.value))
}

/// Grid-plus-golden-section system-cost minimization over [static_lower_toll, δ].
pub fn static_sc_optimal_mfd(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    grid_points: usize,
) -> Result<(f64, f64)> {
    let delta = params.cost_gap();
    if delta <= 0.0 {
        return Ok((0.0, params.transit_cost() * params.total_demand()));
    }
    let lo = static_lower_toll(params, mfd);
    let best = grid_golden_max(
        |tau| {
            static_cost_components_mfd(params, mfd, tau)
                .map(|c| -c.total())
                .unwrap_or(f64::NEG_INFINITY)
        },
        lo,
        delta,
        grid_points,
    );
    Ok((best.x, -best.value))
}

/// Dynamic benchmarks of the MFD system, which coincide with the bottleneck
/// benchmarks at capacity μ_f.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfdDynamicBenchmarks {
    pub ro: DynamicTollDesign,
    pub so: DynamicTollDesign,
    pub sc_opt: f64,
    pub ro_system_cost: CostBreakdown,
}

/// Revenue-optimal and system-cost-optimal dynamic benchmarks.
pub fn dynamic_benchmarks_mfd(params: &BottleneckParams, mfd: &TriangularMfd) -> MfdDynamicBenchmarks {
    let p = bottleneck_equivalent(params, mfd);
    MfdDynamicBenchmarks {
        ro: bottleneck::dynamic_revenue_optimal(&p),
        so: bottleneck::dynamic_so_design(&p),
        sc_opt: bottleneck::optimal_system_cost(&p),
        ro_system_cost: bottleneck::dynamic_ro_system_cost(&p),
    }
}
