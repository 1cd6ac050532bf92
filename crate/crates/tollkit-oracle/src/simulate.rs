//! Equilibrium construction by crossing-count accounting on a time grid.

use tollkit_model::{
    classify_regime, rush_window, BottleneckParams, CostBreakdown, EquilibriumOutcome,
    TriangularMfd,
};

use crate::quadrature::{adaptive_simpson, cumulative_trapezoid, trapezoid, trapezoid_fn};
use crate::service::{Network, PointQueue, Service};
use crate::trace::EquilibriumTrace;
use crate::OracleError;

/// Default grid step, hours.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Result of a bottleneck simulation.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub trace: EquilibriumTrace,
    pub outcome: EquilibriumOutcome,
    pub costs: CostBreakdown,
}

/// Result of a network simulation with the queuing and schedule-delay costs
/// split by timing class.
#[derive(Debug, Clone)]
pub struct MfdSimulation {
    pub trace: EquilibriumTrace,
    pub outcome: EquilibriumOutcome,
    pub costs: CostBreakdown,
    pub queue_ontime: f64,
    pub queue_early: f64,
    pub queue_late: f64,
    pub schedule_early: f64,
    pub schedule_late: f64,
}

#[derive(Clone, Copy)]
enum Cells {
    Step(f64),
    One,
}

impl Cells {
    fn count(&self, len: f64) -> usize {
        match self {
            Cells::Step(dt) => ((len / dt).ceil() as usize).max(1),
            Cells::One => 1,
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Part {
    Early,
    Flat,
    Late,
}

/// Breakpoints [t_A, t_B, t_C, t_D] and the peak level of a trapezoid.
#[derive(Clone, Copy)]
struct Layout {
    t: [f64; 4],
    peak_wait: f64,
}

impl Layout {
    fn flat(&self) -> f64 {
        self.t[2] - self.t[1]
    }
}

fn check_step(params: &BottleneckParams, dt: f64) -> Result<(), OracleError> {
    if !(dt > 0.0) {
        return Err(OracleError::NonPositiveStep { step: dt });
    }
    let limit = params.rush_length() / 100.0;
    if dt > limit {
        return Err(OracleError::StepTooCoarse { step: dt, limit });
    }
    Ok(())
}

fn check_mixed(params: &BottleneckParams) -> Result<(), OracleError> {
    if params.capacity() >= params.arrival_rate() {
        return Err(OracleError::Precondition("capacity below the arrival rate"));
    }
    if params.transit_cost() < params.car_cost() {
        return Err(OracleError::Precondition("transit cost at least the car cost"));
    }
    Ok(())
}

/// Places a queue profile with the given peak: cars crossing on each ramp are
/// counted and matched against desired crossing times arriving at rate λ.
fn queue_layout(params: &BottleneckParams, service: &dyn Service, peak: f64, cells: Cells) -> Layout {
    let (t1, t2) = rush_window(params);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let lambda = params.arrival_rate();
    let rise = peak / e;
    let fall = peak / l;
    let early = trapezoid_fn(|u| service.rate(e * u), 0.0, rise, cells.count(rise));
    let late = trapezoid_fn(|u| service.rate(peak - l * u), 0.0, fall, cells.count(fall));
    let t_b = t1 + early / lambda;
    let t_c = t2 - late / lambda;
    Layout {
        t: [t_b - rise, t_b, t_c, t_c + fall],
        peak_wait: peak,
    }
}

/// Largest peak wait with a nonnegative on-time segment, by bisection.
fn car_only_layout(params: &BottleneckParams, service: &dyn Service, cap: f64, cells: Cells) -> Layout {
    let (mut lo, mut hi) = (0.0, cap);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if queue_layout(params, service, mid, cells).flat() >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    queue_layout(params, service, lo, cells)
}

struct Integrals {
    trace: EquilibriumTrace,
    cars: f64,
    n_early: f64,
    n_ontime: f64,
    n_late: f64,
    revenue: f64,
    queue: [f64; 3],
    schedule: [f64; 2],
}

/// Samples the profile on a grid aligned with the breakpoints and integrates
/// crossings, waits, tolls and schedule delays by the trapezoid rule.
fn integrate(
    params: &BottleneckParams,
    service: &dyn Service,
    layout: &Layout,
    wait_at: &dyn Fn(Part, f64) -> f64,
    toll_at: &dyn Fn(Part, f64) -> f64,
    cells: Cells,
) -> Integrals {
    let (t1, t2) = rush_window(params);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let lambda = params.arrival_rate();
    let [t_a, t_b, t_c, t_d] = layout.t;
    let mut time = Vec::new();
    let mut part = Vec::new();
    for (start, end, p) in [(t_a, t_b, Part::Early), (t_b, t_c, Part::Flat), (t_c, t_d, Part::Late)] {
        let len = end - start;
        if len <= 0.0 {
            continue;
        }
        let n = cells.count(len);
        let first = if time.is_empty() { 0 } else { 1 };
        for i in first..=n {
            time.push(if i == n { end } else { start + len * i as f64 / n as f64 });
            part.push(p);
        }
    }
    if time.is_empty() {
        time.push(t_a);
        part.push(Part::Flat);
    }
    let wait: Vec<f64> = time.iter().zip(&part).map(|(&t, &p)| wait_at(p, t)).collect();
    let toll: Vec<f64> = time.iter().zip(&part).map(|(&t, &p)| toll_at(p, t)).collect();
    let rate: Vec<f64> = wait.iter().map(|&w| service.rate(w)).collect();
    let departures = cumulative_trapezoid(&time, &rate);
    let cars = *departures.last().unwrap_or(&0.0);
    let idx_b = time.iter().position(|&t| t >= t_b).unwrap_or(0);
    let idx_c = time.iter().rposition(|&t| t <= t_c).unwrap_or(time.len() - 1);
    let n_early = departures[idx_b];
    let n_ontime = departures[idx_c] - departures[idx_b];

    let select = |which: Part, f: &dyn Fn(usize) -> f64| -> f64 {
        let (idx, vals): (Vec<usize>, Vec<f64>) = (0..time.len())
            .filter(|&i| {
                part[i] == which
                    || (which == Part::Early && i == idx_b)
                    || (which == Part::Late && i == idx_c)
                    || (which == Part::Flat && (i == idx_b || i == idx_c))
            })
            .map(|i| (i, f(i)))
            .unzip();
        let ts: Vec<f64> = idx.iter().map(|&i| time[i]).collect();
        trapezoid(&ts, &vals)
    };
    let queue = [
        select(Part::Early, &|i| rate[i] * wait[i]),
        select(Part::Flat, &|i| rate[i] * wait[i]),
        select(Part::Late, &|i| rate[i] * wait[i]),
    ];
    let schedule = [
        select(Part::Early, &|i| {
            let desired = t1 + departures[i] / lambda;
            rate[i] * e * (desired - time[i]).max(0.0)
        }),
        select(Part::Late, &|i| {
            let desired = t2 - (cars - departures[i]) / lambda;
            rate[i] * l * (time[i] - desired).max(0.0)
        }),
    ];
    let revenue_density: Vec<f64> = rate.iter().zip(&toll).map(|(r, c)| r * c).collect();
    let revenue = trapezoid(&time, &revenue_density);

    let entry: Vec<f64> = time.iter().zip(&wait).map(|(t, w)| t - w).collect();
    let cum_arrivals = time
        .iter()
        .map(|&t| {
            if t <= entry[0] {
                return if t == entry[0] { departures[0] } else { 0.0 };
            }
            match entry.partition_point(|&x| x <= t) {
                j if j == entry.len() => cars,
                j => {
                    let span = entry[j] - entry[j - 1];
                    let frac = if span > 0.0 { (t - entry[j - 1]) / span } else { 1.0 };
                    departures[j - 1] + frac * (departures[j] - departures[j - 1])
                }
            }
        })
        .collect();
    let accumulation = wait
        .iter()
        .map(|&w| service.accumulation(w))
        .collect::<Option<Vec<f64>>>();

    Integrals {
        trace: EquilibriumTrace {
            time,
            wait,
            toll,
            throughput: rate,
            cum_arrivals,
            cum_departures: departures,
            accumulation,
        },
        cars,
        n_early,
        n_ontime,
        n_late: cars - n_early - n_ontime,
        revenue,
        queue,
        schedule,
    }
}

fn queue_wait(layout: Layout, e: f64, l: f64) -> impl Fn(Part, f64) -> f64 {
    move |p, t| match p {
        Part::Early => (e * (t - layout.t[0])).clamp(0.0, layout.peak_wait),
        Part::Flat => layout.peak_wait,
        Part::Late => (layout.peak_wait - l * (t - layout.t[2])).clamp(0.0, layout.peak_wait),
    }
}

fn static_layout(
    params: &BottleneckParams,
    service: &dyn Service,
    tau: f64,
    cells: Cells,
    allow_car_only: bool,
) -> Result<Option<Layout>, OracleError> {
    let delta = params.cost_gap();
    if tau > delta {
        return Ok(None);
    }
    let peak = delta - tau;
    let layout = queue_layout(params, service, peak, cells);
    if layout.flat() >= 0.0 {
        return Ok(Some(layout));
    }
    if !allow_car_only {
        return Err(OracleError::BelowNetworkDomain { tau });
    }
    Ok(Some(car_only_layout(params, service, peak, cells)))
}

fn run_static(
    params: &BottleneckParams,
    service: &dyn Service,
    tau: f64,
    cells: Cells,
    allow_car_only: bool,
) -> Result<(Integrals, Layout), OracleError> {
    let (t1, t2) = rush_window(params);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    match static_layout(params, service, tau, cells, allow_car_only)? {
        Some(layout) => {
            let wait = queue_wait(layout, e, l);
            let toll = |_: Part, _: f64| tau;
            Ok((integrate(params, service, &layout, &wait, &toll, cells), layout))
        }
        None => {
            let layout = Layout {
                t: [t1, t1, t2, t2],
                peak_wait: 0.0,
            };
            let idle = PointQueue(0.0);
            let zero = |_: Part, _: f64| 0.0;
            let toll = |_: Part, _: f64| tau;
            Ok((integrate(params, &idle, &layout, &zero, &toll, cells), layout))
        }
    }
}

fn outcome(params: &BottleneckParams, run: &Integrals, layout: &Layout) -> EquilibriumOutcome {
    EquilibriumOutcome {
        n_early: run.n_early,
        n_late: run.n_late,
        n_ontime_car: run.n_ontime,
        n_transit: params.total_demand() - run.cars,
        peak_wait: layout.peak_wait,
        interval: layout.t,
        regime: classify_regime(params),
    }
}

fn costs(params: &BottleneckParams, run: &Integrals) -> CostBreakdown {
    CostBreakdown::new(
        params.transit_cost() * (params.total_demand() - run.cars),
        params.car_cost() * run.cars,
        run.queue.iter().sum(),
        run.schedule.iter().sum(),
        run.revenue,
    )
}

/// Simulates the static-toll bottleneck equilibrium on a grid of step `dt`.
///
/// ```
/// use tollkit_model::BottleneckParams;
/// use tollkit_oracle::simulate_static_bottleneck;
/// let p = BottleneckParams::new(1_000.0, 500.0, 250.0, 0.5, 2.0, 1.0, 1.2).unwrap();
/// let sim = simulate_static_bottleneck(&p, p.cost_gap(), 1e-3).unwrap();
/// assert_eq!(sim.outcome.peak_wait, 0.0);
/// assert!((sim.outcome.n_transit - 500.0).abs() < 1e-9);
/// ```
pub fn simulate_static_bottleneck(
    params: &BottleneckParams,
    tau: f64,
    dt: f64,
) -> Result<Simulation, OracleError> {
    check_step(params, dt)?;
    check_mixed(params)?;
    if !(tau >= 0.0) {
        return Err(OracleError::Precondition("a nonnegative toll"));
    }
    let service = PointQueue(params.capacity());
    let (run, layout) = run_static(params, &service, tau, Cells::Step(dt), true)?;
    Ok(Simulation {
        outcome: outcome(params, &run, &layout),
        costs: costs(params, &run),
        trace: run.trace,
    })
}

/// Ramp layout of a queue-free trapezoidal toll with flat fraction f, and the
/// toll level at its start.
fn dynamic_layout(params: &BottleneckParams, f: f64) -> (Layout, f64) {
    let (t1, _) = rush_window(params);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let mu = params.capacity();
    let ramp_time = (1.0 - f) * params.total_demand() / mu;
    let rise = ramp_time * l / (e + l);
    let fall = ramp_time - rise;
    let t_b = t1 + mu * rise / params.arrival_rate();
    let t_c = t_b + f * params.rush_length();
    let layout = Layout {
        t: [t_b - rise, t_b, t_c, t_c + fall],
        peak_wait: 0.0,
    };
    (layout, params.cost_gap() - e * rise)
}

fn run_dynamic(params: &BottleneckParams, f: f64, cells: Cells) -> (Integrals, Layout) {
    let (layout, _) = dynamic_layout(params, f);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let delta = params.cost_gap();
    let service = PointQueue(params.capacity());
    let zero = |_: Part, _: f64| 0.0;
    let toll = move |p: Part, t: f64| match p {
        Part::Early => delta - e * (layout.t[1] - t),
        Part::Flat => delta,
        Part::Late => delta - l * (t - layout.t[2]),
    };
    (integrate(params, &service, &layout, &zero, &toll, cells), layout)
}

/// Simulates the queue-free equilibrium of a trapezoidal toll with peak
/// z_T − z_C and flat fraction f.
pub fn simulate_dynamic_bottleneck(
    params: &BottleneckParams,
    f: f64,
    dt: f64,
) -> Result<Simulation, OracleError> {
    check_step(params, dt)?;
    check_mixed(params)?;
    if !(0.0..=1.0).contains(&f) {
        return Err(OracleError::Precondition("a flat fraction in [0, 1]"));
    }
    let (run, layout) = run_dynamic(params, f, Cells::Step(dt));
    Ok(Simulation {
        outcome: outcome(params, &run, &layout),
        costs: costs(params, &run),
        trace: run.trace,
    })
}

fn argmax_on_grid(lo: f64, hi: f64, points: usize, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let points = points.max(2);
    (0..points)
        .map(|i| {
            let x = if i == points - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (points - 1) as f64
            };
            (x, f(x))
        })
        .fold((lo, f64::NEG_INFINITY), |best, cur| if cur.1 > best.1 { cur } else { best })
}

/// Exhaustive search of the static toll on a uniform grid over [0, z_T − z_C].
pub fn grid_search_static(params: &BottleneckParams, grid_points: usize) -> (f64, f64) {
    let delta = params.cost_gap();
    if delta <= 0.0 || params.capacity() >= params.arrival_rate() {
        return (delta.max(0.0), delta.max(0.0) * params.total_demand());
    }
    let service = PointQueue(params.capacity());
    argmax_on_grid(0.0, delta, grid_points.max(100), |tau| {
        run_static(params, &service, tau, Cells::One, true)
            .map(|(run, _)| run.revenue)
            .unwrap_or(f64::NEG_INFINITY)
    })
}

/// Exhaustive search of the flat fraction over the fractions whose toll never
/// drops below zero.
pub fn grid_search_dynamic_fraction(params: &BottleneckParams, grid_points: usize) -> (f64, f64) {
    let delta = params.cost_gap();
    if delta <= 0.0 || params.capacity() >= params.arrival_rate() {
        return (1.0, delta.max(0.0) * params.total_demand());
    }
    let lo = if dynamic_layout(params, 0.0).1 >= 0.0 {
        0.0
    } else {
        let (mut a, mut b) = (0.0, 1.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if dynamic_layout(params, m).1 >= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        b
    };
    argmax_on_grid(lo, 1.0, grid_points.max(100), |f| run_dynamic(params, f, Cells::One).0.revenue)
}

/// Simulates a static toll in the network with a triangular diagram. The
/// capacity field of `params` is ignored.
pub fn simulate_static_mfd(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    tau: f64,
    dt: f64,
) -> Result<MfdSimulation, OracleError> {
    check_step(params, dt)?;
    let params = params
        .with_capacity(mfd.max_throughput())
        .map_err(|_| OracleError::Precondition("a positive max throughput"))?;
    check_mixed(&params)?;
    if !(tau >= 0.0) || tau > params.cost_gap() {
        return Err(OracleError::Precondition("a toll in [0, z_T - z_C]"));
    }
    let service = Network(*mfd);
    let (run, layout) = run_static(&params, &service, tau, Cells::Step(dt), false)?;
    Ok(MfdSimulation {
        outcome: outcome(&params, &run, &layout),
        costs: costs(&params, &run),
        queue_early: run.queue[0],
        queue_ontime: run.queue[1],
        queue_late: run.queue[2],
        schedule_early: run.schedule[0],
        schedule_late: run.schedule[1],
        trace: run.trace,
    })
}

/// Revenue of a static network toll by time-grid quadrature.
pub fn integrate_mfd_revenue(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    tau: f64,
    dt: f64,
) -> Result<f64, OracleError> {
    Ok(simulate_static_mfd(params, mfd, tau, dt)?.costs.revenue)
}

/// Ramp integrals of the network cost derivation, evaluated by adaptive
/// quadrature in the stated integral form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MfdPrintedIntegrals {
    pub queue_early: f64,
    pub queue_late: f64,
    pub schedule_early: f64,
    pub schedule_late: f64,
}

/// Evaluates the ramp queuing and schedule-delay integrals of the network
/// derivation. The schedule integrands pair the throughput at the wait
/// reached after Δ hours of descent from the peak with the linear desired-time
/// weight (t_1 − t_A)(t_B − t)/(t_B − t_A), as stated in the derivation.
pub fn mfd_printed_integrals(
    params: &BottleneckParams,
    mfd: &TriangularMfd,
    tau: f64,
) -> Result<MfdPrintedIntegrals, OracleError> {
    let params = params
        .with_capacity(mfd.max_throughput())
        .map_err(|_| OracleError::Precondition("a positive max throughput"))?;
    check_mixed(&params)?;
    let service = Network(*mfd);
    let delta = params.cost_gap();
    if !(tau >= 0.0) || tau > delta {
        return Err(OracleError::Precondition("a toll in [0, z_T - z_C]"));
    }
    let peak = delta - tau;
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let lambda = params.arrival_rate();
    let rise = peak / e;
    let fall = peak / l;
    let tight = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| {
        let rough = trapezoid_fn(f, a, b, 64).abs();
        adaptive_simpson(f, a, b, 1e-14 * rough + 1e-300)
    };
    let early_cars = tight(&|u| service.rate(e * u), 0.0, rise);
    let late_cars = tight(&|u| service.rate(peak - l * u), 0.0, fall);
    let lead = rise - early_cars / lambda;
    let lag = fall - late_cars / lambda;
    if params.rush_length() < (early_cars + late_cars) / lambda {
        return Err(OracleError::BelowNetworkDomain { tau });
    }
    let queue_early = tight(
        &|d| {
            let w = peak - e * d;
            service.rate(w) * w
        },
        0.0,
        rise,
    );
    let queue_late = tight(
        &|d| {
            let w = peak - l * d;
            service.rate(w) * w
        },
        0.0,
        fall,
    );
    let schedule_early = if rise > 0.0 {
        e * lead / rise * tight(&|d| service.rate(peak - e * d) * (rise - d), 0.0, rise)
    } else {
        0.0
    };
    let schedule_late = if fall > 0.0 {
        l * lag / fall * tight(&|d| service.rate(peak - l * d) * (fall - d), 0.0, fall)
    } else {
        0.0
    };
    Ok(MfdPrintedIntegrals {
        queue_early,
        queue_late,
        schedule_early,
        schedule_late,
    })
}
