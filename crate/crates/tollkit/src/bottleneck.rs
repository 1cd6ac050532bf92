//! Bottleneck model with a transit outside option.
//!
//! Every function is total over valid parameters: the all-transit and
//! uncongested regimes return their degenerate outcomes instead of errors.

use tollkit_model::{
    classify_regime, rush_window, BottleneckParams, CostBreakdown, EquilibriumOutcome,
    ModelError, Regime, RegimeThresholds, Result, TollPolicy, Trapezoid,
};

/// Revenue-relevant description of a trapezoidal dynamic toll.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DynamicTollDesign {
    /// Fraction f of the rush window covered by the flat segment.
    pub flat_fraction: f64,
    /// Trapezoid with peak max(z_T − z_C, 0).
    pub policy: TollPolicy,
    /// Revenue in user-hours.
    pub revenue: f64,
}

/// Worst-case ratio guarantees for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundReport {
    /// s = ΛeL/((z_T − z_C)(λ − μ)(e + L)); infinite when z_T = z_C.
    pub s: f64,
    /// Lower bound on static over dynamic optimal revenue.
    pub revenue_ratio_lower_bound: f64,
    /// Upper bound on either revenue-optimal policy's system cost over the
    /// optimum, present when z_T − z_C ≤ T_C.
    pub sc_ratio_upper_bound: Option<f64>,
    /// Exact static system-cost ratio when z_C = 0 and δ exceeds the high
    /// regime threshold.
    pub unbounded_case_ratio: Option<f64>,
    pub regime: Regime,
}

/// T_C = ΛeL/(μ(e + L)), the peak wait of the car-only equilibrium.
///
/// ```
/// use tollkit::bottleneck::max_wait_car_only;
/// use tollkit_model::BottleneckParams;
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.7, 1.8).unwrap();
/// assert!((max_wait_car_only(&p) - 3.5465116).abs() < 1e-6);
/// ```
pub fn max_wait_car_only(params: &BottleneckParams) -> f64 {
    if !params.is_congestible() {
        return 0.0;
    }
    params.total_demand() * params.harmonic_penalty() / params.capacity()
}

/// k = μ(e + L)/(eL), so that Λ/k = T_C.
fn queue_slope(params: &BottleneckParams) -> f64 {
    params.capacity() / params.harmonic_penalty()
}

/// Lower edge of the mixed toll band, max{0, δ − T_C}.
pub fn static_band_floor(params: &BottleneckParams) -> f64 {
    (params.cost_gap() - max_wait_car_only(params)).max(0.0)
}

fn all_transit_outcome(params: &BottleneckParams, regime: Regime) -> EquilibriumOutcome {
    EquilibriumOutcome {
        n_early: 0.0,
        n_late: 0.0,
        n_ontime_car: 0.0,
        n_transit: params.total_demand(),
        peak_wait: 0.0,
        interval: [0.0; 4],
        regime,
    }
}

/// Equilibrium under a static toll τ ≥ 0.
///
/// ```
/// use tollkit::bottleneck::static_equilibrium;
/// use tollkit_model::BottleneckParams;
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.0, 1.5).unwrap();
/// let eq = static_equilibrium(&p, 0.5).unwrap();
/// assert_eq!(eq.peak_wait, 0.0);
/// assert!((eq.n_transit - 22_000.0).abs() < 1e-9);
/// ```
pub fn static_equilibrium(params: &BottleneckParams, tau: f64) -> Result<EquilibriumOutcome> {
    if !(tau >= 0.0 && tau.is_finite()) {
        return Err(ModelError::Domain {
            name: "tau",
            value: tau,
            domain: "[0, inf)".into(),
        });
    }
    let regime = classify_regime(params);
    let delta = params.cost_gap();
    let (t1, t2) = rush_window(params);
    let demand = params.total_demand();
    if regime == Regime::AllTransit || tau > delta {
        return Ok(all_transit_outcome(params, regime));
    }
    if regime == Regime::Uncongested {
        return Ok(EquilibriumOutcome {
            n_early: 0.0,
            n_late: 0.0,
            n_ontime_car: demand,
            n_transit: 0.0,
            peak_wait: 0.0,
            interval: [t1, t1, t2, t2],
            regime,
        });
    }
    let t_c = max_wait_car_only(params);
    let rho = params.capacity_ratio();
    let mu = params.capacity();
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let w = (delta - tau).min(t_c);
    let share = 1.0 - w / t_c;
    let t_a = t1 - w / e * (1.0 - rho);
    let t_d = t2 + w / l * (1.0 - rho);
    Ok(EquilibriumOutcome {
        n_early: mu * w / e,
        n_late: mu * w / l,
        n_ontime_car: share * demand * rho,
        n_transit: share * demand * (1.0 - rho),
        peak_wait: w,
        interval: [t_a, t_a + w / e, t_d - w / l, t_d],
        regime,
    })
}

/// Revenue of a static toll τ.
///
/// Inside the mixed band [max{0, δ − T_C}, δ] this is
/// μτ[Λ/λ + (δ − τ)(e + L)/(eL)·(1 − μ/λ)]; below the band every user drives
/// and pays τ; above δ nobody drives.
pub fn static_revenue(params: &BottleneckParams, tau: f64) -> f64 {
    let delta = params.cost_gap();
    if tau > delta {
        return 0.0;
    }
    if !params.is_congestible() {
        return tau * params.total_demand();
    }
    if tau <= delta - max_wait_car_only(params) {
        return tau * params.total_demand();
    }
    let rho = params.capacity_ratio();
    params.capacity()
        * tau
        * (params.rush_length() + (delta - tau) / params.harmonic_penalty() * (1.0 - rho))
}

/// Revenue-maximizing static toll and its revenue.
///
/// ```
/// use tollkit::bottleneck::static_revenue_optimal_toll;
/// use tollkit_model::BottleneckParams;
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.0, 1.5).unwrap();
/// let (tau, revenue) = static_revenue_optimal_toll(&p);
/// assert_eq!(tau, 0.5);
/// assert!((revenue - 0.5 * 48_000.0).abs() < 1e-9);
/// ```
pub fn static_revenue_optimal_toll(params: &BottleneckParams) -> (f64, f64) {
    let delta = params.cost_gap();
    let tau = match classify_regime(params) {
        Regime::AllTransit => return (0.0, 0.0),
        Regime::Uncongested => return (delta, delta * params.total_demand()),
        Regime::MixedLow => delta,
        Regime::MixedMid | Regime::MixedHigh => {
            let low = RegimeThresholds::of(params)
                .expect("mixed regimes are congestible")
                .low;
            (0.5 * (delta + low)).max(delta - max_wait_car_only(params))
        }
    };
    (tau, static_revenue(params, tau))
}

/// Feasible flat fractions [max{0, 1 − min(1, δ/T_C)}, 1] of a dynamic toll
/// whose ramps never clip at zero.
pub fn dynamic_fraction_band(params: &BottleneckParams) -> (f64, f64) {
    let t_c = max_wait_car_only(params);
    let delta = params.cost_gap().max(0.0);
    if t_c == 0.0 {
        return (if delta > 0.0 { 0.0 } else { 1.0 }, 1.0);
    }
    ((1.0 - (delta / t_c).min(1.0)).max(0.0), 1.0)
}

/// Revenue of the trapezoidal dynamic toll with flat fraction f:
/// δ(fΛμ/λ + (1 − f)Λ) − (Λ²/(2μ))·(eL/(e + L))·(1 − f)².
///
/// The expression is evaluated even for fractions below the feasible band.
pub fn dynamic_revenue_at_fraction(params: &BottleneckParams, f: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&f) {
        return Err(ModelError::Domain {
            name: "f",
            value: f,
            domain: "[0, 1]".into(),
        });
    }
    let delta = params.cost_gap();
    let demand = params.total_demand();
    if !params.is_congestible() {
        return Ok(delta * demand);
    }
    let rho = params.capacity_ratio();
    let q = 1.0 - f;
    Ok(delta * (f * demand * rho + q * demand)
        - demand * demand / (2.0 * params.capacity()) * params.harmonic_penalty() * q * q)
}

/// Dynamic design with flat fraction f and peak max{δ, 0}.
pub fn dynamic_design_at_fraction(params: &BottleneckParams, f: f64) -> Result<DynamicTollDesign> {
    let revenue = if params.cost_gap() < 0.0 {
        0.0
    } else {
        dynamic_revenue_at_fraction(params, f)?
    };
    let peak = params.cost_gap().max(0.0);
    let (t1, t2) = rush_window(params);
    let (e, l) = (params.early_penalty(), params.late_penalty());
    let trapezoid = if params.is_congestible() {
        let ramps = (1.0 - f) * params.total_demand() / params.capacity();
        let rise = ramps * l / (e + l);
        let fall = ramps * e / (e + l);
        let t_b = t1 + params.capacity_ratio() * rise;
        let t_c = t_b + f * params.rush_length();
        Trapezoid::new(peak, [t_b - rise, t_b, t_c, t_c + fall], e, l)?
    } else {
        Trapezoid::new(peak, [t1, t1, t2, t2], e, l)?
    };
    Ok(DynamicTollDesign {
        flat_fraction: f,
        policy: TollPolicy::TrapezoidDynamic(trapezoid),
        revenue,
    })
}

/// Revenue-optimal dynamic toll: f* = max{1 − δ(1 − μ/λ)/T_C, 0}.
///
/// ```
/// use tollkit::bottleneck::dynamic_revenue_optimal;
/// use tollkit_model::BottleneckParams;
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.0, 1.0).unwrap();
/// let d = dynamic_revenue_optimal(&p);
/// assert_eq!(d.flat_fraction, 1.0);
/// assert_eq!(d.revenue, 0.0);
/// ```
pub fn dynamic_revenue_optimal(params: &BottleneckParams) -> DynamicTollDesign {
    let delta = params.cost_gap().max(0.0);
    let f = if params.is_congestible() {
        let raw = 1.0 - delta * (1.0 - params.capacity_ratio()) / max_wait_car_only(params);
        let (lo, hi) = dynamic_fraction_band(params);
        raw.max(0.0).clamp(lo, hi)
    } else {
        1.0
    };
    dynamic_design_at_fraction(params, f).expect("fraction lies in [0, 1]")
}

/// System-cost-optimal dynamic toll: the untolled queue profile converted into
/// a toll, f_so = 1 − min{δ/T_C, 1}.
pub fn dynamic_so_design(params: &BottleneckParams) -> DynamicTollDesign {
    let f = dynamic_fraction_band(params).0;
    dynamic_design_at_fraction(params, f).expect("fraction lies in [0, 1]")
}

/// System cost of a queue-free trapezoidal toll with flat fraction f.
pub fn dynamic_system_cost_at_fraction(params: &BottleneckParams, f: f64) -> Result<CostBreakdown> {
    let design = dynamic_design_at_fraction(params, f)?;
    let demand = params.total_demand();
    let (z_c, z_t) = (params.car_cost(), params.transit_cost());
    if params.cost_gap() < 0.0 {
        return Ok(CostBreakdown::new(z_t * demand, 0.0, 0.0, 0.0, 0.0));
    }
    if !params.is_congestible() {
        return Ok(CostBreakdown::new(0.0, z_c * demand, 0.0, 0.0, design.revenue));
    }
    let rho = params.capacity_ratio();
    let q = 1.0 - f;
    Ok(CostBreakdown::new(
        z_t * f * demand * (1.0 - rho),
        z_c * (f * demand * rho + q * demand),
        0.0,
        demand * max_wait_car_only(params) / 2.0 * q * q * (1.0 - rho),
        design.revenue,
    ))
}

/// System cost under the revenue-optimal dynamic toll, summed by component.
pub fn dynamic_ro_system_cost(params: &BottleneckParams) -> CostBreakdown {
    let f = dynamic_revenue_optimal(params).flat_fraction;
    dynamic_system_cost_at_fraction(params, f).expect("fraction lies in [0, 1]")
}

/// Minimum achievable system cost SC*.
///
/// ```
/// use tollkit::bottleneck::optimal_system_cost;
/// use tollkit_model::BottleneckParams;
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.5, 1.5).unwrap();
/// assert_eq!(optimal_system_cost(&p), 1.5 * 70_000.0);
/// ```
pub fn optimal_system_cost(params: &BottleneckParams) -> f64 {
    let delta = params.cost_gap();
    let demand = params.total_demand();
    if delta <= 0.0 {
        return params.transit_cost() * demand;
    }
    if !params.is_congestible() {
        return params.car_cost() * demand;
    }
    let rho = params.capacity_ratio();
    let t_c = max_wait_car_only(params);
    if delta <= t_c {
        params.car_cost() * demand + (1.0 - rho) * demand * delta
            - (1.0 - rho) * queue_slope(params) / 2.0 * delta * delta
    } else {
        params.car_cost() * demand
            + params.harmonic_penalty() / 2.0
                * demand
                * demand
                * (1.0 / params.capacity() - 1.0 / params.arrival_rate())
    }
}

/// System cost under a static toll τ, split into transit, free-flow car,
/// queuing and schedule-delay components.
pub fn static_system_cost(params: &BottleneckParams, tau: f64) -> CostBreakdown {
    let revenue = static_revenue(params, tau);
    let demand = params.total_demand();
    let (z_c, z_t) = (params.car_cost(), params.transit_cost());
    let delta = params.cost_gap();
    if delta < 0.0 || tau > delta {
        return CostBreakdown::new(z_t * demand, 0.0, 0.0, 0.0, revenue);
    }
    if !params.is_congestible() {
        return CostBreakdown::new(0.0, z_c * demand, 0.0, 0.0, revenue);
    }
    let rho = params.capacity_ratio();
    let k = queue_slope(params);
    let w = (delta - tau).min(max_wait_car_only(params));
    let ontime_mass = (demand - k * w).max(0.0);
    CostBreakdown::new(
        z_t * ontime_mass * (1.0 - rho),
        z_c * (k * w + ontime_mass * rho),
        w * (ontime_mass * rho + k * w / 2.0),
        k * w * w / 2.0 * (1.0 - rho),
        revenue,
    )
}

/// Static toll minimizing system cost over the feasible band.
///
/// Candidates are the band edges and, when μ/λ < 2/3, the interior stationary
/// point τ̄ = (Λρ/k + δ(1 − 2ρ))/(2 − 3ρ).
pub fn static_sc_optimal_toll(params: &BottleneckParams) -> (f64, f64) {
    let delta = params.cost_gap();
    if delta < 0.0 {
        return (0.0, static_system_cost(params, 0.0).total);
    }
    if !params.is_congestible() {
        return (0.0, static_system_cost(params, 0.0).total);
    }
    let lo = static_band_floor(params);
    let rho = params.capacity_ratio();
    let mut candidates = vec![lo, delta];
    if rho < 2.0 / 3.0 {
        let bar = (params.total_demand() * rho / queue_slope(params) + delta * (1.0 - 2.0 * rho))
            / (2.0 - 3.0 * rho);
        if bar > lo && bar < delta {
            candidates.push(bar);
        }
    }
    candidates
        .into_iter()
        .map(|tau| (tau, static_system_cost(params, tau).total))
        .fold((f64::NAN, f64::INFINITY), |best, cur| {
            if cur.1 < best.1 {
                cur
            } else {
                best
            }
        })
}

/// Revenue-ratio lower bound and system-cost guarantees.
///
/// ```
/// use tollkit::bottleneck::theorem_bounds;
/// use tollkit_model::{BottleneckParams, Regime};
/// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.7, 1.8).unwrap();
/// let b = theorem_bounds(&p);
/// assert_eq!(b.regime, Regime::MixedLow);
/// assert!((b.revenue_ratio_lower_bound - 2.0 / (3.0 - 9_600.0 / 14_000.0)).abs() < 1e-15);
/// assert_eq!(b.sc_ratio_upper_bound, Some(2.0));
/// ```
pub fn theorem_bounds(params: &BottleneckParams) -> BoundReport {
    let regime = classify_regime(params);
    let delta = params.cost_gap();
    let rho = params.capacity_ratio();
    let thresholds = RegimeThresholds::of(params);
    let s = match thresholds {
        Some(t) if delta > 0.0 => t.low / delta,
        _ => f64::INFINITY,
    };
    let revenue_ratio_lower_bound = match regime {
        Regime::AllTransit | Regime::Uncongested => 1.0,
        Regime::MixedLow => 2.0 / (3.0 - rho),
        Regime::MixedMid => ((2.0 + s) / 4.0).min(1.0 / (2.0 * (1.0 - rho))),
        Regime::MixedHigh => 2.0 / 3.0,
    };
    let sc_ratio_upper_bound =
        (regime.is_mixed() && delta <= max_wait_car_only(params)).then_some(2.0);
    let unbounded_case_ratio = (regime == Regime::MixedHigh && params.car_cost() == 0.0)
        .then(|| 1.0 + 1.0 / (1.0 - rho));
    BoundReport {
        s,
        revenue_ratio_lower_bound,
        sc_ratio_upper_bound,
        unbounded_case_ratio,
        regime,
    }
}
