//! Policy comparison rows, η sweeps and single-point reports.

use std::fmt;
use std::io::Write;

use anyhow::{Context, Result};
use rayon::prelude::*;
use tollkit::bottleneck::{self, BoundReport, DynamicTollDesign};
use tollkit::calibration::Scenario;
use tollkit::mfd;
use tollkit_model::{classify_regime, BottleneckParams, Regime, TriangularMfd};

/// Default jam accumulation for single-run network analyses.
pub const DEFAULT_JAM_ACCUMULATION: f64 = 140_000.0;

/// Header of the sweep CSV, in [`SweepRow`] field order.
pub const SWEEP_HEADER: [&str; 21] = [
    "eta",
    "tau_static_ro_h",
    "tau_static_ro_usd",
    "tau_static_so_h",
    "tau_static_so_usd",
    "rev_static_ro",
    "rev_static_so",
    "rev_dynamic_ro",
    "rev_dynamic_so",
    "sc_static_ro",
    "sc_static_so",
    "sc_dynamic_ro",
    "sc_opt",
    "rev_ratio_static_ro",
    "rev_ratio_static_so",
    "rev_ratio_dynamic_ro",
    "rev_ratio_dynamic_so",
    "sc_ratio_static_ro",
    "sc_ratio_static_so",
    "sc_ratio_dynamic_ro",
    "sc_ratio_dynamic_so",
];

/// One η point of a four-policy comparison.
///
/// Revenues and system costs are in user-hours; ratios are against the
/// dynamic revenue-optimal revenue and the minimum system cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub eta: f64,
    pub tau_static_ro_h: f64,
    pub tau_static_ro_usd: f64,
    pub tau_static_so_h: f64,
    pub tau_static_so_usd: f64,
    pub rev_static_ro: f64,
    pub rev_static_so: f64,
    pub rev_dynamic_ro: f64,
    pub rev_dynamic_so: f64,
    pub sc_static_ro: f64,
    pub sc_static_so: f64,
    pub sc_dynamic_ro: f64,
    pub sc_opt: f64,
    pub rev_ratio_static_ro: f64,
    pub rev_ratio_static_so: f64,
    pub rev_ratio_dynamic_ro: f64,
    pub rev_ratio_dynamic_so: f64,
    pub sc_ratio_static_ro: f64,
    pub sc_ratio_static_so: f64,
    pub sc_ratio_dynamic_ro: f64,
    pub sc_ratio_dynamic_so: f64,
    pub regime: Regime,
}

/// Raw policy values before normalization.
#[derive(Debug, Clone, Copy)]
struct PolicyValues {
    tau_ro: f64,
    tau_so: f64,
    rev: [f64; 4],
    sc: [f64; 4],
    regime: Regime,
}

/// num/den, with 0/0 read as 1.
fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 && num == 0.0 {
        1.0
    } else {
        num / den
    }
}

impl SweepRow {
    fn assemble(eta: f64, value_of_time: f64, v: PolicyValues) -> Self {
        let r = |x: f64| ratio(x, v.rev[2]);
        let c = |x: f64| ratio(x, v.sc[3]);
        Self {
            eta,
            tau_static_ro_h: v.tau_ro,
            tau_static_ro_usd: v.tau_ro * value_of_time,
            tau_static_so_h: v.tau_so,
            tau_static_so_usd: v.tau_so * value_of_time,
            rev_static_ro: v.rev[0],
            rev_static_so: v.rev[1],
            rev_dynamic_ro: v.rev[2],
            rev_dynamic_so: v.rev[3],
            sc_static_ro: v.sc[0],
            sc_static_so: v.sc[1],
            sc_dynamic_ro: v.sc[2],
            sc_opt: v.sc[3],
            rev_ratio_static_ro: r(v.rev[0]),
            rev_ratio_static_so: r(v.rev[1]),
            rev_ratio_dynamic_ro: r(v.rev[2]),
            rev_ratio_dynamic_so: r(v.rev[3]),
            sc_ratio_static_ro: c(v.sc[0]),
            sc_ratio_static_so: c(v.sc[1]),
            sc_ratio_dynamic_ro: c(v.sc[2]),
            sc_ratio_dynamic_so: c(v.sc[3]),
            regime: v.regime,
        }
    }

    /// Numeric fields in header order.
    pub fn values(&self) -> [f64; 21] {
        [
            self.eta,
            self.tau_static_ro_h,
            self.tau_static_ro_usd,
            self.tau_static_so_h,
            self.tau_static_so_usd,
            self.rev_static_ro,
            self.rev_static_so,
            self.rev_dynamic_ro,
            self.rev_dynamic_so,
            self.sc_static_ro,
            self.sc_static_so,
            self.sc_dynamic_ro,
            self.sc_opt,
            self.rev_ratio_static_ro,
            self.rev_ratio_static_so,
            self.rev_ratio_dynamic_ro,
            self.rev_ratio_dynamic_so,
            self.sc_ratio_static_ro,
            self.sc_ratio_static_so,
            self.sc_ratio_dynamic_ro,
            self.sc_ratio_dynamic_so,
        ]
    }
}

fn bottleneck_values(p: &BottleneckParams) -> PolicyValues {
    let (tau_ro, rev_ro) = bottleneck::static_revenue_optimal_toll(p);
    let (tau_so, sc_so) = bottleneck::static_sc_optimal_toll(p);
    PolicyValues {
        tau_ro,
        tau_so,
        rev: [
            rev_ro,
            bottleneck::static_revenue(p, tau_so),
            bottleneck::dynamic_revenue_optimal(p).revenue,
            bottleneck::dynamic_so_design(p).revenue,
        ],
        sc: [
            bottleneck::static_system_cost(p, tau_ro).total,
            sc_so,
            bottleneck::dynamic_ro_system_cost(p).total,
            bottleneck::optimal_system_cost(p),
        ],
        regime: classify_regime(p),
    }
}

fn network_values(p: &BottleneckParams, net: &TriangularMfd, grid: usize) -> Result<PolicyValues> {
    let (tau_ro, rev_ro) = mfd::static_revenue_optimal_mfd(p, net, grid)?;
    let (tau_so, sc_so) = mfd::static_sc_optimal_mfd(p, net, grid)?;
    let bench = mfd::dynamic_benchmarks_mfd(p, net);
    let (rev_so, sc_ro) = if p.cost_gap() <= 0.0 {
        (0.0, p.transit_cost() * p.total_demand())
    } else {
        (
            mfd::static_revenue_mfd(p, net, tau_so)?,
            mfd::static_system_cost_mfd(p, net, tau_ro)?.total,
        )
    };
    Ok(PolicyValues {
        tau_ro,
        tau_so,
        rev: [rev_ro, rev_so, bench.ro.revenue, bench.so.revenue],
        sc: [sc_ro, sc_so, bench.ro_system_cost.total, bench.sc_opt],
        regime: classify_regime(&mfd::bottleneck_equivalent(p, net)),
    })
}

/// Network diagram of a scenario at jam accumulation `n_j`, or the default.
fn network(scenario: &Scenario, n_j: Option<f64>) -> Result<Option<TriangularMfd>> {
    let Some(base) = scenario.mfd() else {
        return Ok(None);
    };
    let n_j = n_j.unwrap_or(DEFAULT_JAM_ACCUMULATION);
    Ok(Some(base.with_jam_accumulation(n_j).with_context(|| {
        format!("jam accumulation {n_j} is invalid for this diagram")
    })?))
}

/// The comparison row at one η. `n_j` overrides the network default and is
/// ignored for bottleneck scenarios.
pub fn sweep_row(scenario: &Scenario, eta: f64, n_j: Option<f64>, grid: usize) -> Result<SweepRow> {
    let p = scenario
        .params_at(eta)
        .with_context(|| format!("invalid parameters at eta = {eta}"))?;
    let values = match network(scenario, n_j)? {
        None => bottleneck_values(&p),
        Some(net) => network_values(&p, &net, grid)
            .with_context(|| format!("network evaluation failed at eta = {eta}"))?,
    };
    Ok(SweepRow::assemble(eta, scenario.value_of_time, values))
}

/// Rows for every η, computed in parallel and returned in input order.
pub fn sweep(scenario: &Scenario, etas: &[f64], n_j: Option<f64>, grid: usize) -> Result<Vec<SweepRow>> {
    etas.par_iter()
        .map(|&eta| sweep_row(scenario, eta, n_j, grid))
        .collect()
}

/// Largest difference of any numeric column across a jam-accumulation sweep,
/// relative to the reference rows.
#[derive(Debug, Clone, PartialEq)]
pub struct JamDivergence {
    pub n_j: f64,
    pub eta: f64,
    pub column: &'static str,
    pub relative_gap: f64,
}

/// Compares rows recomputed at each jam accumulation against `reference`.
pub fn jam_divergence(
    scenario: &Scenario,
    reference: &[SweepRow],
    grid: usize,
) -> Result<Option<JamDivergence>> {
    let etas: Vec<f64> = reference.iter().map(|r| r.eta).collect();
    let mut worst: Option<JamDivergence> = None;
    for &n_j in scenario.jam_sweep() {
        let rows = sweep(scenario, &etas, Some(n_j), grid)?;
        for (row, base) in rows.iter().zip(reference) {
            for ((x, y), column) in row.values().iter().zip(base.values()).zip(SWEEP_HEADER) {
                let gap = (x - y).abs() / y.abs().max(f64::MIN_POSITIVE);
                if worst.as_ref().map_or(true, |w| gap > w.relative_gap) {
                    worst = Some(JamDivergence {
                        n_j,
                        eta: row.eta,
                        column,
                        relative_gap: gap,
                    });
                }
            }
        }
    }
    Ok(worst)
}

/// Writes the header and one line per row, numbers to 8 decimal places.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = SWEEP_HEADER.to_vec();
    header.push("regime");
    writer.write_record(&header)?;
    for row in rows {
        let mut record: Vec<String> = row.values().iter().map(|v| format!("{v:.8}")).collect();
        record.push(row.regime.tag().to_string());
        writer.write_record(&record)?;
    }
    writer.flush()?;
    Ok(())
}

/// Single-point report across all four policies.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub scenario: String,
    pub value_of_time: f64,
    pub params: BottleneckParams,
    pub jam_accumulation: Option<f64>,
    pub row: SweepRow,
    pub dynamic_ro: DynamicTollDesign,
    pub dynamic_so: DynamicTollDesign,
    pub bounds: BoundReport,
}

/// Analyzes one scenario at one η.
pub fn analyze(scenario: &Scenario, eta: f64, n_j: Option<f64>, grid: usize) -> Result<Analysis> {
    let params = scenario
        .params_at(eta)
        .with_context(|| format!("invalid parameters at eta = {eta}"))?;
    let net = network(scenario, n_j)?;
    let effective = match &net {
        Some(m) => mfd::bottleneck_equivalent(&params, m),
        None => params,
    };
    Ok(Analysis {
        scenario: scenario.name.clone(),
        value_of_time: scenario.value_of_time,
        params,
        jam_accumulation: net.map(|m| m.jam_accumulation()),
        row: sweep_row(scenario, eta, n_j, grid)?,
        dynamic_ro: bottleneck::dynamic_revenue_optimal(&effective),
        dynamic_so: bottleneck::dynamic_so_design(&effective),
        bounds: bottleneck::theorem_bounds(&effective),
    })
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = &self.row;
        let c_w = self.value_of_time;
        let p = &self.params;
        writeln!(f, "scenario {} at eta = {}", self.scenario, r.eta)?;
        if let Some(n_j) = self.jam_accumulation {
            writeln!(f, "jam accumulation n_j = {n_j}")?;
        }
        writeln!(
            f,
            "z_T = {:.6} h, z_C = {:.6} h, cost gap = {:.6} h (${:.2})",
            p.transit_cost(),
            p.car_cost(),
            p.cost_gap(),
            p.cost_gap() * c_w
        )?;
        writeln!(f, "regime: {}", r.regime)?;
        if r.regime == Regime::AllTransit {
            writeln!(f, "all users take transit; revenue 0")?;
            return writeln!(f, "system cost: {:.4} user-hours (${:.2})", r.sc_opt, r.sc_opt * c_w);
        }
        writeln!(f)?;
        writeln!(
            f,
            "{:<12} {:>14} {:>16} {:>10} {:>16} {:>10}",
            "policy", "toll", "revenue (u-h)", "rev ratio", "system cost", "sc ratio"
        )?;
        let lines = [
            (
                "static-RO",
                format!("${:.2}", r.tau_static_ro_usd),
                r.rev_static_ro,
                r.rev_ratio_static_ro,
                r.sc_static_ro,
                r.sc_ratio_static_ro,
            ),
            (
                "static-SO",
                format!("${:.2}", r.tau_static_so_usd),
                r.rev_static_so,
                r.rev_ratio_static_so,
                r.sc_static_so,
                r.sc_ratio_static_so,
            ),
            (
                "dynamic-RO",
                format!("f={:.5}", self.dynamic_ro.flat_fraction),
                r.rev_dynamic_ro,
                r.rev_ratio_dynamic_ro,
                r.sc_dynamic_ro,
                r.sc_ratio_dynamic_ro,
            ),
            (
                "dynamic-SO",
                format!("f={:.5}", self.dynamic_so.flat_fraction),
                r.rev_dynamic_so,
                r.rev_ratio_dynamic_so,
                r.sc_opt,
                r.sc_ratio_dynamic_so,
            ),
        ];
        for (name, toll, rev, rev_ratio, sc, sc_ratio) in lines {
            writeln!(
                f,
                "{name:<12} {toll:>14} {rev:>16.2} {rev_ratio:>10.5} {sc:>16.2} {sc_ratio:>10.5}"
            )?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "dynamic peak toll: {:.6} h (${:.2}); revenues in dollars: static-RO ${:.0}, dynamic-RO ${:.0}",
            p.cost_gap(),
            p.cost_gap() * c_w,
            r.rev_static_ro * c_w,
            r.rev_dynamic_ro * c_w
        )?;
        let b = &self.bounds;
        writeln!(f, "static/dynamic revenue ratio lower bound: {:.5}", b.revenue_ratio_lower_bound)?;
        match b.sc_ratio_upper_bound {
            Some(bound) => writeln!(f, "system cost ratio upper bound: {bound}")?,
            None => writeln!(f, "system cost ratio upper bound: not guaranteed (gap exceeds car-only peak wait)")?,
        }
        if let Some(exact) = b.unbounded_case_ratio {
            writeln!(f, "static-RO system cost ratio with free driving: {exact:.6}")?;
        }
        Ok(())
    }
}
