//! η at which the static revenue-optimal toll equals an implemented toll.

use std::fmt;

use anyhow::{bail, Context, Result};
use tollkit::bottleneck;
use tollkit::calibration::Scenario;
use tollkit::mfd;

use crate::analysis::{sweep_row, SweepRow, DEFAULT_JAM_ACCUMULATION};

/// Search interval for η.
pub const ETA_BRACKET: (f64, f64) = (1.0, 30.0);

/// Crossover η values quoted alongside the built-in calibrations.
pub const REFERENCE_CROSSOVERS: [(&str, f64); 2] = [("bay_bridge", 2.1), ("nyc", 1.7)];

/// Outcome of a crossover search.
#[derive(Debug, Clone)]
pub struct CrossoverReport {
    pub scenario: String,
    /// Dollars.
    pub implemented_toll: f64,
    /// Root, or `None` when τ*(η) never reaches the toll on the bracket.
    pub eta: Option<f64>,
    pub row: Option<SweepRow>,
    pub reference_eta: Option<f64>,
}

impl CrossoverReport {
    /// Computed minus reference η, when both exist.
    pub fn discrepancy(&self) -> Option<f64> {
        Some(self.eta? - self.reference_eta?)
    }
}

/// Revenue-optimal static toll in hours at η.
pub fn optimal_static_toll(scenario: &Scenario, eta: f64, n_j: Option<f64>, grid: usize) -> Result<f64> {
    let p = scenario.params_at(eta)?;
    Ok(match scenario.mfd() {
        None => bottleneck::static_revenue_optimal_toll(&p).0,
        Some(base) => {
            let net = base.with_jam_accumulation(n_j.unwrap_or(DEFAULT_JAM_ACCUMULATION))?;
            mfd::static_revenue_optimal_mfd(&p, &net, grid)?.0
        }
    })
}

/// Finds the boundary η on [1, 30] where τ*(η)·c_W first exceeds the
/// implemented toll, by bisection.
pub fn crossover(scenario: &Scenario, n_j: Option<f64>, grid: usize) -> Result<CrossoverReport> {
    let Some(toll) = scenario.implemented_toll else {
        bail!("scenario `{}` has no implemented toll", scenario.name);
    };
    let target = toll / scenario.value_of_time;
    let above = |eta: f64| -> Result<bool> {
        Ok(optimal_static_toll(scenario, eta, n_j, grid)
            .with_context(|| format!("toll search failed at eta = {eta}"))?
            > target)
    };
    let (mut lo, mut hi) = ETA_BRACKET;
    let eta = if above(lo)? || !above(hi)? {
        None
    } else {
        while hi - lo > 1e-10 {
            let mid = 0.5 * (lo + hi);
            if above(mid)? {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(0.5 * (lo + hi))
    };
    let row = eta.map(|e| sweep_row(scenario, e, n_j, grid)).transpose()?;
    let reference_eta = REFERENCE_CROSSOVERS
        .iter()
        .find(|(name, _)| *name == scenario.name)
        .map(|&(_, eta)| eta);
    Ok(CrossoverReport {
        scenario: scenario.name.clone(),
        implemented_toll: toll,
        eta,
        row,
        reference_eta,
    })
}

impl fmt::Display for CrossoverReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario {}: implemented toll ${:.2} (informational)", self.scenario, self.implemented_toll)?;
        let (Some(eta), Some(row)) = (self.eta, self.row) else {
            return writeln!(
                f,
                "no crossover on eta in [{}, {}]: the revenue-optimal static toll never meets the implemented toll",
                ETA_BRACKET.0, ETA_BRACKET.1
            );
        };
        writeln!(f, "crossover eta = {eta:.4}")?;
        writeln!(
            f,
            "at crossover: static-RO revenue ratio {:.5}, static-RO system cost ratio {:.5}, regime {}",
            row.rev_ratio_static_ro, row.sc_ratio_static_ro, row.regime
        )?;
        if let (Some(reference), Some(gap)) = (self.reference_eta, self.discrepancy()) {
            writeln!(
                f,
                "reference crossover eta approximately {reference}; computed value differs by {gap:+.3}"
            )?;
        }
        Ok(())
    }
}
