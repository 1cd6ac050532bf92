//! Time-grid traces of an equilibrium and their invariants.

use std::io::Write;

use crate::OracleError;

/// Sampled equilibrium on a time grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EquilibriumTrace {
    /// Grid nodes, hours on the rush clock.
    pub time: Vec<f64>,
    /// Queuing wait of a car crossing at each node, hours.
    pub wait: Vec<f64>,
    /// Toll charged at each node, hours.
    pub toll: Vec<f64>,
    /// Crossing rate, vehicles per hour.
    pub throughput: Vec<f64>,
    /// Cars that have joined the queue, users.
    pub cum_arrivals: Vec<f64>,
    /// Cars that have crossed, users.
    pub cum_departures: Vec<f64>,
    /// Vehicles inside the network, when the supply is a network.
    pub accumulation: Option<Vec<f64>>,
}

/// Tolerances for [`EquilibriumTrace::violations`].
#[derive(Debug, Clone, Copy)]
pub struct TraceCheck {
    pub early_penalty: f64,
    pub late_penalty: f64,
    /// z_T − z_C, hours.
    pub cost_gap: f64,
    /// Cars expected to cross in total.
    pub expected_departures: f64,
    pub tolerance: f64,
}

impl EquilibriumTrace {
    /// Writes the trace as CSV with columns
    /// t, wait, toll, throughput, cum_arrivals, cum_departures.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), OracleError> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record([
            "t",
            "wait",
            "toll",
            "throughput",
            "cum_arrivals",
            "cum_departures",
        ])?;
        for i in 0..self.time.len() {
            writer.write_record(
                [
                    self.time[i],
                    self.wait[i],
                    self.toll[i],
                    self.throughput[i],
                    self.cum_arrivals[i],
                    self.cum_departures[i],
                ]
                .iter()
                .map(|v| format!("{v:.8}")),
            )?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Lists every violated trace invariant; empty when the trace is sound.
    pub fn violations(&self, check: &TraceCheck) -> Vec<String> {
        let tol = check.tolerance;
        let mut out = Vec::new();
        for i in 0..self.time.len() {
            if self.wait[i] < -tol {
                out.push(format!("negative wait {} at t={}", self.wait[i], self.time[i]));
            }
            if self.wait[i] + self.toll[i] > check.cost_gap + tol {
                out.push(format!(
                    "wait plus toll {} exceeds cost gap {} at t={}",
                    self.wait[i] + self.toll[i],
                    check.cost_gap,
                    self.time[i]
                ));
            }
            if self.cum_departures[i] > self.cum_arrivals[i] + tol * (1.0 + self.cum_arrivals[i]) {
                out.push(format!("departures exceed arrivals at t={}", self.time[i]));
            }
        }
        for i in 1..self.time.len() {
            let dt = self.time[i] - self.time[i - 1];
            if dt <= 1e-9 * (1.0 + self.time[i].abs()) {
                continue;
            }
            let slope = (self.wait[i] - self.wait[i - 1]) / dt;
            let allowed = [check.early_penalty, -check.late_penalty, 0.0];
            if !allowed.iter().any(|s| (slope - s).abs() <= 1e-6 * (1.0 + s.abs())) {
                out.push(format!("wait slope {slope} at t={}", self.time[i]));
            }
        }
        if let Some(last) = self.cum_departures.last() {
            let want = check.expected_departures;
            if (last - want).abs() > tol * (1.0 + want) {
                out.push(format!("total departures {last} differ from {want}"));
            }
        }
        out
    }
}
