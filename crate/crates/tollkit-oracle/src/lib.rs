//! Independent brute-force verification of the closed forms in `tollkit`.
//!
//! The oracle builds each equilibrium by counting crossings on a time grid and
//! integrates revenue and costs numerically. It depends only on the domain
//! types crate, never on the closed-form crates it checks.

pub mod quadrature;
pub mod service;
mod simulate;
mod trace;

use thiserror::Error;

pub use simulate::{
    grid_search_dynamic_fraction, grid_search_static, integrate_mfd_revenue,
    mfd_printed_integrals, simulate_dynamic_bottleneck, simulate_static_bottleneck,
    simulate_static_mfd, MfdPrintedIntegrals, MfdSimulation, Simulation, DEFAULT_STEP,
};
pub use trace::{EquilibriumTrace, TraceCheck};

/// Errors raised by oracle runs.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("time step {step} h is not positive")]
    NonPositiveStep { step: f64 },
    #[error("time step {step} h exceeds rush/100 = {limit} h; verification would be meaningless")]
    StepTooCoarse { step: f64, limit: f64 },
    #[error("oracle requires {0}")]
    Precondition(&'static str),
    #[error("toll {tau} h leaves no on-time segment in the network equilibrium")]
    BelowNetworkDomain { tau: f64 },
    #[error("trace output failed: {0}")]
    Csv(#[from] csv::Error),
}
