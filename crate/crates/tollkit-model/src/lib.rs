//! Domain types shared by the congestion-pricing crates.
//!
//! All costs are normalized by the value of waiting time and expressed in
//! hours. The rush clock starts at t_1 = 0 and ends at t_2 = Λ/λ.

mod error;
mod mfd;
mod outcome;
mod params;
mod policy;
mod regime;

pub use error::{ModelError, Result};
pub use mfd::TriangularMfd;
pub use outcome::{CostBreakdown, EquilibriumOutcome};
pub use params::{rush_window, BottleneckParams};
pub use policy::{TollPolicy, Trapezoid};
pub use regime::{classify_regime, Regime, RegimeThresholds};
