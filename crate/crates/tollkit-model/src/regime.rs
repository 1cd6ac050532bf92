use std::fmt;

use crate::params::BottleneckParams;

/// Equilibrium regime selected by the cost gap δ = z_T − z_C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    /// Transit strictly cheaper than free-flow driving.
    AllTransit,
    /// Capacity at least the desired arrival rate; no queue can form.
    Uncongested,
    /// δ below the low threshold.
    MixedLow,
    /// δ between the two thresholds.
    MixedMid,
    /// δ above the high threshold.
    MixedHigh,
}

impl Regime {
    /// Stable snake-case tag used in reports and CSV output.
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::AllTransit => "all_transit",
            Regime::Uncongested => "uncongested",
            Regime::MixedLow => "mixed_low",
            Regime::MixedMid => "mixed_mid",
            Regime::MixedHigh => "mixed_high",
        }
    }

    /// True for the three mixed-mode regimes.
    pub fn is_mixed(&self) -> bool {
        matches!(self, Regime::MixedLow | Regime::MixedMid | Regime::MixedHigh)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Cutpoints on δ separating the mixed regimes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeThresholds {
    /// ΛeL/((λ−μ)(e+L)).
    pub low: f64,
    /// (ΛeL/(e+L))(1/(λ−μ) + 2/μ).
    pub high: f64,
}

impl RegimeThresholds {
    /// Thresholds for congestible parameters; `None` when μ ≥ λ.
    pub fn of(params: &BottleneckParams) -> Option<Self> {
        if !params.is_congestible() {
            return None;
        }
        let scale = params.total_demand() * params.harmonic_penalty();
        let gap = params.arrival_rate() - params.capacity();
        Some(Self {
            low: scale / gap,
            high: scale * (1.0 / gap + 2.0 / params.capacity()),
        })
    }
}

/// Classifies a parameter set into exactly one regime.
///
/// Ties at a threshold resolve to the lower regime.
///
/// ```
/// use tollkit_model::{classify_regime, BottleneckParams, Regime};
/// let p = BottleneckParams::new(10.0, 1.0, 2.0, 0.5, 1.0, 0.5, 1.0).unwrap();
/// assert_eq!(classify_regime(&p), Regime::Uncongested);
/// let p = p.with_mode_costs(0.5, 0.4).unwrap();
/// assert_eq!(classify_regime(&p), Regime::AllTransit);
/// ```
pub fn classify_regime(params: &BottleneckParams) -> Regime {
    let delta = params.cost_gap();
    if delta < 0.0 {
        return Regime::AllTransit;
    }
    match RegimeThresholds::of(params) {
        None => Regime::Uncongested,
        Some(t) if delta <= t.low => Regime::MixedLow,
        Some(t) if delta <= t.high => Regime::MixedMid,
        Some(_) => Regime::MixedHigh,
    }
}
