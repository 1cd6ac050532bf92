use crate::regime::Regime;

/// Mode split and queue geometry of an equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumOutcome {
    pub n_early: f64,
    pub n_late: f64,
    pub n_ontime_car: f64,
    pub n_transit: f64,
    /// Peak queuing wait w̄, hours.
    pub peak_wait: f64,
    /// [t_A, t_B, t_C, t_D] on the rush clock, hours.
    pub interval: [f64; 4],
    pub regime: Regime,
}

impl EquilibriumOutcome {
    /// Car users of every timing class.
    pub fn n_car(&self) -> f64 {
        self.n_early + self.n_late + self.n_ontime_car
    }

    /// All users.
    pub fn total(&self) -> f64 {
        self.n_car() + self.n_transit
    }
}

/// System cost components in user-hours. Revenue is reported but excluded
/// from the total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown {
    pub transit: f64,
    pub car_freeflow: f64,
    pub queuing: f64,
    pub schedule: f64,
    pub total: f64,
    pub revenue: f64,
}

impl CostBreakdown {
    /// Assembles a breakdown; `total` is the sum of the four cost components.
    ///
    /// ```
    /// use tollkit_model::CostBreakdown;
    /// let c = CostBreakdown::new(1.0, 2.0, 3.0, 4.0, 100.0);
    /// assert_eq!(c.total, 10.0);
    /// ```
    pub fn new(transit: f64, car_freeflow: f64, queuing: f64, schedule: f64, revenue: f64) -> Self {
        Self {
            transit,
            car_freeflow,
            queuing,
            schedule,
            total: transit + car_freeflow + queuing + schedule,
            revenue,
        }
    }
}
