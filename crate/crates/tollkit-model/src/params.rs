use crate::error::{check, Result};

/// Normalized parameters of the bottleneck model with a transit outside option.
///
/// Costs are in hours of waiting time. Schedule penalties are ratios to the
/// value of waiting time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BottleneckParams {
    total_demand: f64,
    arrival_rate: f64,
    capacity: f64,
    early_penalty: f64,
    late_penalty: f64,
    car_cost: f64,
    transit_cost: f64,
}

impl BottleneckParams {
    /// Builds a validated parameter set.
    ///
    /// ```
    /// use tollkit_model::BottleneckParams;
    /// let p = BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 0.61, 2.4, 1.7, 1.8).unwrap();
    /// assert_eq!(p.rush_length(), 5.0);
    /// assert!(BottleneckParams::new(70_000.0, 14_000.0, 9_600.0, 1.2, 2.4, 1.7, 1.8).is_err());
    /// ```
    pub fn new(
        total_demand: f64,
        arrival_rate: f64,
        capacity: f64,
        early_penalty: f64,
        late_penalty: f64,
        car_cost: f64,
        transit_cost: f64,
    ) -> Result<Self> {
        check("total_demand", total_demand, total_demand > 0.0, "must be positive")?;
        check("arrival_rate", arrival_rate, arrival_rate > 0.0, "must be positive")?;
        check("capacity", capacity, capacity > 0.0, "must be positive")?;
        check(
            "early_penalty",
            early_penalty,
            early_penalty > 0.0 && early_penalty < 1.0,
            "must lie in (0, 1)",
        )?;
        check("late_penalty", late_penalty, late_penalty > 0.0, "must be positive")?;
        check("car_cost", car_cost, car_cost >= 0.0, "must be nonnegative")?;
        check("transit_cost", transit_cost, transit_cost >= 0.0, "must be nonnegative")?;
        Ok(Self {
            total_demand,
            arrival_rate,
            capacity,
            early_penalty,
            late_penalty,
            car_cost,
            transit_cost,
        })
    }

    /// Same parameters with a different capacity.
    pub fn with_capacity(&self, capacity: f64) -> Result<Self> {
        Self::new(
            self.total_demand,
            self.arrival_rate,
            capacity,
            self.early_penalty,
            self.late_penalty,
            self.car_cost,
            self.transit_cost,
        )
    }

    /// Same parameters with different mode costs.
    pub fn with_mode_costs(&self, car_cost: f64, transit_cost: f64) -> Result<Self> {
        Self::new(
            self.total_demand,
            self.arrival_rate,
            self.capacity,
            self.early_penalty,
            self.late_penalty,
            car_cost,
            transit_cost,
        )
    }

    /// Λ, users.
    pub fn total_demand(&self) -> f64 {
        self.total_demand
    }
    /// λ, users per hour.
    pub fn arrival_rate(&self) -> f64 {
        self.arrival_rate
    }
    /// μ, vehicles per hour.
    pub fn capacity(&self) -> f64 {
        self.capacity
    }
    /// e, earliness penalty per hour early.
    pub fn early_penalty(&self) -> f64 {
        self.early_penalty
    }
    /// L, lateness penalty per hour late.
    pub fn late_penalty(&self) -> f64 {
        self.late_penalty
    }
    /// z_C, hours.
    pub fn car_cost(&self) -> f64 {
        self.car_cost
    }
    /// z_T, hours.
    pub fn transit_cost(&self) -> f64 {
        self.transit_cost
    }
    /// δ = z_T − z_C, hours. Negative when transit is cheaper.
    pub fn cost_gap(&self) -> f64 {
        self.transit_cost - self.car_cost
    }
    /// μ/λ.
    pub fn capacity_ratio(&self) -> f64 {
        self.capacity / self.arrival_rate
    }
    /// Λ/λ, hours.
    pub fn rush_length(&self) -> f64 {
        self.total_demand / self.arrival_rate
    }
    /// eL/(e+L).
    pub fn harmonic_penalty(&self) -> f64 {
        self.early_penalty * self.late_penalty / (self.early_penalty + self.late_penalty)
    }
    /// True when capacity is below the desired arrival rate.
    pub fn is_congestible(&self) -> bool {
        self.capacity < self.arrival_rate
    }
}

/// Desired crossing window (t_1, t_2) on the rush clock, t_1 = 0.
///
/// ```
/// use tollkit_model::{rush_window, BottleneckParams};
/// let p = BottleneckParams::new(900_000.0, 180_000.0, 45_000.0, 0.61, 2.4, 0.9, 1.0).unwrap();
/// assert_eq!(rush_window(&p), (0.0, 5.0));
/// ```
pub fn rush_window(params: &BottleneckParams) -> (f64, f64) {
    (0.0, params.rush_length())
}
