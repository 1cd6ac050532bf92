use crate::error::{check, Result};

/// Triangular macroscopic fundamental diagram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangularMfd {
    max_throughput: f64,
    jam_accumulation: f64,
    free_flow_speed: f64,
    trip_distance: f64,
}

impl TriangularMfd {
    /// Builds a validated diagram; requires 0 < n_c < n_j.
    ///
    /// ```
    /// use tollkit_model::TriangularMfd;
    /// let mfd = TriangularMfd::new(45_000.0, 140_000.0, 40.0, 6.0).unwrap();
    /// assert_eq!(mfd.critical_accumulation(), 6_750.0);
    /// assert_eq!(mfd.freeflow_time(), 0.15);
    /// ```
    pub fn new(
        max_throughput: f64,
        jam_accumulation: f64,
        free_flow_speed: f64,
        trip_distance: f64,
    ) -> Result<Self> {
        check("max_throughput", max_throughput, max_throughput > 0.0, "must be positive")?;
        check("free_flow_speed", free_flow_speed, free_flow_speed > 0.0, "must be positive")?;
        check("trip_distance", trip_distance, trip_distance > 0.0, "must be positive")?;
        let n_c = max_throughput * trip_distance / free_flow_speed;
        check(
            "jam_accumulation",
            jam_accumulation,
            jam_accumulation > n_c,
            "must exceed the critical accumulation",
        )?;
        Ok(Self {
            max_throughput,
            jam_accumulation,
            free_flow_speed,
            trip_distance,
        })
    }

    /// Same diagram with another jam accumulation.
    pub fn with_jam_accumulation(&self, jam_accumulation: f64) -> Result<Self> {
        Self::new(
            self.max_throughput,
            jam_accumulation,
            self.free_flow_speed,
            self.trip_distance,
        )
    }

    /// μ_f, vehicles per hour.
    pub fn max_throughput(&self) -> f64 {
        self.max_throughput
    }
    /// n_j, vehicles.
    pub fn jam_accumulation(&self) -> f64 {
        self.jam_accumulation
    }
    /// v_f, km per hour.
    pub fn free_flow_speed(&self) -> f64 {
        self.free_flow_speed
    }
    /// D, km.
    pub fn trip_distance(&self) -> f64 {
        self.trip_distance
    }
    /// n_c = μ_f D / v_f, vehicles.
    pub fn critical_accumulation(&self) -> f64 {
        self.max_throughput * self.trip_distance / self.free_flow_speed
    }
    /// D / v_f, hours.
    pub fn freeflow_time(&self) -> f64 {
        self.trip_distance / self.free_flow_speed
    }
}
