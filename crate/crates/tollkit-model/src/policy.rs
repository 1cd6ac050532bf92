use crate::error::{check, Result};

/// Trapezoidal time-varying toll on the rush clock.
///
/// The toll rises with slope e on [t_A, t_B], stays at `peak` on [t_B, t_C]
/// and falls with slope −L on [t_C, t_D].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    pub peak: f64,
    pub t_a: f64,
    pub t_b: f64,
    pub t_c: f64,
    pub t_d: f64,
    pub rise_slope: f64,
    pub fall_slope: f64,
}

impl Trapezoid {
    /// Builds a trapezoid, checking breakpoint order and nonnegative slopes.
    pub fn new(
        peak: f64,
        [t_a, t_b, t_c, t_d]: [f64; 4],
        rise_slope: f64,
        fall_slope: f64,
    ) -> Result<Self> {
        check("peak", peak, peak >= 0.0, "must be nonnegative")?;
        check("t_b", t_b, t_a <= t_b, "must not precede t_a")?;
        check("t_c", t_c, t_b <= t_c, "must not precede t_b")?;
        check("t_d", t_d, t_c <= t_d, "must not precede t_c")?;
        check("rise_slope", rise_slope, rise_slope >= 0.0, "must be nonnegative")?;
        check("fall_slope", fall_slope, fall_slope >= 0.0, "must be nonnegative")?;
        Ok(Self {
            peak,
            t_a,
            t_b,
            t_c,
            t_d,
            rise_slope,
            fall_slope,
        })
    }

    /// Toll at clock time `t`; zero outside [t_A, t_D].
    pub fn toll_at(&self, t: f64) -> f64 {
        let raw = if t < self.t_a || t > self.t_d {
            return 0.0;
        } else if t < self.t_b {
            self.peak - self.rise_slope * (self.t_b - t)
        } else if t <= self.t_c {
            self.peak
        } else {
            self.peak - self.fall_slope * (t - self.t_c)
        };
        raw.max(0.0)
    }

    /// Toll charged at t_A.
    pub fn start_level(&self) -> f64 {
        (self.peak - self.rise_slope * (self.t_b - self.t_a)).max(0.0)
    }

    /// Toll charged at t_D.
    pub fn end_level(&self) -> f64 {
        (self.peak - self.fall_slope * (self.t_d - self.t_c)).max(0.0)
    }
}

/// A tolling policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TollPolicy {
    /// Time-invariant toll level in hours.
    Static { level: f64 },
    /// Trapezoidal time-varying toll.
    TrapezoidDynamic(Trapezoid),
}

impl TollPolicy {
    /// Static policy with a nonnegative level.
    pub fn fixed(level: f64) -> Result<Self> {
        check("level", level, level >= 0.0, "must be nonnegative")?;
        Ok(Self::Static { level })
    }

    /// Toll at clock time `t`.
    ///
    /// ```
    /// use tollkit_model::{TollPolicy, Trapezoid};
    /// let trap = Trapezoid::new(2.0, [0.0, 1.0, 3.0, 3.5], 0.5, 2.0).unwrap();
    /// let policy = TollPolicy::TrapezoidDynamic(trap);
    /// assert_eq!(policy.toll_at(0.0), 1.5);
    /// assert_eq!(policy.toll_at(2.0), 2.0);
    /// assert_eq!(policy.toll_at(3.5), 1.0);
    /// ```
    pub fn toll_at(&self, t: f64) -> f64 {
        match self {
            TollPolicy::Static { level } => *level,
            TollPolicy::TrapezoidDynamic(trap) => trap.toll_at(t),
        }
    }

    /// Highest toll charged.
    pub fn peak(&self) -> f64 {
        match self {
            TollPolicy::Static { level } => *level,
            TollPolicy::TrapezoidDynamic(trap) => trap.peak,
        }
    }
}
