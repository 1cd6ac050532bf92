//! Service rates of the two supply models, evaluated without closed forms.

use tollkit_model::TriangularMfd;

/// Rate at which cars finish their trips as a function of the queuing wait.
pub trait Service {
    /// Vehicles per hour at wait `w` hours.
    fn rate(&self, w: f64) -> f64;
    /// Vehicles in the system at wait `w`, when meaningful.
    fn accumulation(&self, _w: f64) -> Option<f64> {
        None
    }
}

/// Point bottleneck: constant capacity regardless of the queue.
pub struct PointQueue(pub f64);

impl Service for PointQueue {
    fn rate(&self, _w: f64) -> f64 {
        self.0
    }
}

/// Urban network whose wait is the excess of Little's-law travel time
/// n/μ(n) over the free-flow time, with μ on the congested branch.
pub struct Network(pub TriangularMfd);

impl Network {
    fn branch_rate(&self, n: f64) -> f64 {
        let mfd = &self.0;
        let n_c = mfd.critical_accumulation();
        let n_j = mfd.jam_accumulation();
        mfd.max_throughput() * (n_j - n) / (n_j - n_c)
    }

    fn solve(&self, w: f64) -> (f64, f64) {
        let mfd = &self.0;
        let n_c = mfd.critical_accumulation();
        let n_j = mfd.jam_accumulation();
        let free = n_c / mfd.max_throughput();
        if w <= 0.0 {
            return (mfd.max_throughput(), n_c);
        }
        let (mut lo, mut hi) = (n_c, n_j);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if mid / self.branch_rate(mid) - free < w {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let n = 0.5 * (lo + hi);
        (self.branch_rate(n), n)
    }
}

impl Service for Network {
    fn rate(&self, w: f64) -> f64 {
        self.solve(w).0
    }

    fn accumulation(&self, w: f64) -> Option<f64> {
        Some(self.solve(w).1)
    }
}
