//! Revenue and system-cost analysis of congestion tolls when commuters can
//! switch to public transit.
//!
//! All quantities are normalized by the value of waiting time: costs and
//! tolls are in hours, revenues and system costs in user-hours.

pub mod bottleneck;
pub mod calibration;
pub mod mfd;
pub mod search;

pub use tollkit_model as model;
