//! Scenario ingestion: dollar and minute inputs converted into normalized
//! model parameters, plus the two built-in case studies.
//!
//! Scenario files are line oriented. Each non-blank, non-comment line reads
//! `section.key = value unit`, where `value` may be a comma-separated list for
//! list-valued keys. Units are mandatory.
//!
//! ```
//! use tollkit::calibration::{builtin_scenario, parse_scenario};
//! let bay = builtin_scenario("bay_bridge").unwrap();
//! let text = bay.to_string();
//! assert_eq!(parse_scenario(&text).unwrap(), bay);
//! ```

use std::fmt;
use std::path::Path;

use thiserror::Error;
use tollkit_model::{BottleneckParams, ModelError, TriangularMfd};

/// Errors raised while building or parsing a scenario.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("`{key}`: missing unit (expected one of {expected})")]
    MissingUnit { key: String, expected: String },
    #[error("`{key}`: unit `{unit}` not accepted (expected one of {expected})")]
    BadUnit {
        key: String,
        unit: String,
        expected: String,
    },
    #[error("`{key}`: cannot parse `{text}` as a number")]
    BadNumber { key: String, text: String },
    #[error("missing required key `{key}`")]
    Missing { key: String },
    #[error("`{key}`: {source}")]
    Invalid {
        key: String,
        #[source]
        source: ModelError,
    },
    #[error("{0}")]
    Conflict(String),
    #[error("unknown builtin scenario `{0}` (known: bay_bridge, nyc)")]
    UnknownBuiltin(String),
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Generalized transit cost inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitCostSpec {
    /// Dollars.
    pub fare: f64,
    /// Hours.
    pub walk_time: f64,
    /// Hours.
    pub wait_time: f64,
    /// Hours.
    pub in_vehicle_time: f64,
    /// η, multiplier on the time components.
    pub discomfort: f64,
}

impl TransitCostSpec {
    /// Same spec at another discomfort multiplier.
    pub fn at_discomfort(&self, eta: f64) -> Self {
        Self {
            discomfort: eta,
            ..*self
        }
    }

    /// Total time component, hours.
    pub fn time_components(&self) -> f64 {
        self.walk_time + self.wait_time + self.in_vehicle_time
    }

    /// True when η < 1, which is accepted but unusual.
    pub fn discomfort_below_one(&self) -> bool {
        self.discomfort < 1.0
    }
}

/// Free-flow car cost inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarCostSpec {
    /// Dollars.
    pub parking_fee: f64,
    /// Hours.
    pub freeflow_travel_time: f64,
}

/// One origin–destination row of a free-flow calibration table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdRow {
    /// Miles.
    pub distance: f64,
    /// Percent of trips.
    pub share: f64,
}

fn positive_wage(c_w: f64) -> Result<(), ModelError> {
    if c_w > 0.0 && c_w.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParam {
            name: "value_of_time",
            value: c_w,
            reason: "must be positive",
        })
    }
}

fn nonnegative(name: &'static str, value: f64) -> Result<(), ModelError> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ModelError::InvalidParam {
            name,
            value,
            reason: "must be nonnegative",
        })
    }
}

/// z_T = fare/c_W + η·(walk + wait + in-vehicle), hours.
///
/// ```
/// use tollkit::calibration::{transit_cost, TransitCostSpec};
/// let spec = TransitCostSpec { fare: 3.0, walk_time: 20.0 / 60.0, wait_time: 2.5 / 60.0,
///     in_vehicle_time: 12.0 / 60.0, discomfort: 18.0 };
/// assert!((transit_cost(&spec, 40.0).unwrap() - 10.425).abs() < 1e-12);
/// ```
pub fn transit_cost(spec: &TransitCostSpec, c_w: f64) -> Result<f64, ModelError> {
    positive_wage(c_w)?;
    nonnegative("fare", spec.fare)?;
    nonnegative("walk_time", spec.walk_time)?;
    nonnegative("wait_time", spec.wait_time)?;
    nonnegative("in_vehicle_time", spec.in_vehicle_time)?;
    nonnegative("discomfort", spec.discomfort)?;
    Ok(spec.fare / c_w + spec.discomfort * spec.time_components())
}

/// z_C = parking/c_W + free-flow travel time, hours.
pub fn car_cost(spec: &CarCostSpec, c_w: f64) -> Result<f64, ModelError> {
    positive_wage(c_w)?;
    nonnegative("parking_fee", spec.parking_fee)?;
    nonnegative("freeflow_travel_time", spec.freeflow_travel_time)?;
    Ok(spec.parking_fee / c_w + spec.freeflow_travel_time)
}

/// Share-weighted free-flow travel time, hours, normalized over the listed
/// shares.
///
/// ```
/// use tollkit::calibration::{weighted_freeflow_time, OdRow};
/// let t = weighted_freeflow_time(&[OdRow { distance: 25.0, share: 10.0 }], 50.0).unwrap();
/// assert_eq!(t, 0.5);
/// ```
pub fn weighted_freeflow_time(rows: &[OdRow], speed: f64) -> Result<f64, ModelError> {
    if rows.is_empty() {
        return Err(ModelError::InvalidParam {
            name: "od_rows",
            value: 0.0,
            reason: "at least one row required",
        });
    }
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(ModelError::InvalidParam {
            name: "speed",
            value: speed,
            reason: "must be positive",
        });
    }
    let mut weighted = 0.0;
    let mut total = 0.0;
    for row in rows {
        if !(row.share > 0.0 && row.share.is_finite()) {
            return Err(ModelError::InvalidParam {
                name: "share",
                value: row.share,
                reason: "must be positive",
            });
        }
        nonnegative("distance", row.distance)?;
        weighted += row.share * row.distance / speed;
        total += row.share;
    }
    Ok(weighted / total)
}

/// Westbound morning origin–destination rows into San Francisco.
pub const BAY_AREA_OD_ROWS: [OdRow; 6] = [
    OdRow { distance: 12.6, share: 29.8 },
    OdRow { distance: 17.9, share: 12.4 },
    OdRow { distance: 13.8, share: 12.4 },
    OdRow { distance: 27.2, share: 8.6 },
    OdRow { distance: 25.3, share: 5.0 },
    OdRow { distance: 31.1, share: 4.8 },
];

/// Free-flow speed used with [`BAY_AREA_OD_ROWS`], miles per hour.
pub const BAY_AREA_FREEFLOW_SPEED_MPH: f64 = 50.0;

/// Free-flow times of [`BAY_AREA_OD_ROWS`] as tabulated, hours, rounded to
/// three decimals.
pub const BAY_AREA_TABULATED_TIMES: [f64; 6] = [0.252, 0.359, 0.276, 0.544, 0.506, 0.622];

/// Share-weighted mean of the tabulated Bay Area free-flow times, hours.
///
/// ```
/// use tollkit::calibration::bay_area_tabulated_freeflow_time;
/// assert!((bay_area_tabulated_freeflow_time() - 0.3503780822).abs() < 1e-10);
/// ```
pub fn bay_area_tabulated_freeflow_time() -> f64 {
    let shares = BAY_AREA_OD_ROWS.iter().map(|r| r.share);
    let weighted: f64 = shares
        .clone()
        .zip(BAY_AREA_TABULATED_TIMES)
        .map(|(s, t)| s * t)
        .sum();
    weighted / shares.sum::<f64>()
}

/// Road supply of a scenario.
#[derive(Debug, Clone, PartialEq)]
pub enum Supply {
    /// Point bottleneck with capacity μ, vehicles per hour.
    Bottleneck { capacity: f64 },
    /// Urban network with a triangular diagram and a jam-accumulation sweep.
    Mfd {
        mfd: TriangularMfd,
        jam_sweep: Vec<f64>,
    },
}

/// A calibrated case study.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    /// c_W, dollars per hour.
    pub value_of_time: f64,
    /// Λ, users.
    pub total_demand: f64,
    /// λ, users per hour.
    pub arrival_rate: f64,
    pub early_penalty: f64,
    pub late_penalty: f64,
    pub supply: Supply,
    pub transit: TransitCostSpec,
    pub car: CarCostSpec,
    pub eta_sweep: Vec<f64>,
    /// Dollars.
    pub implemented_toll: Option<f64>,
}

impl Scenario {
    /// Checks every invariant by building the parameters at each sweep point.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.eta_sweep.is_empty() {
            return Err(ScenarioError::Missing {
                key: "sweep.eta".into(),
            });
        }
        if let Supply::Mfd { jam_sweep, mfd } = &self.supply {
            for &n_j in jam_sweep {
                mfd.with_jam_accumulation(n_j)
                    .map_err(|source| ScenarioError::Invalid {
                        key: "mfd.jam_sweep".into(),
                        source,
                    })?;
            }
        }
        if let Some(toll) = self.implemented_toll {
            nonnegative("implemented_toll", toll).map_err(|source| ScenarioError::Invalid {
                key: "policy.implemented_toll".into(),
                source,
            })?;
        }
        self.params()?;
        for &eta in &self.eta_sweep {
            self.params_at(eta)?;
        }
        Ok(())
    }

    /// Capacity seen by the bottleneck formulas: μ, or μ_f for networks.
    pub fn capacity(&self) -> f64 {
        match &self.supply {
            Supply::Bottleneck { capacity } => *capacity,
            Supply::Mfd { mfd, .. } => mfd.max_throughput(),
        }
    }

    /// The network diagram, if any.
    pub fn mfd(&self) -> Option<TriangularMfd> {
        match &self.supply {
            Supply::Bottleneck { .. } => None,
            Supply::Mfd { mfd, .. } => Some(*mfd),
        }
    }

    /// Jam accumulations to sweep; empty for bottleneck scenarios.
    pub fn jam_sweep(&self) -> &[f64] {
        match &self.supply {
            Supply::Bottleneck { .. } => &[],
            Supply::Mfd { jam_sweep, .. } => jam_sweep,
        }
    }

    /// Same scenario with the network jam accumulation replaced.
    pub fn with_jam_accumulation(&self, n_j: f64) -> Result<Self, ScenarioError> {
        let mut next = self.clone();
        if let Supply::Mfd { mfd, .. } = &mut next.supply {
            *mfd = mfd
                .with_jam_accumulation(n_j)
                .map_err(|source| ScenarioError::Invalid {
                    key: "mfd.jam_accumulation".into(),
                    source,
                })?;
            Ok(next)
        } else {
            Err(ScenarioError::Conflict(format!(
                "scenario `{}` has no network diagram",
                self.name
            )))
        }
    }

    /// Normalized parameters at the scenario's own discomfort multiplier.
    pub fn params(&self) -> Result<BottleneckParams, ScenarioError> {
        self.params_at(self.transit.discomfort)
    }

    /// Normalized parameters at discomfort multiplier η.
    pub fn params_at(&self, eta: f64) -> Result<BottleneckParams, ScenarioError> {
        let invalid = |key: &str| {
            let key = key.to_string();
            move |source| ScenarioError::Invalid { key, source }
        };
        let z_t = transit_cost(&self.transit.at_discomfort(eta), self.value_of_time)
            .map_err(invalid("transit"))?;
        let z_c = car_cost(&self.car, self.value_of_time).map_err(invalid("car"))?;
        BottleneckParams::new(
            self.total_demand,
            self.arrival_rate,
            self.capacity(),
            self.early_penalty,
            self.late_penalty,
            z_c,
            z_t,
        )
        .map_err(invalid("params"))
    }
}

/// Uniform grid of `n` points on [lo, hi].
pub fn eta_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// A built-in scenario by name: `bay_bridge` or `nyc`.
///
/// ```
/// use tollkit::calibration::builtin_scenario;
/// assert_eq!(builtin_scenario("bay_bridge").unwrap().capacity(), 9_600.0);
/// assert_eq!(builtin_scenario("nyc").unwrap().mfd().unwrap().trip_distance(), 6.0);
/// ```
pub fn builtin_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    match name {
        "bay_bridge" => Ok(bay_bridge()),
        "nyc" => Ok(nyc()),
        other => Err(ScenarioError::UnknownBuiltin(other.to_string())),
    }
}

fn bay_bridge() -> Scenario {
    let fftt = bay_area_tabulated_freeflow_time();
    Scenario {
        name: "bay_bridge".into(),
        value_of_time: 22.0,
        total_demand: 70_000.0,
        arrival_rate: 14_000.0,
        early_penalty: 0.61,
        late_penalty: 2.4,
        supply: Supply::Bottleneck { capacity: 9_600.0 },
        transit: TransitCostSpec {
            fare: 6.14,
            walk_time: 20.0 / 60.0,
            wait_time: 10.0 / 60.0,
            in_vehicle_time: 32.0 / 60.0,
            discomfort: 1.5,
        },
        car: CarCostSpec {
            parking_fee: 30.0,
            freeflow_travel_time: fftt,
        },
        eta_sweep: eta_grid(1.5, 30.0, 100),
        implemented_toll: Some(8.5),
    }
}

fn nyc() -> Scenario {
    let mfd = TriangularMfd::new(45_000.0, 140_000.0, 40.0, 6.0).expect("table values are valid");
    Scenario {
        name: "nyc".into(),
        value_of_time: 40.0,
        total_demand: 900_000.0,
        arrival_rate: 180_000.0,
        early_penalty: 0.61,
        late_penalty: 2.4,
        supply: Supply::Mfd {
            mfd,
            jam_sweep: vec![14_000.0, 42_000.0, 70_000.0, 140_000.0],
        },
        transit: TransitCostSpec {
            fare: 3.0,
            walk_time: 20.0 / 60.0,
            wait_time: 2.5 / 60.0,
            in_vehicle_time: 12.0 / 60.0,
            discomfort: 1.5,
        },
        car: CarCostSpec {
            parking_fee: 30.0,
            freeflow_travel_time: mfd.freeflow_time(),
        },
        eta_sweep: eta_grid(1.5, 18.0, 18),
        implemented_toll: Some(9.0),
    }
}

/// Reads and parses a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

#[derive(Clone, Copy)]
enum Kind {
    Text,
    Number,
    List,
}

struct KeySpec {
    key: &'static str,
    kind: Kind,
    /// Accepted units and their factor to the canonical unit.
    units: &'static [(&'static str, f64)],
}

const USD: &[(&str, f64)] = &[("usd", 1.0)];
const HOURS: &[(&str, f64)] = &[("h", 1.0), ("min", 1.0 / 60.0)];
const RATIO: &[(&str, f64)] = &[("ratio", 1.0)];
const KM: &[(&str, f64)] = &[("km", 1.0), ("mi", 1.609_344)];
const KMH: &[(&str, f64)] = &[("km/h", 1.0), ("mph", 1.609_344)];

const KEYS: &[KeySpec] = &[
    KeySpec { key: "scenario.name", kind: Kind::Text, units: &[] },
    KeySpec { key: "scenario.value_of_time", kind: Kind::Number, units: &[("usd/h", 1.0)] },
    KeySpec { key: "demand.total", kind: Kind::Number, units: &[("users", 1.0)] },
    KeySpec { key: "demand.arrival_rate", kind: Kind::Number, units: &[("users/h", 1.0)] },
    KeySpec { key: "supply.capacity", kind: Kind::Number, units: &[("veh/h", 1.0)] },
    KeySpec { key: "mfd.max_throughput", kind: Kind::Number, units: &[("veh/h", 1.0)] },
    KeySpec { key: "mfd.jam_accumulation", kind: Kind::Number, units: &[("veh", 1.0)] },
    KeySpec { key: "mfd.jam_sweep", kind: Kind::List, units: &[("veh", 1.0)] },
    KeySpec { key: "mfd.free_flow_speed", kind: Kind::Number, units: KMH },
    KeySpec { key: "mfd.trip_distance", kind: Kind::Number, units: KM },
    KeySpec { key: "schedule.early", kind: Kind::Number, units: RATIO },
    KeySpec { key: "schedule.late", kind: Kind::Number, units: RATIO },
    KeySpec { key: "transit.fare", kind: Kind::Number, units: USD },
    KeySpec { key: "transit.walk_time", kind: Kind::Number, units: HOURS },
    KeySpec { key: "transit.wait_time", kind: Kind::Number, units: HOURS },
    KeySpec { key: "transit.in_vehicle_time", kind: Kind::Number, units: HOURS },
    KeySpec { key: "transit.discomfort", kind: Kind::Number, units: RATIO },
    KeySpec { key: "car.parking_fee", kind: Kind::Number, units: USD },
    KeySpec { key: "car.freeflow_time", kind: Kind::Number, units: HOURS },
    KeySpec { key: "sweep.eta", kind: Kind::List, units: RATIO },
    KeySpec { key: "policy.implemented_toll", kind: Kind::Number, units: USD },
];

enum Value {
    Text(String),
    Numbers(Vec<f64>),
}

fn unit_list(units: &[(&str, f64)]) -> String {
    units.iter().map(|(u, _)| *u).collect::<Vec<_>>().join(", ")
}

fn parse_value(spec: &KeySpec, raw: &str) -> Result<Value, ScenarioError> {
    if let Kind::Text = spec.kind {
        return Ok(Value::Text(raw.to_string()));
    }
    let missing_unit = || ScenarioError::MissingUnit {
        key: spec.key.into(),
        expected: unit_list(spec.units),
    };
    let (body, unit) = raw.rsplit_once(char::is_whitespace).ok_or_else(missing_unit)?;
    let unit = unit.trim();
    if unit.parse::<f64>().is_ok() {
        return Err(missing_unit());
    }
    let factor = spec
        .units
        .iter()
        .find(|(u, _)| *u == unit)
        .map(|(_, f)| *f)
        .ok_or_else(|| ScenarioError::BadUnit {
            key: spec.key.into(),
            unit: unit.into(),
            expected: unit_list(spec.units),
        })?;
    let numbers = body
        .split(',')
        .map(str::trim)
        .filter(|s| !(matches!(spec.kind, Kind::List) && s.is_empty()))
        .map(|s| {
            s.parse::<f64>()
                .map(|v| if factor == 1.0 { v } else { v * factor })
                .map_err(|_| ScenarioError::BadNumber {
                    key: spec.key.into(),
                    text: s.into(),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if matches!(spec.kind, Kind::Number) && numbers.len() != 1 {
        return Err(ScenarioError::BadNumber {
            key: spec.key.into(),
            text: body.trim().into(),
        });
    }
    Ok(Value::Numbers(numbers))
}

/// Parses scenario text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut values: Vec<(&'static str, Value)> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rhs) = line.split_once('=').ok_or_else(|| ScenarioError::Syntax {
            line: line_no,
            message: "expected `section.key = value unit`".into(),
        })?;
        let key = key.trim();
        let spec = KEYS
            .iter()
            .find(|s| s.key == key)
            .ok_or_else(|| ScenarioError::UnknownKey {
                line: line_no,
                key: key.into(),
            })?;
        if values.iter().any(|(k, _)| *k == spec.key) {
            return Err(ScenarioError::Duplicate {
                line: line_no,
                key: key.into(),
            });
        }
        values.push((spec.key, parse_value(spec, rhs.trim())?));
    }
    let find = |key: &str| values.iter().find(|(k, _)| *k == key).map(|(_, v)| v);
    let number = |key: &str| -> Result<Option<f64>, ScenarioError> {
        Ok(match find(key) {
            Some(Value::Numbers(v)) => Some(v[0]),
            _ => None,
        })
    };
    let required = |key: &str| -> Result<f64, ScenarioError> {
        number(key)?.ok_or_else(|| ScenarioError::Missing { key: key.into() })
    };
    let list = |key: &str| -> Option<Vec<f64>> {
        match find(key) {
            Some(Value::Numbers(v)) => Some(v.clone()),
            _ => None,
        }
    };
    let name = match find("scenario.name") {
        Some(Value::Text(t)) => t.clone(),
        _ => {
            return Err(ScenarioError::Missing {
                key: "scenario.name".into(),
            })
        }
    };
    let has_mfd = values.iter().any(|(k, _)| k.starts_with("mfd."));
    let supply = match (number("supply.capacity")?, has_mfd) {
        (Some(_), true) => {
            return Err(ScenarioError::Conflict(
                "specify either `supply.capacity` or the `mfd.*` block, not both".into(),
            ))
        }
        (Some(capacity), false) => Supply::Bottleneck { capacity },
        (None, true) => {
            let mfd = TriangularMfd::new(
                required("mfd.max_throughput")?,
                required("mfd.jam_accumulation")?,
                required("mfd.free_flow_speed")?,
                required("mfd.trip_distance")?,
            )
            .map_err(|source| ScenarioError::Invalid {
                key: "mfd".into(),
                source,
            })?;
            let jam_sweep = list("mfd.jam_sweep").unwrap_or_else(|| vec![mfd.jam_accumulation()]);
            Supply::Mfd { mfd, jam_sweep }
        }
        (None, false) => {
            return Err(ScenarioError::Missing {
                key: "supply.capacity".into(),
            })
        }
    };
    let transit = TransitCostSpec {
        fare: required("transit.fare")?,
        walk_time: required("transit.walk_time")?,
        wait_time: required("transit.wait_time")?,
        in_vehicle_time: required("transit.in_vehicle_time")?,
        discomfort: required("transit.discomfort")?,
    };
    let scenario = Scenario {
        name,
        value_of_time: required("scenario.value_of_time")?,
        total_demand: required("demand.total")?,
        arrival_rate: required("demand.arrival_rate")?,
        early_penalty: required("schedule.early")?,
        late_penalty: required("schedule.late")?,
        supply,
        eta_sweep: list("sweep.eta").unwrap_or_else(|| vec![transit.discomfort]),
        transit,
        car: CarCostSpec {
            parking_fee: required("car.parking_fee")?,
            freeflow_travel_time: required("car.freeflow_time")?,
        },
        implemented_toll: number("policy.implemented_toll")?,
    };
    scenario.validate()?;
    Ok(scenario)
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Scenario {
    /// Writes the scenario in the text format accepted by [`parse_scenario`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario.name = {}", self.name)?;
        writeln!(f, "scenario.value_of_time = {:?} usd/h", self.value_of_time)?;
        writeln!(f, "demand.total = {:?} users", self.total_demand)?;
        writeln!(f, "demand.arrival_rate = {:?} users/h", self.arrival_rate)?;
        match &self.supply {
            Supply::Bottleneck { capacity } => writeln!(f, "supply.capacity = {capacity:?} veh/h")?,
            Supply::Mfd { mfd, jam_sweep } => {
                writeln!(f, "mfd.max_throughput = {:?} veh/h", mfd.max_throughput())?;
                writeln!(f, "mfd.jam_accumulation = {:?} veh", mfd.jam_accumulation())?;
                writeln!(f, "mfd.jam_sweep = {} veh", join(jam_sweep))?;
                writeln!(f, "mfd.free_flow_speed = {:?} km/h", mfd.free_flow_speed())?;
                writeln!(f, "mfd.trip_distance = {:?} km", mfd.trip_distance())?;
            }
        }
        writeln!(f, "schedule.early = {:?} ratio", self.early_penalty)?;
        writeln!(f, "schedule.late = {:?} ratio", self.late_penalty)?;
        writeln!(f, "transit.fare = {:?} usd", self.transit.fare)?;
        writeln!(f, "transit.walk_time = {:?} h", self.transit.walk_time)?;
        writeln!(f, "transit.wait_time = {:?} h", self.transit.wait_time)?;
        writeln!(f, "transit.in_vehicle_time = {:?} h", self.transit.in_vehicle_time)?;
        writeln!(f, "transit.discomfort = {:?} ratio", self.transit.discomfort)?;
        writeln!(f, "car.parking_fee = {:?} usd", self.car.parking_fee)?;
        writeln!(f, "car.freeflow_time = {:?} h", self.car.freeflow_travel_time)?;
        writeln!(f, "sweep.eta = {} ratio", join(&self.eta_sweep))?;
        if let Some(toll) = self.implemented_toll {
            writeln!(f, "policy.implemented_toll = {toll:?} usd")?;
        }
        Ok(())
    }
}
