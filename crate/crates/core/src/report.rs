//! Machine-readable results: named checks against tolerances.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    /// Passes when `residual <= tolerance`.
    Upper,
    /// Passes when `residual >= tolerance`: a quantity that must stay away
    /// from zero, such as an impostor's residual or a singular value.
    Lower,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl Check {
    pub fn upper(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), residual, tolerance, bound: Bound::Upper, pass: residual <= tolerance }
    }

    pub fn lower(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Check { name: name.into(), residual, tolerance, bound: Bound::Lower, pass: residual >= tolerance }
    }

    /// A check that could not be evaluated, e.g. a solver that did not converge.
    pub fn failed(name: impl Into<String>) -> Self {
        Check { name: name.into(), residual: f64::INFINITY, tolerance: 0.0, bound: Bound::Upper, pass: false }
    }
}

/// Checks plus task-specific data. `data` holds anything worth keeping
/// that is not a pass/fail quantity (matrices, certificates, roots).
#[derive(Clone, Debug, Default, Serialize)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub data: serde_json::Map<String, serde_json::Value>,
    #[serde(skip)]
    pub csv: Vec<Table>,
}

/// Numeric table written as `<name>.csv`.
#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Outcome {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn put(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.to_string(), serde_json::to_value(v).unwrap_or(serde_json::Value::Null));
    }

    /// Registers a table to write as `<name>.csv` under `--emit-csv`.
    pub fn table(&mut self, name: impl Into<String>, header: Vec<&'static str>, rows: Vec<Vec<f64>>) {
        self.csv.push(Table { name: name.into(), header, rows });
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn extend(&mut self, o: Outcome) {
        self.checks.extend(o.checks);
        self.data.extend(o.data);
        self.csv.extend(o.csv);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub data: serde_json::Map<String, serde_json::Value>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}
