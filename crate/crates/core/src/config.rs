//! JSON model configuration. Complex numbers are `[re, im]` pairs.

use crate::error::{Error, Result};
use crate::params::{ModelParams, Site};
use crate::theta::{Lattice, ThetaEvaluator};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteConfig {
    pub z: C64,
    pub lambda: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub trunc_tol: f64,
    /// Replaces the default tolerance of every upper-bound check when set.
    pub residual_tol: Option<f64>,
    pub rho: f64,
    pub gap_tol: f64,
    pub max_terms: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { trunc_tol: 1e-16, residual_tol: None, rho: 1e-6, gap_tol: 1e-7, max_terms: 64 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ThetaTask {
    /// Points at which to report θ and its companions.
    pub points: Vec<C64>,
    /// Random points for the kernel checks.
    pub samples: usize,
    /// Highest level of the theta-space checks.
    pub max_level: usize,
}

impl Default for ThetaTask {
    fn default() -> Self {
        ThetaTask { points: vec![C64::new(0.3, 0.2)], samples: 100, max_level: 5 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaudinTask {
    pub lambda0: C64,
    pub jet_degree: usize,
    /// Spectral points for the `S(z)` checks.
    pub z: Vec<C64>,
    /// Bethe parameter `c`.
    pub c: C64,
    /// Starting roots; random starts are drawn when empty.
    pub seeds: Vec<C64>,
    pub attempts: usize,
    /// `λ` points at which Bethe eigen-residuals are measured.
    pub lambdas: usize,
}

impl Default for GaudinTask {
    fn default() -> Self {
        GaudinTask {
            lambda0: C64::new(0.37, 0.12),
            jet_degree: 6,
            z: vec![C64::new(0.21, -0.33), C64::new(-0.4, 0.1)],
            c: C64::new(0.3, 0.1),
            seeds: Vec::new(),
            attempts: 20,
            lambdas: 5,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EqgTask {
    /// `(z, w, λ)` samples for the RLL relations.
    pub samples: usize,
    /// Samples for the dynamical Yang-Baxter equation.
    pub qybe_samples: usize,
}

impl Default for EqgTask {
    fn default() -> Self {
        EqgTask { samples: 5, qybe_samples: 20 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IrfTask {
    /// Spectral parameter for the reported transfer matrix.
    pub z: Option<C64>,
    /// Random points for the two-construction comparison.
    pub samples: usize,
    /// Random pairs for the commutation check.
    pub pairs: usize,
    /// Row parameters of the partition function; random when empty.
    pub rows: Vec<C64>,
    /// Number of random rows when `rows` is empty.
    pub m: usize,
    pub bethe_samples: usize,
    /// Points per curve for CSV output.
    pub curve_points: usize,
}

impl Default for IrfTask {
    fn default() -> Self {
        IrfTask { z: None, samples: 5, pairs: 10, rows: Vec::new(), m: 4, bethe_samples: 5, curve_points: 101 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub tau: C64,
    pub eta: C64,
    pub sites: Vec<SiteConfig>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub theta: ThetaTask,
    #[serde(default)]
    pub gaudin: GaudinTask,
    #[serde(default)]
    pub eqg: EqgTask,
    #[serde(default)]
    pub irf: IrfTask,
}

impl ModelConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn theta(&self) -> Result<ThetaEvaluator> {
        let t = &self.tolerances;
        ThetaEvaluator::with_options(Lattice::new(self.tau)?, t.trunc_tol, t.max_terms, t.rho)
    }

    pub fn params(&self) -> Result<ModelParams> {
        let sites = self.sites.iter().map(|s| Site { z: s.z, lambda: s.lambda }).collect();
        ModelParams::new(self.theta()?, self.eta, sites)
    }

    /// `default` unless `residual_tol` overrides it.
    pub fn tol(&self, default: f64) -> f64 {
        self.tolerances.residual_tol.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MIN: &str = r#"{"tau": [0.31, 1.07], "eta": [0.137, 0.041], "sites": [{"z": [0.21, 0.05], "lambda": 1}]}"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let c = ModelConfig::from_json(MIN).unwrap();
        assert_eq!(c.tau, C64::new(0.31, 1.07));
        assert_eq!(c.tolerances.gap_tol, 1e-7);
        assert_eq!(c.tol(1e-9), 1e-9);
        assert_eq!(c.params().unwrap().n(), 1);
    }

    #[test]
    fn bad_lattice_is_reported() {
        let c = ModelConfig::from_json(&MIN.replace("1.07", "-0.5")).unwrap();
        let e = c.params().unwrap_err().to_string();
        assert!(e.contains("Lattice invariant violated"), "{e}");
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(ModelConfig::from_json(&MIN.replace("\"sites\"", "\"sitez\"")).is_err());
    }

    #[test]
    fn complex_numbers_round_trip_as_pairs() {
        let c = ModelConfig::from_json(MIN).unwrap();
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["eta"], serde_json::json!([0.137, 0.041]));
    }
}
