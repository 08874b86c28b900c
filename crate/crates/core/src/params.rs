//! Model parameters shared by every module.

use crate::error::{Error, Result};
use crate::theta::ThetaEvaluator;
use num_complex::Complex64 as C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Site {
    pub z: C64,
    pub lambda: u32,
}

#[derive(Clone, Debug)]
pub struct ModelParams {
    th: ThetaEvaluator,
    eta: C64,
    sites: Vec<Site>,
}

impl ModelParams {
    pub fn new(th: ThetaEvaluator, eta: C64, sites: Vec<Site>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::InvalidParams("at least one site is required".into()));
        }
        let lat = *th.lattice();
        if lat.dist(eta) < th.rho() {
            return Err(Error::InvalidParams(format!("eta = {eta} lies on the lattice")));
        }
        for i in 0..sites.len() {
            for j in 0..i {
                if lat.dist(sites[i].z - sites[j].z) < th.rho() {
                    return Err(Error::InvalidParams(format!("z_{} = z_{} mod lattice", j + 1, i + 1)));
                }
            }
        }
        Ok(ModelParams { th, eta, sites })
    }

    /// Checks `z_i ≠ z_j + 2ηℓ mod Γ` for `ℓ ∈ {0, ±1}`.
    pub fn check_irf_generic(&self) -> Result<()> {
        let lat = self.th.lattice();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i == j {
                    continue;
                }
                for l in [-1.0, 0.0, 1.0] {
                    if lat.dist(self.sites[i].z - self.sites[j].z - self.eta * 2.0 * l) < self.th.rho() {
                        return Err(Error::InvalidParams(format!("z_{} - z_{} = {}*2eta mod lattice", i + 1, j + 1, l)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn th(&self) -> &ThetaEvaluator {
        &self.th
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    pub fn tau(&self) -> C64 {
        self.th.tau()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn n(&self) -> usize {
        self.sites.len()
    }

    pub fn zs(&self) -> Vec<C64> {
        self.sites.iter().map(|s| s.z).collect()
    }

    pub fn lambdas(&self) -> Vec<u32> {
        self.sites.iter().map(|s| s.lambda).collect()
    }

    pub fn total_weight(&self) -> u32 {
        self.sites.iter().map(|s| s.lambda).sum()
    }

    /// Same model with every `z_i` shifted by `dz`.
    pub fn shifted(&self, dz: C64) -> Result<Self> {
        let sites = self.sites.iter().map(|s| Site { z: s.z + dz, lambda: s.lambda }).collect();
        ModelParams::new(self.th.clone(), self.eta, sites)
    }
}
