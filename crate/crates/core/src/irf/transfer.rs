//! The antiperiodic IRF transfer matrix, built from Boltzmann weights in
//! the path basis and from the difference operators `b(z) + c(z)` on
//! `S₀ ∩ S₁`.

use super::paths::{path_basis, PathState};
use super::weights::weight_from_r;
use crate::eqg::quadruple::Coefficients;
use crate::eqg::rmatrix::r_matrix;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::params::ModelParams;
use crate::sample::{Sampler, SAMPLE_MARGIN};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::collections::HashMap;

fn require_irf(params: &ModelParams) -> Result<()> {
    if params.n().is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("the antiperiodic IRF model needs n odd, got n = {}", params.n())));
    }
    if params.sites().iter().any(|s| s.lambda != 1) {
        return Err(Error::InvalidParams("the IRF model needs Λ_i = 1 at every site".into()));
    }
    Ok(())
}

/// `T[b, a] = ∏_i W(a_{i+1}, a_i, b_i, b_{i+1} | z - z_i)`.
pub fn build_t_irf_paths(params: &ModelParams, z: C64) -> Result<CMat> {
    require_irf(params)?;
    let n = params.n();
    let basis = path_basis(n)?;
    let heights: Vec<Vec<i64>> = basis.iter().map(PathState::heights2).collect();
    let th = params.th();
    let eta = params.eta();
    let mut cache: HashMap<(usize, i64), CMat> = HashMap::new();
    for (i, zi) in params.zs().iter().enumerate() {
        for d2 in -(n as i64 + 1)..=(n as i64 + 1) {
            if d2.rem_euclid(2) == (n as i64 + 1).rem_euclid(2) {
                continue;
            }
            cache.insert((i, d2), r_matrix(th, eta, z - zi, -eta * d2 as f64)?);
        }
    }
    let dim = basis.len();
    Ok(linalg::from_fn(dim, dim, |row, col| {
        let (a, b) = (&heights[col], &heights[row]);
        let mut w = C64::new(1.0, 0.0);
        for i in 0..n {
            w *= weight_from_r(&cache[&(i, b[i + 1])], a[i + 1], a[i], b[i], b[i + 1]);
            if w == C64::new(0.0, 0.0) {
                break;
            }
        }
        w
    }))
}

/// `(b(z) + c(z))` restricted to functions on `S₀ ∩ S₁` with `Λ_i = 1`:
/// row `k` is evaluated at `λ = -Σ(x_i + z_i)` of grid point `k`, which
/// is path state `k` (`σ_i = +1` iff `x_i = -z_i - η`). Returns the
/// matrix and the largest coefficient at reads outside the grid.
pub fn build_t_irf_sov_checked(params: &ModelParams, z: C64) -> Result<(CMat, f64)> {
    require_irf(params)?;
    let n = params.n();
    let basis = path_basis(n)?;
    let coef = Coefficients::new(params.clone());
    let eta = params.eta();
    let zs = params.zs();
    let lat = *params.th().lattice();
    let dim = basis.len();
    let mut t = linalg::zeros(dim, dim);
    let mut forbidden: f64 = 0.0;
    for (k, p) in basis.iter().enumerate() {
        let x: Vec<C64> = (0..n).map(|i| -zs[i] - eta * p.sigma[i] as f64).collect();
        let lambda = -coef.s(&x);
        if lat.dist(lambda) < params.th().rho() {
            return Err(Error::InvalidParams(format!("θ(λ) vanishes at grid point {k}")));
        }
        for i in 0..n {
            let flip = k ^ (1 << (n - 1 - i));
            // b reads x_i - 2η: allowed from σ_i = -1 to +1
            let bv = coef.b(z, lambda, &x, i);
            let cv = coef.c(z, lambda, &x, i);
            if p.sigma[i] == -1 {
                t[(k, flip)] += bv;
                forbidden = forbidden.max(cv.norm());
            } else {
                t[(k, flip)] += cv;
                forbidden = forbidden.max(bv.norm());
            }
        }
    }
    Ok((t, forbidden))
}

pub fn build_t_irf_sov(params: &ModelParams, z: C64) -> Result<CMat> {
    Ok(build_t_irf_sov_checked(params, z)?.0)
}

/// `‖[A, B]‖ / (‖A‖‖B‖)`.
pub fn commutator_residual(a: &CMat, b: &CMat) -> f64 {
    linalg::fro(&linalg::commutator(a, b)) / (linalg::fro(a) * linalg::fro(b))
}

/// Spectral parameter away from `z_i + ℓη` and the lattice.
pub fn generic_spectral(params: &ModelParams, s: &mut Sampler) -> C64 {
    let lat = *params.th().lattice();
    let eta = params.eta();
    let zs = params.zs();
    s.generic(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im, |z| {
        (-4..=4).all(|l| zs.iter().all(|zi| lat.dist(z - zi + eta * l as f64) > SAMPLE_MARGIN))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub n: usize,
    /// `‖T_paths - T_sov‖ / ‖T_paths‖` with both at the same `z_i`.
    pub naive_residual: f64,
    /// Normalised singular values of the intertwining system: the smallest
    /// (should vanish) and the next (should not).
    pub fit_smin: f64,
    pub fit_gap: f64,
    /// `max ‖T_paths(z) - κ(z) P T_sov(z) P⁻¹‖ / ‖T_paths(z)‖` at fresh `z`.
    pub residual: f64,
    /// Largest coefficient of `T_sov` at reads outside `S₀ ∩ S₁`.
    pub forbidden: f64,
}

/// `κ(z) = ∏ θ(z - z_i - η)⁻¹`.
fn kappa(params: &ModelParams, z: C64) -> C64 {
    let eta = params.eta();
    params.zs().iter().map(|zi| params.th().th(z - zi - eta)).product::<C64>().inv()
}

/// Compares the two constructions. The path-basis matrix with column
/// parameters `z_i - η` and the difference-operator matrix with
/// parameters `z_i` satisfy `T_paths = κ P T_sov P⁻¹` for a constant,
/// weight-preserving `P`; `P` is fitted at `fit` points and the identity
/// is then measured at `validate` fresh points.
pub fn dual_construction_check(params: &ModelParams, s: &mut Sampler, fit: usize, validate: usize) -> Result<DualReport> {
    let n = params.n();
    let shifted = params.shifted(-params.eta())?;
    let basis = path_basis(n)?;
    let dim = basis.len();
    let allowed: Vec<(usize, usize)> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).filter(|&(i, j)| basis[i].weight() == basis[j].weight()).collect();
    let pair = |z: C64| -> Result<(CMat, CMat, f64)> {
        let tp = build_t_irf_paths(&shifted, z)?;
        let (ts, forb) = build_t_irf_sov_checked(params, z)?;
        Ok((tp, linalg::scaled(&ts, kappa(params, z)), forb))
    };

    let z0 = generic_spectral(params, s);
    let naive_residual = {
        let tp = build_t_irf_paths(params, z0)?;
        let ts = build_t_irf_sov(params, z0)?;
        linalg::fro(&(&tp - &ts)) / linalg::fro(&tp)
    };

    // Tp P - P Ts' = 0 in the unknowns P[i, j], (i, j) allowed
    let mut forbidden: f64 = 0.0;
    let mut sys = linalg::zeros(fit * dim * dim, allowed.len());
    for f in 0..fit {
        let (tp, ts, forb) = pair(generic_spectral(params, s))?;
        forbidden = forbidden.max(forb);
        let scale = C64::new(1.0 / linalg::fro(&tp), 0.0);
        for (u, &(i, j)) in allowed.iter().enumerate() {
            // contribution of P[i, j] to row (r, c) of Tp P - P Ts'
            for r in 0..dim {
                sys[(f * dim * dim + r * dim + j, u)] += tp[(r, i)] * scale;
            }
            for c in 0..dim {
                sys[(f * dim * dim + i * dim + c, u)] -= ts[(j, c)] * scale;
            }
        }
    }
    let (x, fit_smin, fit_gap) = linalg::null_vector(&sys)?;
    let mut p = linalg::zeros(dim, dim);
    for (u, &(i, j)) in allowed.iter().enumerate() {
        p[(i, j)] = x[u];
    }
    let p_inv = linalg::inverse(&p)?;
    let mut residual: f64 = 0.0;
    for _ in 0..validate {
        let (tp, ts, forb) = pair(generic_spectral(params, s))?;
        forbidden = forbidden.max(forb);
        let r = &tp - &(&(&p * &ts) * &p_inv);
        residual = residual.max(linalg::fro(&r) / linalg::fro(&tp));
    }
    Ok(DualReport { n, naive_residual, fit_smin, fit_gap, residual, forbidden })
}
