//! Bethe ansatz for the Gaudin family on `M[0]`.

use super::diffop::{mat_jet, mat_jet_mul, VecJet};
use super::hamiltonians::{sigma_minus_jet, GaudinModel};
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::{self, CMat};
use crate::newton::{damped_newton, NewtonOptions};
use crate::sample::Sampler;
use num_complex::Complex64 as C64;
use serde::Serialize;

/// Which operator `f(w)` denotes in the eigenvector formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FReading {
    /// `f_λ(w) = Σ σ_λ(w - z_i) f^{(i)}`.
    Lambda,
    /// `f_{-λ}(w)`.
    MinusLambda,
}

#[derive(Clone, Debug)]
pub struct BetheOptions {
    pub newton: NewtonOptions,
    /// Coefficient of `Σ_{k≠j} ζ̄(w_j - w_k)`.
    pub pair_factor: f64,
}

impl Default for BetheOptions {
    fn default() -> Self {
        BetheOptions { newton: NewtonOptions::default(), pair_factor: 2.0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaudinBethe {
    pub c: C64,
    pub w: Vec<C64>,
    pub residual: f64,
    pub iterations: usize,
}

/// `F_j(w) = Σ_l Λ_l ζ̄(w_j - z_l) - κ Σ_{k≠j} ζ̄(w_j - w_k) - 2c`.
pub fn bethe_residuals(model: &GaudinModel, c: C64, w: &[C64], pair_factor: f64) -> Vec<C64> {
    let th = model.params().th();
    let sites = model.params().sites();
    (0..w.len())
        .map(|j| {
            let mut r: C64 = sites.iter().map(|s| th.zeta_bar_raw(w[j] - s.z) * s.lambda as f64).sum();
            for k in 0..w.len() {
                if k != j {
                    r -= th.zeta_bar_raw(w[j] - w[k]) * pair_factor;
                }
            }
            r - c * 2.0
        })
        .collect()
}

/// Solves the Bethe equations for `w₁..w_m`, `m = ΣΛ_i/2`, at fixed `c`.
pub fn solve_gaudin_bethe(model: &GaudinModel, c: C64, seed: &[C64], opts: &BetheOptions) -> Result<GaudinBethe> {
    let m = model.zero_weight().m as usize;
    if seed.len() != m {
        return Err(Error::InvalidArgument(format!("expected {m} seed roots, got {}", seed.len())));
    }
    let th = model.params().th();
    let lat = *th.lattice();
    for a in 0..m {
        for b in 0..a {
            if lat.dist(seed[a] - seed[b]) < th.rho() {
                return Err(Error::InvalidArgument("seed roots must be pairwise distinct".into()));
            }
        }
    }
    let sites = model.params().sites().to_vec();
    let kf = opts.pair_factor;
    let f = |w: &[C64]| {
        let r = bethe_residuals(model, c, w, kf);
        let mut jac = linalg::zeros(m, m);
        for j in 0..m {
            let mut d: C64 = sites.iter().map(|s| -th.wp_bar_raw(w[j] - s.z) * s.lambda as f64).sum();
            for k in 0..m {
                if k != j {
                    let p = th.wp_bar_raw(w[j] - w[k]) * kf;
                    d += p;
                    jac[(j, k)] = -p;
                }
            }
            jac[(j, j)] = d;
        }
        (r, jac)
    };
    let res = damped_newton(f, seed, &opts.newton)?;
    let w = res.x;
    for j in 0..m {
        for s in &sites {
            if lat.dist(w[j] - s.z) < th.rho() {
                return Err(Error::InvalidSolution(format!("w_{} collides with a site", j + 1)));
            }
        }
        for k in 0..j {
            if lat.dist(w[j] - w[k]) < th.rho() {
                return Err(Error::InvalidSolution(format!("w_{} = w_{} mod lattice", k + 1, j + 1)));
            }
        }
    }
    Ok(GaudinBethe { c, w, residual: res.residual, iterations: res.iterations })
}

/// Tries seeded random starts until one converges to an admissible root.
pub fn solve_gaudin_bethe_multistart(model: &GaudinModel, c: C64, s: &mut Sampler, attempts: usize, opts: &BetheOptions) -> Result<GaudinBethe> {
    let m = model.zero_weight().m as usize;
    let tau = model.params().tau();
    let mut last = Error::NoConvergence { iters: 0, residual: f64::INFINITY };
    for _ in 0..attempts {
        let seed: Vec<C64> = (0..m).map(|_| s.complex(tau * 0.5, 0.5, 0.45 * tau.im)).collect();
        match solve_gaudin_bethe(model, c, &seed, opts) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// `u(λ) = e^{cλ} f(w₁)⋯f(w_m) v₀` restricted to `M[0]`, as a jet at `λ0`.
pub fn bethe_vector_jet(model: &GaudinModel, c: C64, w: &[C64], reading: FReading, lambda0: C64, deg: usize) -> Result<VecJet> {
    let th = model.params().th();
    th.check_pole("lambda", lambda0)?;
    let md = model.module();
    let dim = md.dim();
    let zs = model.params().zs();
    let mut prod: Vec<CMat> = vec![linalg::zeros(dim, dim); deg + 1];
    prod[0] = linalg::identity(dim);
    for wk in w {
        let terms: Vec<(Jet, &CMat)> = zs
            .iter()
            .enumerate()
            .map(|(i, zi)| {
                let j = match reading {
                    FReading::Lambda => th.sigma_lambda_jet(lambda0, wk - zi, deg),
                    FReading::MinusLambda => sigma_minus_jet(th, lambda0, wk - zi, deg),
                };
                (j, &md.f[i])
            })
            .collect();
        prod = mat_jet_mul(&mat_jet(&terms, dim, deg), &prod);
    }
    let v0 = VecJet { lambda0, c: (0..=deg).map(|k| if k == 0 { md.highest_weight_vector() } else { vec![C64::new(0.0, 0.0); dim] }).collect() };
    let full = VecJet::mul_mat(&prod, &v0);
    let ex = Jet::variable(lambda0, deg).scale(c).exp();
    let m0 = model.zero_weight();
    let mut out = vec![vec![C64::new(0.0, 0.0); m0.dim()]; deg + 1];
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            let r = m0.restrict_vec(&full.c[j]);
            for (a, v) in r.iter().enumerate() {
                out[i + j][a] += ex.c[i] * v;
            }
        }
    }
    Ok(VecJet { lambda0, c: out })
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub reading: FReading,
    /// `ε₀, ε₁, .., ε_n` extracted at the first sample point.
    pub eps: Vec<C64>,
    /// `|Σ_{j≥1} ε_j|`.
    pub eps_sum: f64,
    /// `max_j ‖H_j u - ε_j u‖ / ‖u‖` over all sample points and jet orders.
    pub eigen_residual: f64,
    /// `‖S(z)u - q(z)u‖ / ‖u‖` at the sampled `z`.
    pub s_residual: f64,
}

/// Builds the Bethe vector, extracts `ε_j` as Rayleigh ratios at the
/// largest component, and measures the eigen-residuals at `lambdas`.
pub fn bethe_eigen_report(model: &GaudinModel, sol: &GaudinBethe, reading: FReading, lambdas: &[C64], zs_probe: &[C64]) -> Result<EigenReport> {
    let deg = 4;
    let hs = model.hamiltonians();
    let mut eps: Vec<C64> = Vec::new();
    let mut worst: f64 = 0.0;
    let mut s_worst: f64 = 0.0;
    let th = model.params().th();
    let sites = model.params().zs();
    let casimirs = model.casimirs();
    for (t, &l0) in lambdas.iter().enumerate() {
        let u = bethe_vector_jet(model, sol.c, &sol.w, reading, l0, deg)?;
        let un = u.norm();
        if un < 1e-12 {
            return Err(Error::DegenerateVector(format!("Bethe vector vanishes at λ = {l0}")));
        }
        let k = (0..u.dim()).max_by(|a, b| u.c[0][*a].norm().partial_cmp(&u.c[0][*b].norm()).unwrap()).unwrap();
        let images: Vec<VecJet> = hs.iter().map(|h| h.apply(&u)).collect::<Result<_>>()?;
        if t == 0 {
            eps = images.iter().map(|im| im.c[0][k] / u.c[0][k]).collect();
        }
        for (im, e) in images.iter().zip(&eps) {
            let r = im.sub(&u.scale(*e)).norm() / u.truncate(im.degree()).norm();
            worst = worst.max(r);
        }
        for &z in zs_probe {
            let s = model.s_operator(z)?.apply(&u)?;
            let mut q = eps[0];
            for (j, zj) in sites.iter().enumerate() {
                q += th.wp_bar_raw(z - zj) * (casimirs[j] / 2.0) + th.zeta_bar_raw(z - zj) * eps[j + 1];
            }
            s_worst = s_worst.max(s.sub(&u.scale(q)).norm() / u.truncate(s.degree()).norm());
        }
    }
    let eps_sum = eps[1..].iter().sum::<C64>().norm();
    Ok(EigenReport { reading, eps, eps_sum, eigen_residual: worst, s_residual: s_worst })
}
