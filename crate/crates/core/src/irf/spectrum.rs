//! Certification of the spectrum of the IRF transfer matrix by the
//! quadratic relations in `Θ_n(χ₀)`, with factorized eigenvectors.

use super::paths::path_basis;
use super::transfer::{build_t_irf_sov, generic_spectral};
use crate::error::Result;
use crate::linalg::{self, CMat};
use crate::params::ModelParams;
use crate::sample::Sampler;
use crate::spaces::{generic_nodes, interpolate, quasi_periodicity_residual, Character, ThetaInterpolant};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug)]
pub struct SpectrumOptions {
    pub tol: f64,
    pub gap_tol: f64,
    pub angle_tol: f64,
    /// Relative perturbation of one sample for the impostor check.
    pub impostor: f64,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { tol: 1e-8, gap_tol: 1e-7, angle_tol: 1e-6, impostor: 1e-3 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralCertificate {
    pub index: usize,
    /// Eigenvalue of `T(z₀)`.
    pub eigenvalue: C64,
    pub eigenvector: Vec<C64>,
    /// `ε(z_s)` at the shared interpolation nodes.
    pub samples: Vec<C64>,
    /// Largest relative deviation of the interpolant from `ε` at validation points.
    pub membership_residual: f64,
    /// Quasi-periodicity of `ε` itself: `(z → z+1, z → z+τ)`.
    pub quasi_residuals: (f64, f64),
    /// `|ε(z_i-η)ε(z_i+η) - ∏θ(z_k-z_i+2η)θ(z_k-z_i-2η)|`, relative, per site.
    pub quadratic_residuals: Vec<f64>,
    /// `|∏θ(z_k-z_i-2η)Q_i(-z_i+η) - ε(z_i+η)Q_i(-z_i-η)|`, relative, per site.
    pub second_line_residuals: Vec<f64>,
    /// Largest quadratic residual after perturbing one sample.
    pub impostor_residual: f64,
    /// `(Q_i(-z_i-η), Q_i(-z_i+η))` per site.
    pub q_pairs: Vec<(C64, C64)>,
    pub reconstructed: Vec<C64>,
    /// Sine of the angle between the reconstruction and the eigenvector
    /// (the eigenspace of the cluster when degenerate).
    pub reconstruction_angle: f64,
    /// Distance to the nearest other eigenvalue, relative to the spectral radius.
    pub gap: f64,
    pub degenerate: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    pub z0: C64,
    pub chi0: Character,
    pub nodes: Vec<C64>,
    pub certificates: Vec<SpectralCertificate>,
    /// Smallest singular value of the column-normalised reconstructions.
    pub span_smin: f64,
    pub all_pass: bool,
}

/// `χ₀(1) = (-1)ⁿ`, `χ₀(τ) = (-1)ⁿ e^{2πiΣz_j}`.
pub fn chi0(params: &ModelParams) -> Character {
    let sign = if params.n().is_multiple_of(2) { 1.0 } else { -1.0 };
    let sz: C64 = params.zs().iter().sum();
    Character { chi1: C64::new(sign, 0.0), chi_tau: (C64::new(0.0, 2.0 * PI) * sz).exp() * sign }
}

fn rayleigh(t: &CMat, v: &[C64]) -> C64 {
    let tv = t * &linalg::col(v);
    let num: C64 = v.iter().enumerate().map(|(i, x)| x.conj() * tv[(i, 0)]).sum();
    let den: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    num / den
}

/// `ε(z) = v*T(z)v / v*v` along the given points.
pub fn eigenvalue_curve(params: &ModelParams, v: &[C64], zs: &[C64]) -> Result<Vec<C64>> {
    zs.iter().map(|z| build_t_irf_sov(params, *z).map(|t| rayleigh(&t, v))).collect()
}

/// Sine of the angle between `u` and `span(vs)`.
fn subspace_sin(u: &[C64], vs: &[Vec<C64>]) -> f64 {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for b in &basis {
            let ip: C64 = b.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= ip * bi;
            }
        }
        let nw = linalg::vnorm(&w);
        if nw > 1e-12 {
            basis.push(w.iter().map(|x| x / nw).collect());
        }
    }
    let mut r = u.to_vec();
    for b in &basis {
        let ip: C64 = b.iter().zip(&r).map(|(x, y)| x.conj() * y).sum();
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri -= ip * bi;
        }
    }
    linalg::vnorm(&r) / linalg::vnorm(u)
}

struct Quadratic {
    residuals: Vec<f64>,
    second_line: Vec<f64>,
    q_pairs: Vec<(C64, C64)>,
}

fn quadratic(params: &ModelParams, eps: &dyn Fn(C64) -> C64) -> Quadratic {
    let th = params.th();
    let eta = params.eta();
    let zs = params.zs();
    let mut residuals = Vec::new();
    let mut second_line = Vec::new();
    let mut q_pairs = Vec::new();
    for zi in &zs {
        let plus: C64 = zs.iter().map(|zk| th.th(zk - zi + eta * 2.0)).product();
        let minus: C64 = zs.iter().map(|zk| th.th(zk - zi - eta * 2.0)).product();
        let (em, ep) = (eps(zi - eta), eps(zi + eta));
        let lhs = em * ep;
        let rhs = plus * minus;
        residuals.push((lhs - rhs).norm() / lhs.norm().max(rhs.norm()));
        let (q_lo, q_hi) = (em, plus);
        let (a, b) = (minus * q_hi, ep * q_lo);
        second_line.push((a - b).norm() / a.norm().max(b.norm()));
        q_pairs.push((q_lo, q_hi));
    }
    Quadratic { residuals, second_line, q_pairs }
}

/// Diagonalizes `T(z₀)` and certifies every eigenpair.
pub fn certify_spectrum(params: &ModelParams, s: &mut Sampler, opts: &SpectrumOptions) -> Result<SpectrumReport> {
    params.check_irf_generic()?;
    let n = params.n();
    let th = params.th();
    let eta = params.eta();
    let chi = chi0(params);
    let basis = path_basis(n)?;
    let z0 = generic_spectral(params, s);
    let t0 = build_t_irf_sov(params, z0)?;
    let (vals, vecs) = linalg::eigen(&t0)?;
    let dim = vals.len();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| vals[a].re.partial_cmp(&vals[b].re).unwrap().then(vals[a].im.partial_cmp(&vals[b].im).unwrap()));
    let radius = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let vectors: Vec<Vec<C64>> = order.iter().map(|&k| (0..dim).map(|i| vecs[(i, k)]).collect()).collect();
    let values: Vec<C64> = order.iter().map(|&k| vals[k]).collect();

    let avoid: Vec<C64> = params.zs().iter().flat_map(|zi| [zi - eta, zi + eta]).collect();
    let nodes = generic_nodes(th, n, &chi, s, &avoid);
    let t_nodes: Vec<CMat> = nodes.iter().map(|z| build_t_irf_sov(params, *z)).collect::<Result<_>>()?;
    let validation: Vec<C64> = (0..n).map(|_| generic_spectral(params, s)).collect();
    let t_valid: Vec<CMat> = validation.iter().map(|z| build_t_irf_sov(params, *z)).collect::<Result<_>>()?;
    let qp_points: Vec<C64> = (0..3).map(|_| generic_spectral(params, s)).collect();

    let mut certificates = Vec::with_capacity(dim);
    let mut recon_cols: Vec<Vec<C64>> = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let gap = (0..dim).filter(|&j| j != idx).map(|j| (values[j] - values[idx]).norm()).fold(f64::INFINITY, f64::min) / radius;
        let degenerate = gap < opts.gap_tol;
        let cluster: Vec<Vec<C64>> = (0..dim).filter(|&j| (values[j] - values[idx]).norm() / radius < opts.gap_tol).map(|j| vectors[j].clone()).collect();

        let samples: Vec<C64> = t_nodes.iter().map(|t| rayleigh(t, v)).collect();
        let interp: ThetaInterpolant = interpolate(th, n, &chi, &nodes, &samples)?;
        let eps = |z: C64| interp.eval(th, z);

        let truth: Vec<C64> = t_valid.iter().map(|t| rayleigh(t, v)).collect();
        let scale = samples.iter().chain(&truth).map(|x| x.norm()).fold(0.0, f64::max);
        let membership_residual = validation.iter().zip(&truth).map(|(z, e)| (eps(*z) - e).norm()).fold(0.0, f64::max) / scale;
        let actual = |z: C64| build_t_irf_sov(params, z).map(|t| rayleigh(&t, v)).unwrap_or(C64::new(f64::NAN, 0.0));
        let quasi_residuals = quasi_periodicity_residual(th, &actual, n, &chi, &qp_points);

        let q = quadratic(params, &eps);
        let mut bad = samples.clone();
        bad[0] *= 1.0 + opts.impostor;
        let impostor = interpolate(th, n, &chi, &nodes, &bad)?;
        let impostor_residual = quadratic(params, &|z| impostor.eval(th, z)).residuals.into_iter().fold(0.0, f64::max);

        let reconstructed: Vec<C64> = basis.iter().map(|p| p.sigma.iter().zip(&q.q_pairs).map(|(sg, (lo, hi))| if *sg == 1 { *lo } else { *hi }).product()).collect();
        let reconstruction_angle = if degenerate { subspace_sin(&reconstructed, &cluster) } else { linalg::sin_angle(&reconstructed, v) };
        let nr = linalg::vnorm(&reconstructed);
        recon_cols.push(reconstructed.iter().map(|x| x / nr).collect());

        let quad_ok = q.residuals.iter().chain(&q.second_line).all(|r| *r <= opts.tol);
        let member_ok = membership_residual <= opts.tol && quasi_residuals.0 <= opts.tol && quasi_residuals.1 <= opts.tol;
        let angle_ok = degenerate || reconstruction_angle <= opts.angle_tol;
        certificates.push(SpectralCertificate {
            index: idx,
            eigenvalue: values[idx],
            eigenvector: v.clone(),
            samples,
            membership_residual,
            quasi_residuals,
            quadratic_residuals: q.residuals,
            second_line_residuals: q.second_line,
            impostor_residual,
            q_pairs: q.q_pairs,
            reconstructed,
            reconstruction_angle,
            gap,
            degenerate,
            pass: quad_ok && member_ok && angle_ok,
        });
    }
    let stack = linalg::from_fn(dim, dim, |i, j| recon_cols[j][i]);
    let sv = linalg::singular_values(&stack)?;
    let span_smin = *sv.last().unwrap();
    let all_pass = certificates.iter().all(|c| c.pass);
    Ok(SpectrumReport { z0, chi0: chi, nodes, certificates, span_smin, all_pass })
}
