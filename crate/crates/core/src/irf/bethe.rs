//! Bethe ansatz for `T(z) = b(z) + c(z)` on functions of continuous
//! `x₁..x_n` restricted to `λ = -Σ(x_i + z_i)`.

use crate::eqg::quadruple::Coefficients;
use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::sample::Sampler;
use crate::spaces::{character_of, solve_difference_bethe, Character, DifferenceBethe, DifferenceBetheOptions, EllipticPoly};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize)]
pub struct ContinuousBetheReport {
    pub a: C64,
    pub w: Vec<C64>,
    pub bethe_residual: f64,
    /// `max |T(z)u(x) - ε(z)u(x)| / |ε(z)u(x)|` over the samples.
    pub eigen_residual: f64,
    /// Character of `Q` from its factorization and from
    /// `χ(1) = (-1)^m e^a`, `χ(τ) = (-1)^m e^{aτ + 2πiΣw_k}`.
    pub character: Character,
    pub character_formula: Character,
    pub character_residual: f64,
}

/// `A_±(x) = ∏ θ(x + z_k ± ηΛ_k)` as elliptic polynomials.
pub fn a_pm(params: &ModelParams) -> (EllipticPoly, EllipticPoly) {
    let lat = params.th().lattice();
    let eta = params.eta();
    let zp: Vec<C64> = params.sites().iter().map(|s| -s.z - eta * s.lambda as f64).collect();
    let zm: Vec<C64> = params.sites().iter().map(|s| -s.z + eta * s.lambda as f64).collect();
    (EllipticPoly::new(lat, C64::new(0.0, 0.0), &zp), EllipticPoly::new(lat, C64::new(0.0, 0.0), &zm))
}

/// Solves the separated equation with `γ = 2η` from random starts.
pub fn solve_continuous_bethe(params: &ModelParams, s: &mut Sampler, attempts: usize) -> Result<DifferenceBethe> {
    let total = params.total_weight();
    if total == 0 || !total.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!("ΣΛ_i = {total} must be a positive even number")));
    }
    let m = (total / 2) as usize;
    let (ap, am) = a_pm(params);
    let th = params.th();
    let tau = params.tau();
    let mut last = Error::NoConvergence { iters: 0, residual: f64::INFINITY };
    for _ in 0..attempts {
        let a0 = s.complex(C64::new(0.0, 0.0), 1.0, 1.0);
        let w0: Vec<C64> = (0..m).map(|_| s.complex(tau * 0.5 + 0.5, 0.5, 0.45 * tau.im)).collect();
        match solve_difference_bethe(th, params.n(), &ap, &am, params.eta() * 2.0, m, (a0, &w0), &DifferenceBetheOptions::default()) {
            Ok(sol) => return Ok(sol),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// Verifies `T(z)u = ε(z)u` for `u(x) = ∏Q(x_i)` and `ε(z) = ε_Q(-z)` at
/// random continuous `x` and `z`, plus the character formulas.
pub fn continuous_bethe(params: &ModelParams, s: &mut Sampler, samples: usize) -> Result<ContinuousBetheReport> {
    let sol = solve_continuous_bethe(params, s, 20)?;
    let th = params.th();
    let coef = Coefficients::new(params.clone());
    let u = |_l: C64, x: &[C64]| -> C64 { x.iter().map(|xi| sol.q.eval(th, *xi)).product() };
    let mut eigen_residual: f64 = 0.0;
    let zs = params.zs();
    for _ in 0..samples {
        let z = s.complex(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im);
        let x: Vec<C64> = zs.iter().map(|zi| -zi + s.complex(C64::new(0.0, 0.0), 0.4, 0.2)).collect();
        let lambda = -coef.s(&x);
        let (b, c) = coef.apply_bc(z, &u, lambda, &x);
        let eu = sol.eps(th, -z) * u(lambda, &x);
        eigen_residual = eigen_residual.max((b + c - eu).norm() / eu.norm());
    }
    let m = sol.w.len();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let sw: C64 = sol.w.iter().sum();
    let tau = params.tau();
    let formula = Character { chi1: sol.a.exp() * sign, chi_tau: (sol.a * tau + C64::new(0.0, 2.0 * PI) * sw).exp() * sign };
    let character = character_of(&sol.q, tau);
    Ok(ContinuousBetheReport {
        a: sol.a,
        w: sol.w.clone(),
        bethe_residual: sol.verification_residual(th),
        eigen_residual,
        character_residual: character.distance(&formula),
        character,
        character_formula: formula,
    })
}
