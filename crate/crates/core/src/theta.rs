//! The odd Jacobi theta function of the lattice `Z + τZ` and the elliptic
//! functions built from it.
//!
//! `θ(z) = -Σ_j exp(iπ(j+½)²τ + 2πi(j+½)(z+½))`, so `θ(z+1) = -θ(z)` and
//! `θ(z+τ) = -exp(-iπτ - 2πiz) θ(z)`.

use crate::error::{pole, Error, Result};
use crate::jet::Jet;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    tau: C64,
}

impl Lattice {
    pub const DEFAULT_IM_FLOOR: f64 = 1e-3;

    pub fn new(tau: C64) -> Result<Self> {
        Self::with_floor(tau, Self::DEFAULT_IM_FLOOR)
    }

    pub fn with_floor(tau: C64, floor: f64) -> Result<Self> {
        if !(tau.im.is_finite() && tau.re.is_finite()) || tau.im < floor {
            return Err(Error::Lattice(format!("Im tau = {} must be >= {}", tau.im, floor)));
        }
        Ok(Lattice { tau })
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    /// Writes `z = z0 + r + sτ` with `z0` in the fundamental parallelogram.
    pub fn reduce(&self, z: C64) -> (C64, i64, i64) {
        let s = (z.im / self.tau.im).floor();
        let z1 = z - self.tau * s;
        let r = z1.re.floor();
        (z1 - r, r as i64, s as i64)
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn dist(&self, z: C64) -> f64 {
        let s0 = (z.im / self.tau.im).round() as i64;
        let mut best = f64::INFINITY;
        for s in (s0 - 1)..=(s0 + 1) {
            let w = z - self.tau * s as f64;
            let r0 = w.re.round();
            for r in [r0 - 1.0, r0, r0 + 1.0] {
                best = best.min((w - r).norm());
            }
        }
        best
    }

    /// Representative of `z mod Γ` in the fundamental parallelogram.
    pub fn to_fundamental(&self, z: C64) -> C64 {
        self.reduce(z).0
    }
}

#[derive(Clone, Debug)]
pub struct ThetaEvaluator {
    lattice: Lattice,
    trunc_tol: f64,
    max_terms: usize,
    rho: f64,
    tp0: C64,
    t3: C64,
}

/// Highest derivative order validated at construction.
const VALIDATED_ORDER: usize = 8;

impl ThetaEvaluator {
    pub fn new(lattice: Lattice) -> Result<Self> {
        Self::with_options(lattice, 1e-16, 64, 1e-6)
    }

    pub fn with_options(lattice: Lattice, trunc_tol: f64, max_terms: usize, rho: f64) -> Result<Self> {
        if !(trunc_tol > 0.0) || max_terms == 0 || !(rho > 0.0) {
            return Err(Error::InvalidArgument("trunc_tol, max_terms and rho must be positive".into()));
        }
        let mut ev = ThetaEvaluator { lattice, trunc_tol, max_terms, rho, tp0: C64::new(0.0, 0.0), t3: C64::new(0.0, 0.0) };
        // worst case for the tail: Im z0 at the top of the strip
        let worst = lattice.tau() + 0.999;
        let (_, ok, tail) = ev.series(worst, VALIDATED_ORDER);
        if !ok {
            return Err(Error::Truncation { max_terms, tail });
        }
        let d = ev.th_derivs(C64::new(0.0, 0.0), 3);
        ev.tp0 = d[1];
        ev.t3 = d[3] / d[1];
        Ok(ev)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn tau(&self) -> C64 {
        self.lattice.tau
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn trunc_tol(&self) -> f64 {
        self.trunc_tol
    }

    /// `θ'(0)`.
    pub fn theta_prime_zero(&self) -> C64 {
        self.tp0
    }

    /// `θ'''(0)/θ'(0)`, the diagonal limit of `θ''/θ` used in the Gaudin Hamiltonians.
    pub fn t3(&self) -> C64 {
        self.t3
    }

    /// Term-wise differentiated series at a reduced point. Returns the
    /// derivatives `0..=deg`, whether the stopping rule was met, and the
    /// bound on the first omitted term.
    fn series(&self, z0: C64, deg: usize) -> (Vec<C64>, bool, f64) {
        let tau = self.lattice.tau;
        let mut out = vec![C64::new(0.0, 0.0); deg + 1];
        let mut runmax = vec![0.0f64; deg + 1];
        let bound = |k: f64, d: usize| (-PI * k * k * tau.im + 2.0 * PI * k * z0.im.abs()).exp() * (2.0 * PI * k).powi(d as i32);
        for nn in 0..self.max_terms {
            let kabs = nn as f64 + 0.5;
            for k in [kabs, -kabs] {
                let t = -(I * PI * k * k * tau + I * 2.0 * PI * k * (z0 + 0.5)).exp();
                let f = I * 2.0 * PI * k;
                let mut fd = C64::new(1.0, 0.0);
                for d in 0..=deg {
                    let term = t * fd;
                    out[d] += term;
                    runmax[d] = runmax[d].max(term.norm());
                    fd *= f;
                }
            }
            let next = kabs + 1.0;
            if (0..=deg).all(|d| bound(next, d) < self.trunc_tol * runmax[d].max(f64::MIN_POSITIVE)) {
                return (out, true, bound(next, deg));
            }
        }
        let tail = bound(self.max_terms as f64 + 0.5, deg);
        (out, false, tail)
    }

    fn jet_checked(&self, z: C64, deg: usize) -> (Jet, bool, f64) {
        let (z0, r, s) = self.lattice.reduce(z);
        let (d, ok, tail) = self.series(z0, deg);
        let sf = s as f64;
        let sign = if (r + s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let m = (-I * PI * sf * sf * self.lattice.tau - I * 2.0 * PI * sf * z0).exp() * sign;
        // multiplier jet: m * exp(-2πi s t)
        let mut mj = Vec::with_capacity(deg + 1);
        let mut dj = Vec::with_capacity(deg + 1);
        let mut fact = 1.0;
        let g = -I * 2.0 * PI * sf;
        let mut gp = C64::new(1.0, 0.0);
        for k in 0..=deg {
            if k > 0 {
                fact *= k as f64;
            }
            mj.push(m * gp / fact);
            dj.push(d[k] / fact);
            gp *= g;
        }
        (&Jet::new(mj) * &Jet::new(dj), ok, tail)
    }

    /// Taylor jet of θ at `z`: coefficients `θ^(k)(z)/k!`.
    pub fn th_jet(&self, z: C64, deg: usize) -> Jet {
        self.jet_checked(z, deg).0
    }

    /// Checked variant of [`th_jet`](Self::th_jet).
    pub fn theta_jet(&self, z: C64, deg: usize) -> Result<Jet> {
        let (j, ok, tail) = self.jet_checked(z, deg);
        if !ok {
            return Err(Error::Truncation { max_terms: self.max_terms, tail });
        }
        Ok(j)
    }

    /// `θ^(k)(z)` for `k = 0..=deg`.
    pub fn th_derivs(&self, z: C64, deg: usize) -> Vec<C64> {
        let j = self.th_jet(z, deg);
        (0..=deg).map(|k| j.derivative_at(k)).collect()
    }

    pub fn th(&self, z: C64) -> C64 {
        self.th_jet(z, 0).c[0]
    }

    /// `θ^(d)(z)` for `d ∈ {0,1,2,3}`.
    pub fn theta(&self, z: C64, d: usize) -> Result<C64> {
        if d > 3 {
            return Err(Error::InvalidArgument(format!("derivative order {d} not in 0..=3")));
        }
        let (j, ok, tail) = self.jet_checked(z, d);
        if !ok {
            return Err(Error::Truncation { max_terms: self.max_terms, tail });
        }
        Ok(j.derivative_at(d))
    }

    pub fn check_pole(&self, what: &str, z: C64) -> Result<()> {
        if self.lattice.dist(z) < self.rho {
            return Err(pole(what, z, self.rho));
        }
        Ok(())
    }

    /// `σ_λ(z) = θ(λ-z)θ'(0)/(θ(z)θ(λ))`, no pole checks.
    pub fn sigma_raw(&self, lambda: C64, z: C64) -> C64 {
        self.th(lambda - z) * self.tp0 / (self.th(z) * self.th(lambda))
    }

    pub fn sigma(&self, lambda: C64, z: C64) -> Result<C64> {
        self.check_pole("sigma: z", z)?;
        self.check_pole("sigma: lambda", lambda)?;
        Ok(self.sigma_raw(lambda, z))
    }

    pub fn zeta_bar_raw(&self, z: C64) -> C64 {
        let d = self.th_derivs(z, 1);
        d[1] / d[0]
    }

    /// `ζ̄ = θ'/θ`.
    pub fn zeta_bar(&self, z: C64) -> Result<C64> {
        self.check_pole("zeta_bar", z)?;
        Ok(self.zeta_bar_raw(z))
    }

    pub fn wp_bar_raw(&self, z: C64) -> C64 {
        let d = self.th_derivs(z, 2);
        let r = d[1] / d[0];
        r * r - d[2] / d[0]
    }

    /// `℘̄ = -ζ̄' = (θ'/θ)² - θ''/θ`.
    pub fn wp_bar(&self, z: C64) -> Result<C64> {
        self.check_pole("wp_bar", z)?;
        Ok(self.wp_bar_raw(z))
    }

    /// `θ''(z)/θ(z)`, with the value `θ'''(0)/θ'(0)` on the lattice.
    pub fn th2_over_th(&self, z: C64) -> C64 {
        if self.lattice.dist(z) < self.rho {
            return self.t3;
        }
        let d = self.th_derivs(z, 2);
        d[2] / d[0]
    }

    pub fn sigma_dlambda_raw(&self, lambda: C64, z: C64) -> C64 {
        // σ(ζ̄(λ-z) - ζ̄(λ)) written without the removable pole at λ = z
        let a = self.th_derivs(lambda - z, 1);
        let b = self.th_derivs(lambda, 1);
        (a[1] - a[0] * b[1] / b[0]) * self.tp0 / (self.th(z) * b[0])
    }

    /// `∂σ_λ(z)/∂λ = σ_λ(z)(ζ̄(λ-z) - ζ̄(λ))`.
    pub fn sigma_dlambda(&self, lambda: C64, z: C64) -> Result<C64> {
        self.check_pole("sigma_dlambda: z", z)?;
        self.check_pole("sigma_dlambda: lambda", lambda)?;
        Ok(self.sigma_dlambda_raw(lambda, z))
    }

    /// λ-jet of `σ_λ(x)` at `λ0`.
    pub fn sigma_lambda_jet(&self, lambda0: C64, x: C64, deg: usize) -> Jet {
        let num = self.th_jet(lambda0 - x, deg);
        let den = self.th_jet(lambda0, deg);
        num.div(&den).scale(self.tp0 / self.th(x))
    }

    /// λ-jet of `℘̄(λ)` at `λ0`.
    pub fn wp_bar_jet(&self, lambda0: C64, deg: usize) -> Jet {
        let t = self.th_jet(lambda0, deg + 2);
        let z = t.derivative().div(&t.truncate(deg + 1));
        -&z.derivative()
    }
}
