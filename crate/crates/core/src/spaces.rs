//! Spaces `Θ_k(χ)` of theta functions of level `k` and character `χ`:
//! entire `f` with `f(z+1) = χ(1) f(z)` and
//! `f(z+τ) = χ(τ) e^{-πik(2z+τ)} f(z)`.

use crate::contour;
use crate::error::{Error, Result};
use crate::linalg;
use crate::newton::{damped_newton, NewtonOptions};
use crate::sample::{Sampler, SAMPLE_MARGIN};
use crate::theta::{Lattice, ThetaEvaluator};
use num_complex::Complex64 as C64;
use serde::Serialize;
use std::f64::consts::PI;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Character {
    pub chi1: C64,
    pub chi_tau: C64,
}

impl Character {
    pub fn new(chi1: C64, chi_tau: C64) -> Result<Self> {
        if chi1.norm() == 0.0 || chi_tau.norm() == 0.0 || !chi1.is_finite() || !chi_tau.is_finite() {
            return Err(Error::InvalidArgument("character values must be finite and nonzero".into()));
        }
        Ok(Character { chi1, chi_tau })
    }

    /// `φ(χ) = (ln χ(τ) - τ ln χ(1)) / 2πi`, principal branches.
    pub fn phi(&self, tau: C64) -> C64 {
        (self.chi_tau.ln() - tau * self.chi1.ln()) / (I * 2.0 * PI)
    }

    pub fn mul(&self, o: &Character) -> Character {
        Character { chi1: self.chi1 * o.chi1, chi_tau: self.chi_tau * o.chi_tau }
    }

    /// Relative distance between two characters.
    pub fn distance(&self, o: &Character) -> f64 {
        let d1 = (self.chi1 - o.chi1).norm() / self.chi1.norm().max(o.chi1.norm());
        let d2 = (self.chi_tau - o.chi_tau).norm() / self.chi_tau.norm().max(o.chi_tau.norm());
        d1.max(d2)
    }
}

/// `f(z) = C e^{az} ∏ θ(z - w_j)`, zeros stored in the fundamental domain.
#[derive(Clone, Debug, PartialEq)]
pub struct EllipticPoly {
    pub scale: C64,
    pub a: C64,
    pub zeros: Vec<C64>,
}

impl EllipticPoly {
    /// Builds `e^{az}∏θ(z - w_j)`. Zeros are moved into the fundamental
    /// domain with `a` and the prefactor adjusted so the function is
    /// unchanged.
    pub fn new(lattice: &Lattice, a: C64, zeros: &[C64]) -> Self {
        let tau = lattice.tau();
        let mut scale = C64::new(1.0, 0.0);
        let mut a = a;
        let mut red = Vec::with_capacity(zeros.len());
        for &w in zeros {
            let (w0, r, s) = lattice.reduce(w);
            let sf = s as f64;
            let sign = if (r + s).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            // θ(u - r - sτ) = (-1)^{r+s} e^{-iπs²τ + 2πisu} θ(u), u = z - w0
            scale *= sign * (-I * PI * sf * sf * tau - I * 2.0 * PI * sf * w0).exp();
            a += I * 2.0 * PI * sf;
            red.push(w0);
        }
        EllipticPoly { scale, a, zeros: red }
    }

    pub fn order(&self) -> usize {
        self.zeros.len()
    }

    pub fn eval(&self, th: &ThetaEvaluator, z: C64) -> C64 {
        self.zeros.iter().fold(self.scale * (self.a * z).exp(), |acc, w| acc * th.th(z - w))
    }

    /// Value and first derivative.
    pub fn eval_d(&self, th: &ThetaEvaluator, z: C64) -> (C64, C64) {
        let mut f = self.scale * (self.a * z).exp();
        let mut df = f * self.a;
        for w in &self.zeros {
            let d = th.th_derivs(z - w, 1);
            df = df * d[0] + f * d[1];
            f *= d[0];
        }
        (f, df)
    }

    /// `p'/p = a + Σ ζ̄(z - w_j)`.
    pub fn log_derivative(&self, th: &ThetaEvaluator, z: C64) -> C64 {
        self.zeros.iter().fold(self.a, |acc, w| acc + th.zeta_bar_raw(z - w))
    }
}

/// `χ(r+sτ) = (-1)^{(r+s)m} e^{ra + s(aτ + 2πiΣw_j)}`.
pub fn character_of(p: &EllipticPoly, tau: C64) -> Character {
    let sgn = if p.order().is_multiple_of(2) { 1.0 } else { -1.0 };
    let sw: C64 = p.zeros.iter().sum();
    Character { chi1: p.a.exp() * sgn, chi_tau: (p.a * tau + I * 2.0 * PI * sw).exp() * sgn }
}

/// `δ = (1+τ)/2`.
pub fn delta(tau: C64) -> C64 {
    (tau + 1.0) * 0.5
}

/// Distance mod Γ between `Σw_j` and `φ(χ) + kδ`; zero for every element
/// of `Θ_k(χ)`.
pub fn zero_sum_residual(p: &EllipticPoly, lattice: &Lattice) -> f64 {
    let tau = lattice.tau();
    let chi = character_of(p, tau);
    let sw: C64 = p.zeros.iter().sum();
    lattice.dist(sw - chi.phi(tau) - delta(tau) * p.order() as f64)
}

/// Quasi-periodicity residuals of `f` against `(k, χ)` at the given points,
/// relative to the larger side of each relation.
pub fn quasi_periodicity_residual(th: &ThetaEvaluator, f: &dyn Fn(C64) -> C64, k: usize, chi: &Character, pts: &[C64]) -> (f64, f64) {
    let tau = th.tau();
    let (mut r1, mut rt) = (0.0f64, 0.0f64);
    for &z in pts {
        let fz = f(z);
        let a = f(z + 1.0);
        let b = chi.chi1 * fz;
        r1 = r1.max((a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE));
        let a = f(z + tau);
        let b = chi.chi_tau * (-I * PI * k as f64 * (z * 2.0 + tau)).exp() * fz;
        rt = rt.max((a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE));
    }
    (r1, rt)
}

/// `(1/2πi)∮ d ln p` over the boundary of a translate of the fundamental
/// parallelogram chosen to stay clear of the zeros.
pub fn zero_count(p: &EllipticPoly, th: &ThetaEvaluator) -> C64 {
    let tau = th.tau();
    // lattice coordinates of each zero
    let coords: Vec<(f64, f64)> = p
        .zeros
        .iter()
        .map(|w| {
            let y = w.im / tau.im;
            (w.re - y * tau.re, y)
        })
        .collect();
    let frac = |x: f64| x - x.floor();
    let mut best = (0.0, 0.0, -1.0);
    for iu in 0..20 {
        for iv in 0..20 {
            let (u, v) = (iu as f64 / 20.0, iv as f64 / 20.0);
            let m = coords
                .iter()
                .map(|(x, y)| {
                    let fx = frac(x - u);
                    let fy = frac(y - v);
                    fx.min(1.0 - fx).min(fy).min(1.0 - fy)
                })
                .fold(1.0f64, f64::min);
            if m > best.2 {
                best = (u, v, m);
            }
        }
    }
    let base = C64::new(best.0, 0.0) + tau * best.1;
    let corners = [base, base + 1.0, base + 1.0 + tau, base + tau];
    let g = |z: C64| p.log_derivative(th, z);
    let mut s = C64::new(0.0, 0.0);
    for i in 0..4 {
        s += contour::segment_integral(&g, corners[i], corners[(i + 1) % 4], 48, 16);
    }
    s / (I * 2.0 * PI)
}

/// Zero count and zero sum of an entire function `f` over a translate of
/// the fundamental parallelogram, from `(1/2πi)∮ f'/f` and
/// `(1/2πi)∮ z f'/f`. The zeros need not be known: the translate is the
/// one among a 6×6 grid of offsets whose boundary keeps `|f|` largest,
/// and `f` supplies its own derivative as the second component.
pub fn contour_zero_moments(th: &ThetaEvaluator, f: &dyn Fn(C64) -> (C64, C64)) -> (C64, C64) {
    let tau = th.tau();
    let boundary = |base: C64, t: f64| -> C64 {
        let c = [base, base + 1.0, base + 1.0 + tau, base + tau];
        let side = ((t * 4.0).floor() as usize).min(3);
        let u = t * 4.0 - side as f64;
        c[side] + (c[(side + 1) % 4] - c[side]) * u
    };
    let mut best = (C64::new(0.0, 0.0), -1.0);
    for iu in 0..6 {
        for iv in 0..6 {
            let base = C64::new(iu as f64 / 6.0 - 0.5, 0.0) + tau * (iv as f64 / 6.0 - 0.5);
            let m = (0..400).map(|j| f(boundary(base, j as f64 / 400.0)).0.norm()).fold(f64::INFINITY, f64::min);
            if m > best.1 {
                best = (base, m);
            }
        }
    }
    let base = best.0;
    let log_d = |z: C64| {
        let (v, d) = f(z);
        d / v
    };
    let corners = [base, base + 1.0, base + 1.0 + tau, base + tau];
    // both moments from one pass
    let (x, w) = contour::gauss_legendre(16);
    let (mut n, mut s) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for i in 0..4 {
        let (a, b) = (corners[i], corners[(i + 1) % 4]);
        let h = (b - a) / 48.0;
        for p in 0..48 {
            let lo = a + h * p as f64;
            for (xi, wi) in x.iter().zip(&w) {
                let z = lo + h * (0.5 * (xi + 1.0));
                let g = log_d(z) * h * (0.5 * wi);
                n += g;
                s += z * g;
            }
        }
    }
    (n / (I * 2.0 * PI), s / (I * 2.0 * PI))
}

/// The unique `f ∈ Θ_k(χ)` through `k` nodes.
#[derive(Clone, Debug)]
pub struct ThetaInterpolant {
    pub k: usize,
    pub chi: Character,
    pub nodes: Vec<C64>,
    pub values: Vec<C64>,
    pub a: C64,
    pub b: C64,
    th_b: C64,
    denoms: Vec<C64>,
}

pub fn interpolate(th: &ThetaEvaluator, k: usize, chi: &Character, nodes: &[C64], values: &[C64]) -> Result<ThetaInterpolant> {
    if k == 0 || nodes.len() != k || values.len() != k {
        return Err(Error::InvalidArgument(format!("need k >= 1 nodes and values, got k={k}, {} nodes, {} values", nodes.len(), values.len())));
    }
    let lat = th.lattice();
    for i in 0..k {
        for j in 0..i {
            if lat.dist(nodes[i] - nodes[j]) < th.rho() {
                return Err(Error::DegenerateNodes(format!("nodes {j} and {i} coincide mod lattice")));
            }
        }
    }
    let tau = th.tau();
    let l1 = chi.chi1.ln();
    let lt = chi.chi_tau.ln();
    let kk = k as f64;
    let sz: C64 = nodes.iter().sum();
    let a = l1 / (I * 2.0 * PI) - kk / 2.0;
    let b = (tau * l1 - lt) / (I * 2.0 * PI) + sz - delta(tau) * kk;
    let th_b = th.th(b);
    if lat.dist(b) < th.rho() {
        return Err(Error::ResonantCharacter(th_b.norm()));
    }
    let denoms = (0..k)
        .map(|j| (0..k).filter(|&l| l != j).fold(C64::new(1.0, 0.0), |acc, l| acc * th.th(nodes[j] - nodes[l])))
        .collect();
    Ok(ThetaInterpolant { k, chi: *chi, nodes: nodes.to_vec(), values: values.to_vec(), a, b, th_b, denoms })
}

impl ThetaInterpolant {
    /// Cardinal function `j`: equals 1 at node `j`, 0 at the others.
    pub fn cardinal(&self, th: &ThetaEvaluator, j: usize, z: C64) -> C64 {
        let zj = self.nodes[j];
        let mut v = (I * 2.0 * PI * self.a * (z - zj)).exp() * th.th(z - zj + self.b) / self.th_b;
        for l in 0..self.k {
            if l != j {
                v *= th.th(z - self.nodes[l]);
            }
        }
        v / self.denoms[j]
    }

    pub fn eval(&self, th: &ThetaEvaluator, z: C64) -> C64 {
        (0..self.k).map(|j| self.values[j] * self.cardinal(th, j, z)).sum()
    }

    /// Value and first derivative.
    pub fn eval_d(&self, th: &ThetaEvaluator, z: C64) -> (C64, C64) {
        // theta and theta' at every shift the cardinals use
        let shifts: Vec<Vec<C64>> = self.nodes.iter().map(|w| th.th_derivs(z - w, 1)).collect();
        let (mut f, mut df) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for j in 0..self.k {
            let zj = self.nodes[j];
            let e = (I * 2.0 * PI * self.a * (z - zj)).exp();
            let tb = th.th_derivs(z - zj + self.b, 1);
            let (mut v, mut dv) = (e * tb[0], e * (tb[1] + I * 2.0 * PI * self.a * tb[0]));
            for (l, t) in shifts.iter().enumerate() {
                if l != j {
                    dv = dv * t[0] + v * t[1];
                    v *= t[0];
                }
            }
            let c = self.values[j] / (self.th_b * self.denoms[j]);
            f += c * v;
            df += c * dv;
        }
        (f, df)
    }
}

/// Basis of `Θ_k(χ)` made of the cardinal functions at `k` fixed nodes.
#[derive(Clone, Debug)]
pub struct ThetaSpaceBasis {
    pub interp: ThetaInterpolant,
}

impl ThetaSpaceBasis {
    pub fn new(th: &ThetaEvaluator, k: usize, chi: &Character, sampler: &mut Sampler) -> Result<Self> {
        let nodes = generic_nodes(th, k, chi, sampler, &[]);
        let interp = interpolate(th, k, chi, &nodes, &vec![C64::new(0.0, 0.0); k])?;
        Ok(ThetaSpaceBasis { interp })
    }

    pub fn dim(&self) -> usize {
        self.interp.k
    }

    pub fn eval_basis(&self, th: &ThetaEvaluator, l: usize, z: C64) -> C64 {
        self.interp.cardinal(th, l, z)
    }

    /// Coefficients `c` with `Σ c_l g_l(x_i) = y_i`.
    pub fn coefficients(&self, th: &ThetaEvaluator, xs: &[C64], ys: &[C64]) -> Result<Vec<C64>> {
        let k = self.dim();
        let m = linalg::from_fn(k, k, |i, l| self.eval_basis(th, l, xs[i]));
        let c = linalg::solve(&m, &linalg::col(ys))?;
        Ok(linalg::col_vec(&c))
    }

    pub fn eval_combination(&self, th: &ThetaEvaluator, c: &[C64], z: C64) -> C64 {
        c.iter().enumerate().map(|(l, cl)| cl * self.eval_basis(th, l, z)).sum()
    }
}

/// `k` generic nodes in the fundamental domain: pairwise separated, away
/// from `avoid`, and off the resonant locus of the interpolation formula.
pub fn generic_nodes(th: &ThetaEvaluator, k: usize, chi: &Character, sampler: &mut Sampler, avoid: &[C64]) -> Vec<C64> {
    let lat = *th.lattice();
    let tau = th.tau();
    loop {
        let mut nodes: Vec<C64> = Vec::with_capacity(k);
        while nodes.len() < k {
            let z = sampler.complex(tau * 0.5 + 0.5, 0.5, 0.5 * tau.im);
            let ok = nodes.iter().chain(avoid).all(|w| lat.dist(z - w) > 4.0 * SAMPLE_MARGIN);
            if ok {
                nodes.push(z);
            }
        }
        let sz: C64 = nodes.iter().sum();
        let b = (tau * chi.chi1.ln() - chi.chi_tau.ln()) / (I * 2.0 * PI) + sz - delta(tau) * k as f64;
        if lat.dist(b) > 2.0 * SAMPLE_MARGIN {
            return nodes;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    /// max relative deviation from the interpolant at validation points
    pub interpolation_residual: f64,
    pub quasi_residual_one: f64,
    pub quasi_residual_tau: f64,
    pub tol: f64,
    pub pass: bool,
}

/// Tests whether `f ∈ Θ_k(χ)` by interpolating through `k` generic nodes
/// and comparing at `k` further points, plus direct quasi-periodicity.
pub fn membership_test(th: &ThetaEvaluator, f: &dyn Fn(C64) -> C64, k: usize, chi: &Character, sampler: &mut Sampler, tol: f64) -> Result<MembershipReport> {
    let nodes = generic_nodes(th, k, chi, sampler, &[]);
    let vals: Vec<C64> = nodes.iter().map(|z| f(*z)).collect();
    let interp = interpolate(th, k, chi, &nodes, &vals)?;
    let lat = *th.lattice();
    let tau = th.tau();
    let mut checks = Vec::with_capacity(k);
    while checks.len() < k {
        let z = sampler.complex(tau * 0.5 + 0.5, 0.5, 0.5 * tau.im);
        if nodes.iter().all(|w| lat.dist(z - w) > SAMPLE_MARGIN) {
            checks.push(z);
        }
    }
    let fv: Vec<C64> = checks.iter().map(|z| f(*z)).collect();
    let scale = vals.iter().chain(&fv).map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let interpolation_residual = checks.iter().zip(&fv).map(|(z, v)| (v - interp.eval(th, *z)).norm()).fold(0.0, f64::max) / scale;
    let qp: Vec<C64> = (0..5).map(|_| sampler.complex(C64::new(0.0, 0.0), 1.0, tau.im)).collect();
    let (quasi_residual_one, quasi_residual_tau) = quasi_periodicity_residual(th, f, k, chi, &qp);
    let pass = interpolation_residual <= tol && quasi_residual_one <= tol && quasi_residual_tau <= tol;
    Ok(MembershipReport { interpolation_residual, quasi_residual_one, quasi_residual_tau, tol, pass })
}

/// Elliptic polynomial solution `Q(z) = e^{az}∏θ(z - w_j)` of
/// `A_+(z)Q(z-γ) + A_-(z)Q(z+γ) = ε(z)Q(z)`.
#[derive(Clone, Debug)]
pub struct DifferenceBethe {
    pub a: C64,
    pub w: Vec<C64>,
    pub gamma: C64,
    pub a_plus: EllipticPoly,
    pub a_minus: EllipticPoly,
    pub q: EllipticPoly,
    pub residual: f64,
    pub iterations: usize,
}

impl DifferenceBethe {
    /// `ε(z) = (A_+(z)Q(z-γ) + A_-(z)Q(z+γ))/Q(z)`.
    pub fn eps(&self, th: &ThetaEvaluator, z: C64) -> C64 {
        let g = self.gamma;
        (self.a_plus.eval(th, z) * self.q.eval(th, z - g) + self.a_minus.eval(th, z) * self.q.eval(th, z + g)) / self.q.eval(th, z)
    }

    /// Character of `ε`: that of `A_+` with `χ(τ)` times `e^{2πimγ}`.
    pub fn eps_character(&self, tau: C64) -> Character {
        let c = character_of(&self.a_plus, tau);
        Character { chi1: c.chi1, chi_tau: c.chi_tau * (I * 2.0 * PI * self.w.len() as f64 * self.gamma).exp() }
    }

    /// `A_+(w_i)e^{-γa}∏_j θ(w_i-w_j-γ) + A_-(w_i)e^{γa}∏_j θ(w_i-w_j+γ)`,
    /// products over all `j`; max modulus over `i`.
    pub fn verification_residual(&self, th: &ThetaEvaluator) -> f64 {
        let g = self.gamma;
        (0..self.w.len())
            .map(|i| {
                let wi = self.w[i];
                let p = self.w.iter().fold(C64::new(1.0, 0.0), |acc, wj| acc * th.th(wi - wj - g));
                let m = self.w.iter().fold(C64::new(1.0, 0.0), |acc, wj| acc * th.th(wi - wj + g));
                (self.a_plus.eval(th, wi) * (-g * self.a).exp() * p + self.a_minus.eval(th, wi) * (g * self.a).exp() * m).norm()
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
#[derive(Default)]
pub struct DifferenceBetheOptions {
    pub newton: NewtonOptions,
    /// Keep `a` at its seed value and solve for `w` only.
    pub fix_a: bool,
}


/// Solves `A_+(w_i)∏_{j≠i}θ(w_i-w_j-γ) = e^{2aγ}A_-(w_i)∏_{j≠i}θ(w_i-w_j+γ)`
/// for `(a, w_1..w_m)` by damped Newton from `seed`. With `a` free the
/// system has one more unknown than equations and Newton takes
/// minimum-norm steps.
#[allow(clippy::too_many_arguments)]
pub fn solve_difference_bethe(
    th: &ThetaEvaluator,
    k: usize,
    a_plus: &EllipticPoly,
    a_minus: &EllipticPoly,
    gamma: C64,
    m: usize,
    seed: (C64, &[C64]),
    opts: &DifferenceBetheOptions,
) -> Result<DifferenceBethe> {
    let tau = th.tau();
    let lat = *th.lattice();
    if a_plus.order() != k || a_minus.order() != k {
        return Err(Error::InvalidArgument(format!("A_+ and A_- must have level {k}")));
    }
    if seed.1.len() != m {
        return Err(Error::InvalidArgument(format!("seed has {} roots, expected {m}", seed.1.len())));
    }
    th.check_pole("solve_difference_bethe: gamma", gamma)?;
    let cp = character_of(a_plus, tau);
    let cm = character_of(a_minus, tau);
    let target = Character { chi1: cm.chi1, chi_tau: cm.chi_tau * (-I * 4.0 * PI * gamma * m as f64).exp() };
    if cp.distance(&target) > 1e-8 {
        return Err(Error::IncompatibleCharacters(format!("chi_+ = ({}, {}) but chi_- e^(-4 pi i gamma m) = ({}, {})", cp.chi1, cp.chi_tau, target.chi1, target.chi_tau)));
    }
    let fix_a = opts.fix_a;
    let a_seed = seed.0;
    let off = if fix_a { 0 } else { 1 };
    let system = |x: &[C64]| {
        let a = if fix_a { a_seed } else { x[0] };
        let w = &x[off..];
        let e2 = (a * gamma * 2.0).exp();
        let mut f = vec![C64::new(0.0, 0.0); m];
        let mut j = linalg::zeros(m, m + off);
        for i in 0..m {
            let wi = w[i];
            let (ap, dap) = a_plus.eval_d(th, wi);
            let (am, dam) = a_minus.eval_d(th, wi);
            // products and their partial derivatives
            let mut pp = C64::new(1.0, 0.0);
            let mut pm = C64::new(1.0, 0.0);
            let mut dp = vec![C64::new(0.0, 0.0); m];
            let mut dm = vec![C64::new(0.0, 0.0); m];
            for l in 0..m {
                if l == i {
                    continue;
                }
                let tp = th.th_derivs(wi - w[l] - gamma, 1);
                let tm = th.th_derivs(wi - w[l] + gamma, 1);
                for q in 0..m {
                    dp[q] *= tp[0];
                    dm[q] *= tm[0];
                }
                dp[i] += pp * tp[1];
                dp[l] -= pp * tp[1];
                dm[i] += pm * tm[1];
                dm[l] -= pm * tm[1];
                pp *= tp[0];
                pm *= tm[0];
            }
            f[i] = ap * pp - e2 * am * pm;
            if !fix_a {
                j[(i, 0)] = -e2 * am * pm * gamma * 2.0;
            }
            for q in 0..m {
                let mut v = ap * dp[q] - e2 * am * dm[q];
                if q == i {
                    v += dap * pp - e2 * dam * pm;
                }
                j[(i, q + off)] = v;
            }
        }
        (f, j)
    };
    let mut x0 = Vec::with_capacity(m + 1);
    if !fix_a {
        x0.push(seed.0);
    }
    x0.extend_from_slice(seed.1);
    let sol = damped_newton(system, &x0, &opts.newton)?;
    let a = if fix_a { a_seed } else { sol.x[0] };
    let w = sol.x[off..].to_vec();
    for i in 0..m {
        for l in 0..i {
            if lat.dist(w[i] - w[l]) < th.rho() {
                return Err(Error::InvalidSolution(format!("roots w_{l} and w_{i} coincide mod lattice")));
            }
        }
    }
    let q = EllipticPoly::new(&lat, a, &w);
    Ok(DifferenceBethe { a, w, gamma, a_plus: a_plus.clone(), a_minus: a_minus.clone(), q, residual: sol.residual, iterations: sol.iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ev() -> ThetaEvaluator {
        ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07)).unwrap()).unwrap()
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_poly(th: &ThetaEvaluator, s: &mut Sampler, m: usize) -> EllipticPoly {
        let zs: Vec<C64> = (0..m).map(|_| s.complex(c(0.0, 0.0), 2.0, 2.0)).collect();
        let a = s.complex(c(0.0, 0.0), 1.0, 1.0);
        EllipticPoly::new(th.lattice(), a, &zs)
    }

    #[test]
    fn constant_and_zero() {
        let th = ev();
        let p = EllipticPoly::new(th.lattice(), c(0.0, 0.0), &[]);
        assert_eq!(p.eval(&th, c(0.3, 0.7)), c(1.0, 0.0));
        let w = c(0.2, 0.4);
        let p = EllipticPoly::new(th.lattice(), c(0.3, 0.0), &[w]);
        assert!(p.eval(&th, w).norm() < 1e-15);
    }

    #[test]
    fn reduction_preserves_function() {
        let th = ev();
        let zs = [c(2.3, 2.5), c(-1.1, -0.9)];
        let a = c(0.2, -0.1);
        let p = EllipticPoly::new(th.lattice(), a, &zs);
        for z in [c(0.1, 0.2), c(-0.4, 0.9)] {
            let direct = (a * z).exp() * th.th(z - zs[0]) * th.th(z - zs[1]);
            assert!((p.eval(&th, z) - direct).norm() < 1e-10 * direct.norm());
        }
        assert!(p.zeros.iter().all(|w| w.im >= -1e-12 && w.im < th.tau().im));
    }

    #[test]
    fn character_of_single_theta() {
        let th = ev();
        let p = EllipticPoly::new(th.lattice(), c(0.0, 0.0), &[c(0.0, 0.0)]);
        let chi = character_of(&p, th.tau());
        assert!((chi.chi1 + 1.0).norm() < 1e-15 && (chi.chi_tau + 1.0).norm() < 1e-15);
    }

    #[test]
    fn character_matches_evaluation() {
        let th = ev();
        let mut s = Sampler::new(11);
        for m in 1..5 {
            let p = random_poly(&th, &mut s, m);
            let chi = character_of(&p, th.tau());
            let pts: Vec<C64> = (0..4).map(|_| s.complex(c(0.0, 0.0), 1.0, 1.0)).collect();
            let (r1, rt) = quasi_periodicity_residual(&th, &|z| p.eval(&th, z), m, &chi, &pts);
            assert!(r1 < 1e-11 && rt < 1e-11, "m={m}: {r1} {rt}");
            // φ(χ) = Σw - m(1+τ)/2 mod Γ
            let sw: C64 = p.zeros.iter().sum();
            assert!(th.lattice().dist(chi.phi(th.tau()) - sw + delta(th.tau()) * m as f64) < 1e-10);
            assert!(zero_sum_residual(&p, th.lattice()) < 1e-10);
        }
    }

    #[test]
    fn zero_count_equals_level() {
        let th = ev();
        let mut s = Sampler::new(5);
        for m in 1..6 {
            let p = random_poly(&th, &mut s, m);
            let n = zero_count(&p, &th);
            assert!((n - m as f64).norm() < 1e-6, "m={m}: {n}");
        }
    }

    #[test]
    fn interpolation_single_node() {
        let th = ev();
        let chi = Character::new(c(-1.0, 0.0), c(0.3, 0.9)).unwrap();
        let f = interpolate(&th, 1, &chi, &[c(0.2, 0.3)], &[c(1.5, -0.5)]).unwrap();
        assert!((f.eval(&th, c(0.2, 0.3)) - c(1.5, -0.5)).norm() < 1e-14);
    }

    #[test]
    fn zero_data_gives_zero_function() {
        let th = ev();
        let mut s = Sampler::new(3);
        let chi = Character::new(c(0.4, 0.2), c(-0.7, 1.1)).unwrap();
        let nodes = generic_nodes(&th, 3, &chi, &mut s, &[]);
        let f = interpolate(&th, 3, &chi, &nodes, &[c(0.0, 0.0); 3]).unwrap();
        for _ in 0..10 {
            assert_eq!(f.eval(&th, s.complex(c(0.0, 0.0), 1.0, 1.0)), c(0.0, 0.0));
        }
    }

    #[test]
    fn interpolant_agrees_with_basis_solve() {
        let th = ev();
        let mut s = Sampler::new(21);
        let chi = Character::new(c(0.4, 0.2), c(-0.7, 1.1)).unwrap();
        let nodes = generic_nodes(&th, 3, &chi, &mut s, &[]);
        let vals = [c(1.0, 0.5), c(-0.3, 0.2), c(0.7, -1.1)];
        let f = interpolate(&th, 3, &chi, &nodes, &vals).unwrap();
        for (z, v) in nodes.iter().zip(&vals) {
            assert!((f.eval(&th, *z) - v).norm() < 1e-10);
        }
        let basis = ThetaSpaceBasis::new(&th, 3, &chi, &mut s).unwrap();
        let coef = basis.coefficients(&th, &nodes, &vals).unwrap();
        let z4 = c(0.77, 0.31);
        let a = f.eval(&th, z4);
        let b = basis.eval_combination(&th, &coef, z4);
        assert!((a - b).norm() < 1e-9 * a.norm().max(1.0));
        let pts: Vec<C64> = (0..4).map(|_| s.complex(c(0.0, 0.0), 1.0, 1.0)).collect();
        let (r1, rt) = quasi_periodicity_residual(&th, &|z| f.eval(&th, z), 3, &chi, &pts);
        assert!(r1 < 1e-10 && rt < 1e-10);
    }

    #[test]
    fn branch_choice_does_not_matter() {
        let th = ev();
        let mut s = Sampler::new(8);
        let chi = Character::new(c(0.4, 0.2), c(-0.7, 1.1)).unwrap();
        let nodes = generic_nodes(&th, 2, &chi, &mut s, &[]);
        let vals = [c(1.0, 0.0), c(0.0, 1.0)];
        let f = interpolate(&th, 2, &chi, &nodes, &vals).unwrap();
        // another branch of the logs: shift a by an integer, b by a lattice vector
        let mut g = f.clone();
        g.a += 1.0;
        g.b += th.tau();
        g.th_b = th.th(g.b);
        for _ in 0..5 {
            let z = s.complex(c(0.0, 0.0), 1.0, 1.0);
            assert!((f.eval(&th, z) - g.eval(&th, z)).norm() < 1e-9 * f.eval(&th, z).norm().max(1.0));
        }
    }

    #[test]
    fn degenerate_and_resonant_inputs() {
        let th = ev();
        let chi = Character::new(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(interpolate(&th, 2, &chi, &[c(0.1, 0.1), c(1.1, 0.1)], &[c(1.0, 0.0); 2]), Err(Error::DegenerateNodes(_))));
        // k=1, χ trivial: b = z1 - δ; put z1 = δ
        let d = delta(th.tau());
        assert!(matches!(interpolate(&th, 1, &chi, &[d], &[c(1.0, 0.0)]), Err(Error::ResonantCharacter(_))));
    }

    #[test]
    fn interpolant_zeros_sum_to_character_point() {
        let th = ev();
        let mut s = Sampler::new(31);
        let chi = Character::new(c(0.4, 0.2), c(-0.7, 1.1)).unwrap();
        for k in 1..4 {
            let nodes = generic_nodes(&th, k, &chi, &mut s, &[]);
            let vals: Vec<C64> = (0..k).map(|_| s.complex(c(0.0, 0.0), 1.0, 1.0)).collect();
            let f = interpolate(&th, k, &chi, &nodes, &vals).unwrap();
            let (n, sum) = contour_zero_moments(&th, &|z| f.eval_d(&th, z));
            assert!((n - k as f64).norm() < 1e-8, "k={k}: {n}");
            let target = chi.phi(th.tau()) + delta(th.tau()) * k as f64;
            assert!(th.lattice().dist(sum - target) < 1e-8, "k={k}: {sum} vs {target}");
        }
    }

    #[test]
    fn interpolant_derivative_matches_cauchy() {
        let th = ev();
        let mut s = Sampler::new(12);
        let chi = Character::new(c(0.9, -0.3), c(0.2, 0.5)).unwrap();
        let nodes = generic_nodes(&th, 3, &chi, &mut s, &[]);
        let f = interpolate(&th, 3, &chi, &nodes, &[c(1.0, 0.5), c(-0.3, 0.0), c(0.2, 2.0)]).unwrap();
        for _ in 0..5 {
            let z = s.complex(c(0.0, 0.0), 1.0, 1.0);
            let (v, d) = f.eval_d(&th, z);
            let cauchy = contour::taylor_coefficients(|w| f.eval(&th, w), z, 0.05, 32, 1);
            assert!((v - f.eval(&th, z)).norm() < 1e-13 * v.norm().max(1.0));
            assert!((d - cauchy[1]).norm() < 1e-10 * d.norm().max(1.0), "{d} vs {}", cauchy[1]);
        }
    }

    #[test]
    fn membership_accepts_and_rejects() {
        let th = ev();
        let mut s = Sampler::new(4);
        let p = random_poly(&th, &mut s, 3);
        let chi = character_of(&p, th.tau());
        let rep = membership_test(&th, &|z| p.eval(&th, z), 3, &chi, &mut s, 1e-8).unwrap();
        assert!(rep.pass, "{rep:?}");
        // θ(z)^k with a deliberately wrong χ(τ)
        let t3 = EllipticPoly::new(th.lattice(), c(0.0, 0.0), &[c(0.0, 0.0); 3]);
        let mut bad = character_of(&t3, th.tau());
        bad.chi_tau *= (I * 2.0 * PI * 0.1).exp();
        let rep = membership_test(&th, &|z| t3.eval(&th, z), 3, &bad, &mut s, 1e-8).unwrap();
        assert!(!rep.pass);
    }

    fn a_pm(th: &ThetaEvaluator, zs: &[C64], ls: &[f64], eta: C64) -> (EllipticPoly, EllipticPoly) {
        let p: Vec<C64> = zs.iter().zip(ls).map(|(z, l)| -z - eta * *l).collect();
        let m: Vec<C64> = zs.iter().zip(ls).map(|(z, l)| -z + eta * *l).collect();
        (EllipticPoly::new(th.lattice(), c(0.0, 0.0), &p), EllipticPoly::new(th.lattice(), c(0.0, 0.0), &m))
    }

    #[test]
    fn difference_bethe_solution() {
        let th = ev();
        let eta = c(0.137, 0.041);
        let zs = [c(0.21, 0.05), c(0.57, -0.11)];
        let (ap, am) = a_pm(&th, &zs, &[1.0, 1.0], eta);
        let gamma = eta * 2.0;
        let sol = solve_difference_bethe(&th, 2, &ap, &am, gamma, 1, (c(0.3, 0.1), &[c(0.1, 0.3)]), &DifferenceBetheOptions::default()).unwrap();
        assert!(sol.residual <= 1e-10);
        assert!(sol.verification_residual(&th) < 1e-9);
        let mut s = Sampler::new(2);
        let chi = sol.eps_character(th.tau());
        let rep = membership_test(&th, &|z| sol.eps(&th, z), 2, &chi, &mut s, 1e-8).unwrap();
        assert!(rep.pass, "{rep:?}");
        // the difference equation itself
        for _ in 0..10 {
            let z = s.complex(c(0.0, 0.0), 1.0, 1.0);
            let lhs = ap.eval(&th, z) * sol.q.eval(&th, z - gamma) + am.eval(&th, z) * sol.q.eval(&th, z + gamma);
            let rhs = sol.eps(&th, z) * sol.q.eval(&th, z);
            assert!((lhs - rhs).norm() < 1e-9 * lhs.norm().max(1.0));
        }
    }

    #[test]
    fn difference_bethe_incompatible_characters() {
        let th = ev();
        let eta = c(0.137, 0.041);
        let zs = [c(0.21, 0.05), c(0.57, -0.11)];
        let (ap, _) = a_pm(&th, &zs, &[1.0, 1.0], eta);
        let r = solve_difference_bethe(&th, 2, &ap, &ap, eta * 2.0, 1, (c(0.0, 0.0), &[c(0.1, 0.3)]), &DifferenceBetheOptions::default());
        assert!(matches!(r, Err(Error::IncompatibleCharacters(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn interpolation_uniqueness(seed in 0u64..1000) {
            let th = ev();
            let mut s = Sampler::new(seed);
            let p = random_poly(&th, &mut s, 2);
            let chi = character_of(&p, th.tau());
            let n1 = generic_nodes(&th, 2, &chi, &mut s, &[]);
            let n2 = generic_nodes(&th, 2, &chi, &mut s, &[]);
            let f1 = interpolate(&th, 2, &chi, &n1, &[p.eval(&th, n1[0]), p.eval(&th, n1[1])]).unwrap();
            let f2 = interpolate(&th, 2, &chi, &n2, &[p.eval(&th, n2[0]), p.eval(&th, n2[1])]).unwrap();
            for _ in 0..20 {
                let z = s.complex(c(0.5, 0.5), 0.5, 0.5);
                let (a, b) = (f1.eval(&th, z), f2.eval(&th, z));
                prop_assert!((a - b).norm() <= 1e-9 * a.norm().max(b.norm()).max(1e-3));
            }
        }
    }
}
