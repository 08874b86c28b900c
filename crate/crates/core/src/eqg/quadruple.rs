//! The operators `a(z), b(z), c(z), d(z)` acting on functions of `λ` with
//! values in functions on `S₀`.

use super::grid::Grid;
use super::shift::ShiftOperator;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::params::ModelParams;
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// Coefficient functions of the operators for continuous `x`.
#[derive(Clone, Debug)]
pub struct Coefficients {
    params: ModelParams,
}

impl Coefficients {
    pub fn new(params: ModelParams) -> Self {
        Coefficients { params }
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    fn th(&self, z: C64) -> C64 {
        self.params.th().th(z)
    }

    /// `Δ₊(v) = ∏ θ(v - z_k - Λ_k η)`.
    pub fn delta_plus(&self, v: C64) -> C64 {
        let eta = self.params.eta();
        self.params.sites().iter().map(|s| self.th(v - s.z - eta * s.lambda as f64)).product()
    }

    /// `Δ₋(v) = ∏ θ(v - z_k + Λ_k η)`.
    pub fn delta_minus(&self, v: C64) -> C64 {
        let eta = self.params.eta();
        self.params.sites().iter().map(|s| self.th(v - s.z + eta * s.lambda as f64)).product()
    }

    /// `Σ (x_i + z_i)`.
    pub fn s(&self, x: &[C64]) -> C64 {
        x.iter().zip(self.params.sites()).map(|(x, s)| x + s.z).sum()
    }

    fn cross(&self, z: C64, x: &[C64], i: usize) -> C64 {
        (0..x.len()).filter(|&j| j != i).map(|j| self.th(z + x[j]) / self.th(x[i] - x[j])).product()
    }

    /// `a(z)u(λ, x) = A u(λ - 2η, x)`.
    pub fn a(&self, z: C64, lambda: C64, x: &[C64]) -> C64 {
        let eta = self.params.eta();
        let shift: C64 = x.iter().zip(self.params.sites()).map(|(x, s)| x + s.z + eta * s.lambda as f64).sum();
        x.iter().map(|xi| self.th(z + xi)).product::<C64>() * self.th(lambda + shift) / self.th(lambda)
    }

    /// Term `i` of `b(z)`: reads `u(λ + 2η, x - 2η e_i)`.
    pub fn b(&self, z: C64, lambda: C64, x: &[C64], i: usize) -> C64 {
        -self.th(lambda + z + x[i]) / self.th(lambda) * self.cross(z, x, i) * self.delta_plus(-x[i])
    }

    /// Term `i` of `c(z)`: reads `u(λ - 2η, x + 2η e_i)`.
    pub fn c(&self, z: C64, lambda: C64, x: &[C64], i: usize) -> C64 {
        let s = self.s(x);
        -self.th(-lambda + z + x[i] - s * 2.0) / self.th(lambda) * self.cross(z, x, i) * self.delta_minus(-x[i])
    }

    /// `(b(z) + c(z))u` at `(λ, x)` for a function `u(λ, x)`.
    pub fn apply_bc(&self, z: C64, u: &dyn Fn(C64, &[C64]) -> C64, lambda: C64, x: &[C64]) -> (C64, C64) {
        let e2 = self.params.eta() * 2.0;
        let mut b = C64::new(0.0, 0.0);
        let mut c = C64::new(0.0, 0.0);
        for i in 0..x.len() {
            let mut y = x.to_vec();
            y[i] -= e2;
            b += self.b(z, lambda, x, i) * u(lambda + e2, &y);
            y[i] += e2 * 2.0;
            c += self.c(z, lambda, x, i) * u(lambda - e2, &y);
        }
        (b, c)
    }

    /// `Det(z) = ∏ θ(z - z_i - Λ_i η) θ(z - z_i + Λ_i η + 2η)`.
    pub fn det(&self, z: C64) -> C64 {
        let eta = self.params.eta();
        self.params
            .sites()
            .iter()
            .map(|s| {
                let l = eta * s.lambda as f64;
                self.th(z - s.z - l) * self.th(z - s.z + l + eta * 2.0)
            })
            .product()
    }
}

/// Magnitudes of the coefficients that would read values off `S₀`.
#[derive(Clone, Debug, Default)]
pub struct BoundaryReport {
    /// Largest `|coefficient|` of `b`, `c` at forbidden reads.
    pub b_forbidden: f64,
    pub c_forbidden: f64,
    /// Largest allowed coefficient, for scale.
    pub scale: f64,
    /// At the boundary reads: `(max |Δ₊(-x_i)|, max |Δ₋(-x_i)|)` for `b`
    /// and for `c`.
    pub b_deltas: (f64, f64),
    pub c_deltas: (f64, f64),
}

#[derive(Clone)]
pub struct OperatorQuadruple {
    coef: Arc<Coefficients>,
    grid: Arc<Grid>,
}

impl OperatorQuadruple {
    pub fn new(params: &ModelParams) -> Self {
        OperatorQuadruple { coef: Arc::new(Coefficients::new(params.clone())), grid: Arc::new(Grid::new(&params.lambdas())) }
    }

    pub fn params(&self) -> &ModelParams {
        self.coef.params()
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coef
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.grid.len()
    }

    fn eta(&self) -> C64 {
        self.params().eta()
    }

    /// Diagonal of `h`.
    pub fn h_diag(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.grid.h(k) as f64).collect()
    }

    pub fn a_coef(&self, z: C64, lambda: C64) -> CMat {
        let p = self.params();
        let d: Vec<C64> = (0..self.dim()).map(|k| self.coef.a(z, lambda, &self.grid.x(p, k))).collect();
        linalg::diag(&d)
    }

    fn hopping(&self, z: C64, lambda: C64, raise: bool, report: Option<&mut BoundaryReport>) -> CMat {
        let p = self.params();
        let n = self.dim();
        let mut m = linalg::zeros(n, n);
        let mut rep = BoundaryReport::default();
        for t in 0..n {
            let x = self.grid.x(p, t);
            for i in 0..x.len() {
                let (val, src) = if raise {
                    (self.coef.c(z, lambda, &x, i), self.grid.neighbour(t, i, 1))
                } else {
                    (self.coef.b(z, lambda, &x, i), self.grid.neighbour(t, i, -1))
                };
                match src {
                    Some(s) => {
                        m[(t, s)] += val;
                        rep.scale = rep.scale.max(val.norm());
                    }
                    None => {
                        let dp = self.coef.delta_plus(-x[i]).norm();
                        let dm = self.coef.delta_minus(-x[i]).norm();
                        if raise {
                            rep.c_forbidden = rep.c_forbidden.max(val.norm());
                            rep.c_deltas = (rep.c_deltas.0.max(dp), rep.c_deltas.1.max(dm));
                        } else {
                            rep.b_forbidden = rep.b_forbidden.max(val.norm());
                            rep.b_deltas = (rep.b_deltas.0.max(dp), rep.b_deltas.1.max(dm));
                        }
                    }
                }
            }
        }
        if let Some(r) = report {
            r.scale = r.scale.max(rep.scale);
            r.b_forbidden = r.b_forbidden.max(rep.b_forbidden);
            r.c_forbidden = r.c_forbidden.max(rep.c_forbidden);
            r.b_deltas = (r.b_deltas.0.max(rep.b_deltas.0), r.b_deltas.1.max(rep.b_deltas.1));
            r.c_deltas = (r.c_deltas.0.max(rep.c_deltas.0), r.c_deltas.1.max(rep.c_deltas.1));
        }
        m
    }

    pub fn b_coef(&self, z: C64, lambda: C64) -> CMat {
        self.hopping(z, lambda, false, None)
    }

    pub fn c_coef(&self, z: C64, lambda: C64) -> CMat {
        self.hopping(z, lambda, true, None)
    }

    pub fn boundary_report(&self, z: C64, lambda: C64) -> BoundaryReport {
        let mut r = BoundaryReport::default();
        self.hopping(z, lambda, false, Some(&mut r));
        self.hopping(z, lambda, true, Some(&mut r));
        r
    }

    pub fn a(&self, z: C64) -> ShiftOperator {
        let q = self.clone();
        ShiftOperator::single(self.dim(), self.eta(), -1, move |l| q.a_coef(z, l))
    }

    pub fn b(&self, z: C64) -> ShiftOperator {
        let q = self.clone();
        ShiftOperator::single(self.dim(), self.eta(), 1, move |l| q.b_coef(z, l))
    }

    pub fn c(&self, z: C64) -> ShiftOperator {
        let q = self.clone();
        ShiftOperator::single(self.dim(), self.eta(), -1, move |l| q.c_coef(z, l))
    }

    /// Multiplication by `θ(λ - 2ηh)/θ(λ)`.
    pub fn dynamical_factor(&self) -> ShiftOperator {
        let q = self.clone();
        ShiftOperator::multiplication(self.dim(), self.eta(), move |l| {
            let th = q.params().th();
            let e2 = q.eta() * 2.0;
            linalg::diag(&q.h_diag().iter().map(|h| th.th(l - e2 * *h) / th.th(l)).collect::<Vec<_>>())
        })
    }

    pub fn det(&self, z: C64) -> C64 {
        self.coef.det(z)
    }

    /// `θ(λ - 2ηh)/θ(λ) Det(z) + c(z + 2η) b(z)`.
    fn determinant_rhs(&self, z: C64) -> ShiftOperator {
        let e2 = self.eta() * 2.0;
        self.dynamical_factor().scale(self.det(z)).add(&self.c(z + e2).compose(&self.b(z)))
    }

    /// `d(z)` solved from `a(z+2η) d(z) - c(z+2η) b(z) = θ(λ-2ηh)/θ(λ) Det(z)`.
    pub fn d(&self, z: C64) -> ShiftOperator {
        let e2 = self.eta() * 2.0;
        let a_inv = self.a(z + e2).inverse_single(C64::new(0.0, 0.0)).expect("a(z) has a single shift");
        a_inv.compose(&self.determinant_rhs(z))
    }

    pub fn d_coef(&self, z: C64, lambda: C64) -> Result<CMat> {
        let m = self.d(z).coefficient(lambda, 1);
        if !linalg::all_finite(&m) {
            return Err(Error::InvalidArgument(format!("a(z+2η) is singular at λ = {}", lambda + self.eta() * 2.0)));
        }
        Ok(m)
    }

    /// `θ(λ)/θ(λ - 2ηh) (a(z+2η) d(z) - c(z+2η) b(z))`, which should be
    /// `Det(z)` times the identity.
    pub fn quantum_determinant(&self, z: C64) -> ShiftOperator {
        let e2 = self.eta() * 2.0;
        let q = self.clone();
        let inv = ShiftOperator::multiplication(self.dim(), self.eta(), move |l| {
            let th = q.params().th();
            linalg::diag(&q.h_diag().iter().map(|h| th.th(l) / th.th(l - e2 * *h)).collect::<Vec<_>>())
        });
        inv.compose(&self.a(z + e2).compose(&self.d(z)).sub(&self.c(z + e2).compose(&self.b(z))))
    }

    /// The L-operator on `V ⊗ F(S₀)` as a shift operator of size `2N`:
    /// block `(ε, ε')` is `a, b, c, d` for `(0,0), (0,1), (1,0), (1,1)`.
    pub fn l_operator(&self, z: C64) -> ShiftOperator {
        let n = self.dim();
        let blocks = [[self.a(z), self.b(z)], [self.c(z), self.d(z)]];
        ShiftOperator::new(2 * n, self.eta(), move |l| {
            let mut out = Vec::new();
            for (r, row) in blocks.iter().enumerate() {
                for (c, op) in row.iter().enumerate() {
                    for (k, m) in op.eval(l) {
                        let mut big = linalg::zeros(2 * n, 2 * n);
                        for i in 0..n {
                            for j in 0..n {
                                big[(r * n + i, c * n + j)] = m[(i, j)];
                            }
                        }
                        out.push((k, big));
                    }
                }
            }
            out
        })
    }
}

/// The operators of the single-site example with `Λ₁` arbitrary, written
/// out in closed form (coefficients on the grid ordered by `m`).
pub fn single_site_example(params: &ModelParams, z: C64, lambda: C64) -> Result<[CMat; 4]> {
    if params.n() != 1 {
        return Err(Error::InvalidParams("the closed-form example needs exactly one site".into()));
    }
    let th = params.th();
    let t = |x: C64| th.th(x);
    let eta = params.eta();
    let s = params.sites()[0];
    let big = s.lambda as usize + 1;
    let le = eta * s.lambda as f64;
    let (mut a, mut b, mut c, mut d) = (linalg::zeros(big, big), linalg::zeros(big, big), linalg::zeros(big, big), linalg::zeros(big, big));
    for m in 0..big {
        let eh = eta * (s.lambda as f64 - 2.0 * m as f64);
        a[(m, m)] = t(z - s.z - eh) * t(lambda - eh + le) / t(lambda);
        d[(m, m)] = t(z - s.z + eh) * t(lambda - eh - le) / t(lambda);
        if m >= 1 {
            b[(m, m - 1)] = t(lambda + z - s.z - eh) * t(-eh + le) / t(lambda);
        }
        if m + 1 < big {
            c[(m, m + 1)] = -t(-lambda + z - s.z + eh) * t(eh + le) / t(lambda);
        }
    }
    Ok([a, b, c, d])
}
