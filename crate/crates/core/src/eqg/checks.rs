//! Numerical certificates for the representation: RLL relations, the
//! auxiliary identities used in their proof, restrictions, the quantum
//! determinant and the highest-weight vector.

use super::quadruple::OperatorQuadruple;
use super::rmatrix::{r_matrix_raw, wt};
use crate::contour;
use crate::error::Result;
use crate::linalg::{self, CMat};
use crate::params::ModelParams;
use crate::sample::{Sampler, SAMPLE_MARGIN};
use num_complex::Complex64 as C64;
use serde::Serialize;

/// Draws `λ` away from the poles of every coefficient that shifts it by a
/// multiple of `2η` up to the total weight.
pub fn generic_lambda(params: &ModelParams, s: &mut Sampler) -> C64 {
    let lat = *params.th().lattice();
    let eta = params.eta();
    let reach = 2 * params.total_weight() as i64 + 4;
    s.generic(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im, |l| (-reach..=reach).all(|k| lat.dist(l + eta * k as f64) > SAMPLE_MARGIN))
}

/// A spectral parameter away from `z_i ± (Λ_i + 2k)η` and the lattice.
pub fn generic_z(params: &ModelParams, s: &mut Sampler) -> C64 {
    let lat = *params.th().lattice();
    let eta = params.eta();
    let reach = 2 * params.total_weight() as i64 + 4;
    let zs = params.zs();
    s.generic(C64::new(0.0, 0.0), 0.5, 0.5 * params.tau().im, |z| {
        (-reach..=reach).all(|k| lat.dist(z + eta * k as f64) > SAMPLE_MARGIN && zs.iter().all(|zi| lat.dist(z - zi + eta * k as f64) > SAMPLE_MARGIN))
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RllReport {
    pub z: C64,
    pub w: C64,
    pub lambda: C64,
    /// Relative residual of relation `(p, q)`, `p, q` indexing `V ⊗ V`.
    pub relations: [[f64; 4]; 4],
    pub max_residual: f64,
}

fn kron_block(dim: usize, place: impl Fn(&mut CMat)) -> CMat {
    let mut m = linalg::zeros(dim, dim);
    place(&mut m);
    m
}

/// Evaluates `R12(z-w, λ-2ηh3) L13(z, λ) L23(w, λ-2ηh1)` and
/// `L23(w, λ) L13(z, λ-2ηh2) R12(z-w, λ)` on `V ⊗ V ⊗ F(S₀)`, with `λ`
/// entering the L-operator coefficients as a parameter.
pub fn rll_residual(q: &OperatorQuadruple, z: C64, w: C64, lambda: C64) -> Result<RllReport> {
    rll_with_shift(q, z, w, lambda, 1.0)
}

/// `dyn_sign` multiplies every dynamical shift `2ηh`; only `+1` is a
/// relation of the algebra.
pub(crate) fn rll_with_shift(q: &OperatorQuadruple, z: C64, w: C64, lambda: C64, dyn_sign: f64) -> Result<RllReport> {
    let p = q.params();
    let th = p.th();
    let e2 = p.eta() * 2.0 * dyn_sign;
    let n = q.dim();
    let big = 4 * n;
    let h = q.h_diag();
    let comps = |u: C64, l: C64| -> Result<[[CMat; 2]; 2]> { Ok([[q.a_coef(u, l), q.b_coef(u, l)], [q.c_coef(u, l), q.d_coef(u, l)?]]) };
    let idx = |v1: usize, v2: usize, g: usize| (v1 * 2 + v2) * n + g;

    let r12 = |l_of_g: &dyn Fn(usize) -> C64| {
        kron_block(big, |m| {
            for g in 0..n {
                let r = r_matrix_raw(th, p.eta(), z - w, l_of_g(g));
                for a in 0..4 {
                    for b in 0..4 {
                        m[(a * n + g, b * n + g)] = r[(a, b)];
                    }
                }
            }
        })
    };
    // L on factors (1, 3); λ may depend on the state of factor 2.
    let l13 = |l_of_v2: &dyn Fn(usize) -> C64| -> Result<CMat> {
        let mut m = linalg::zeros(big, big);
        for v2 in 0..2 {
            let c = comps(z, l_of_v2(v2))?;
            for e in 0..2 {
                for f in 0..2 {
                    for g in 0..n {
                        for k in 0..n {
                            m[(idx(e, v2, g), idx(f, v2, k))] = c[e][f][(g, k)];
                        }
                    }
                }
            }
        }
        Ok(m)
    };
    let l23 = |l_of_v1: &dyn Fn(usize) -> C64| -> Result<CMat> {
        let mut m = linalg::zeros(big, big);
        for v1 in 0..2 {
            let c = comps(w, l_of_v1(v1))?;
            for e in 0..2 {
                for f in 0..2 {
                    for g in 0..n {
                        for k in 0..n {
                            m[(idx(v1, e, g), idx(v1, f, k))] = c[e][f][(g, k)];
                        }
                    }
                }
            }
        }
        Ok(m)
    };

    let lhs = &(&r12(&|g| lambda - e2 * h[g]) * &l13(&|_| lambda)?) * &l23(&|v1| lambda - e2 * wt(v1))?;
    let rhs = &(&l23(&|_| lambda)? * &l13(&|v2| lambda - e2 * wt(v2))?) * &r12(&|_| lambda);

    let block = |m: &CMat, a: usize, b: usize| linalg::from_fn(n, n, |i, j| m[(a * n + i, b * n + j)]);
    let scale = linalg::fro(&lhs).max(linalg::fro(&rhs));
    let mut relations = [[0.0; 4]; 4];
    let mut max_residual: f64 = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            let r = linalg::fro(&(&block(&lhs, a, b) - &block(&rhs, a, b))) / scale;
            relations[a][b] = r;
            max_residual = max_residual.max(r);
        }
    }
    Ok(RllReport { z, w, lambda, relations, max_residual })
}

/// The scalar identity behind the `a(z) b(w)` exchange relation:
/// `f₁ = f₂ + f₃` with
/// `f₁ = θ(z+x)θ(λ+w+x-2η)/θ(λ-2η)`,
/// `f₂ = θ(z-w)θ(λ+w+x)θ(z+x-2η)/(θ(z-w-2η)θ(λ))`,
/// `f₃ = θ(z-w-λ)θ(2η)θ(w+x)θ(λ+z+x-2η)/(θ(z-w-2η)θ(λ)θ(λ-2η))`.
/// Returns `|f₁ - f₂ - f₃| / |f₁|`.
pub fn exchange_identity_residual(params: &ModelParams, z: C64, w: C64, lambda: C64, x: C64) -> f64 {
    let th = params.th();
    let t = |u: C64| th.th(u);
    let e2 = params.eta() * 2.0;
    let f1 = t(z + x) * t(lambda + w + x - e2) / t(lambda - e2);
    let f2 = t(z - w) * t(lambda + w + x) * t(z + x - e2) / (t(z - w - e2) * t(lambda));
    let f3 = t(z - w - lambda) * t(e2) * t(w + x) * t(lambda + z + x - e2) / (t(z - w - e2) * t(lambda) * t(lambda - e2));
    (f1 - f2 - f3).norm() / f1.norm()
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidueSumReport {
    pub residue_sum: C64,
    pub max_residue: f64,
    pub relative: f64,
    /// `max(|f(v+1) - f(v)|, |f(v+τ) - f(v)|) / |f(v)|` at a sample point.
    pub periodicity: f64,
}

/// The elliptic function
/// `f(v) = θ(2s + x_i + v + 2η)/θ(v + x_i + 2η) ∏_l θ(v-z_l-Λ_lη)θ(v-z_l+Λ_lη+2η)/(θ(v+x_l)θ(v+x_l+2η))`,
/// `s = Σ(x_l + z_l)`, whose residues at `v = -x_l, -x_l-2η` must sum to 0.
pub fn residue_sum_check(params: &ModelParams, x: &[C64], i: usize, probe: C64) -> ResidueSumReport {
    let th = params.th();
    let t = |u: C64| th.th(u);
    let eta = params.eta();
    let e2 = eta * 2.0;
    let s: C64 = x.iter().zip(params.sites()).map(|(x, st)| x + st.z).sum();
    let f = |v: C64| {
        let mut r = t(s * 2.0 + x[i] + v + e2) / t(v + x[i] + e2);
        for (l, st) in params.sites().iter().enumerate() {
            let le = eta * st.lambda as f64;
            r *= t(v - st.z - le) * t(v - st.z + le + e2) / (t(v + x[l]) * t(v + x[l] + e2));
        }
        r
    };
    let poles: Vec<C64> = x.iter().flat_map(|xl| [-xl, -xl - e2]).collect();
    let mut min_sep = f64::INFINITY;
    for a in 0..poles.len() {
        for b in 0..a {
            min_sep = min_sep.min((poles[a] - poles[b]).norm());
        }
    }
    let radius = (min_sep / 3.0).min(0.05);
    let mut sum = C64::new(0.0, 0.0);
    let mut max_residue: f64 = 0.0;
    for p in &poles {
        let r = contour::residue(f, *p, radius, 256);
        sum += r;
        max_residue = max_residue.max(r.norm());
    }
    let f0 = f(probe);
    let periodicity = (f(probe + 1.0) - f0).norm().max((f(probe + params.tau()) - f0).norm()) / f0.norm();
    ResidueSumReport { residue_sum: sum, max_residue, relative: sum.norm() / max_residue, periodicity }
}

#[derive(Clone, Debug, Serialize)]
pub struct HighestWeightReport {
    pub z: C64,
    pub lambda: C64,
    /// `‖c(z) v_hw‖`.
    pub c_annihilates: f64,
    /// Relative error of `a(z) v_hw = A(z,λ) v_hw`, off-diagonal part included.
    pub a_eigen: f64,
    /// Relative error of `d(z) v_hw = D(z,λ) v_hw`.
    pub d_eigen: f64,
    /// `|κ A - 1|` and `|κ D - D̄| / |D̄|`.
    pub normalized_a: f64,
    pub normalized_d: f64,
    /// `h v_hw - ΣΛ_i v_hw`.
    pub weight: f64,
}

pub fn highest_weight_check(q: &OperatorQuadruple, z: C64, lambda: C64) -> Result<HighestWeightReport> {
    let p = q.params();
    let th = p.th();
    let t = |u: C64| th.th(u);
    let eta = p.eta();
    let hw = q.grid().highest_weight();
    let n = q.dim();
    let total = p.total_weight() as f64;
    let column = |m: &CMat| (0..n).map(|i| m[(i, hw)]).collect::<Vec<_>>();
    let eigen_err = |col: Vec<C64>, ev: C64| {
        let mut e = 0.0;
        for (i, v) in col.iter().enumerate() {
            let target = if i == hw { ev } else { C64::new(0.0, 0.0) };
            e += (v - target).norm_sqr();
        }
        e.sqrt() / ev.norm()
    };

    let a_ev: C64 = p.sites().iter().map(|s| t(z - s.z - eta * s.lambda as f64)).product();
    let d_ev: C64 = t(lambda - eta * 2.0 * total) / t(lambda) * p.sites().iter().map(|s| t(z - s.z + eta * s.lambda as f64)).product::<C64>();
    let kappa = a_ev.inv();
    let d_bar: C64 = t(lambda - eta * 2.0 * total) / t(lambda)
        * p.sites().iter().map(|s| t(z - s.z + eta * s.lambda as f64) / t(z - s.z - eta * s.lambda as f64)).product::<C64>();

    let a = q.a_coef(z, lambda);
    let d = q.d_coef(z, lambda)?;
    let c = q.c_coef(z, lambda);
    Ok(HighestWeightReport {
        z,
        lambda,
        c_annihilates: linalg::vnorm(&column(&c)),
        a_eigen: eigen_err(column(&a), a_ev),
        d_eigen: eigen_err(column(&d), d_ev),
        normalized_a: (kappa * a[(hw, hw)] - 1.0).norm(),
        normalized_d: (kappa * d[(hw, hw)] - d_bar).norm() / d_bar.norm(),
        weight: (q.h_diag()[hw] - total).abs(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    /// Forbidden-read coefficients of `b` and `c` relative to the largest
    /// allowed coefficient.
    pub b_forbidden: f64,
    pub c_forbidden: f64,
    /// Which boundary factor vanishes at the forbidden reads:
    /// `(|Δ₊(-x_i)|, |Δ₋(-x_i)|)` maxima for `b` and `c`.
    pub b_deltas: (f64, f64),
    pub c_deltas: (f64, f64),
    /// `|(b u)|, |(c u)|` on `S₁` for `u` vanishing on `S₁`, relative to
    /// the values just off `S₁`.
    pub s1_b: f64,
    pub s1_c: f64,
}

pub fn restriction_check(q: &OperatorQuadruple, s: &mut Sampler) -> RestrictionReport {
    let p = q.params();
    let z = generic_z(p, s);
    let lambda = generic_lambda(p, s);
    let br = q.boundary_report(z, lambda);

    let coef = q.coefficients();
    let n = p.n();
    let weights: Vec<C64> = (0..n).map(|_| s.complex(C64::new(0.0, 0.0), 0.5, 0.5)).collect();
    let u = |l: C64, x: &[C64]| -> C64 {
        let lin: C64 = x.iter().zip(&weights).map(|(x, w)| x * w).sum();
        (l + coef.s(x)) * (l * 0.3 + lin).exp()
    };
    let (mut on_b, mut on_c, mut off_b, mut off_c) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..5 {
        let x: Vec<C64> = p.zs().iter().map(|zi| -zi + s.complex(C64::new(0.0, 0.0), 0.3, 0.1)).collect();
        let l1 = -coef.s(&x);
        let (b, c) = coef.apply_bc(z, &u, l1, &x);
        on_b = on_b.max(b.norm());
        on_c = on_c.max(c.norm());
        let (b, c) = coef.apply_bc(z, &u, l1 + 0.1, &x);
        off_b = off_b.max(b.norm());
        off_c = off_c.max(c.norm());
    }
    RestrictionReport {
        b_forbidden: br.b_forbidden / br.scale,
        c_forbidden: br.c_forbidden / br.scale,
        b_deltas: br.b_deltas,
        c_deltas: br.c_deltas,
        s1_b: on_b / off_b,
        s1_c: on_c / off_c,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantReport {
    /// `‖Q(z) - Det(z)·1‖ / |Det(z)|` with `Q` the quantum determinant.
    pub scalar: f64,
    /// `‖[Q(z), X(w)]‖` relative, for `X = a, b, c`.
    pub commutators: [f64; 3],
}

pub fn determinant_check(q: &OperatorQuadruple, z: C64, w: C64, lambda: C64) -> DeterminantReport {
    let det = q.quantum_determinant(z);
    let scalar_op = super::shift::ShiftOperator::identity(q.dim(), q.params().eta()).scale(q.det(z));
    let (r, _) = det.difference_at(&scalar_op, lambda);
    let mut commutators = [0.0; 3];
    for (i, x) in [q.a(w), q.b(w), q.c(w)].iter().enumerate() {
        let (r, s) = det.compose(x).difference_at(&x.compose(&det), lambda);
        commutators[i] = r / s;
    }
    DeterminantReport { scalar: r / q.det(z).norm(), commutators }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleReport {
    /// Entrywise `max |derived - closed form| / max |closed form|` for a, b, c, d.
    pub residuals: [f64; 4],
}

pub fn single_site_check(q: &OperatorQuadruple, z: C64, lambda: C64) -> Result<ExampleReport> {
    let ex = super::quadruple::single_site_example(q.params(), z, lambda)?;
    let got = [q.a_coef(z, lambda), q.b_coef(z, lambda), q.c_coef(z, lambda), q.d_coef(z, lambda)?];
    let maxabs = |m: &CMat| {
        let mut r: f64 = 0.0;
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                r = r.max(m[(i, j)].norm());
            }
        }
        r
    };
    let mut residuals = [0.0; 4];
    for k in 0..4 {
        residuals[k] = maxabs(&(&got[k] - &ex[k])) / maxabs(&ex[k]);
    }
    Ok(ExampleReport { residuals })
}
