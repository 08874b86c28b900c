//! The operators `h(z), e_λ(z), f_λ(z)`, the generating operator `S(z)` and
//! the Hamiltonians `H₀, H₁..H_n` acting on `M[0]`-valued functions of `λ`.

use super::diffop::{const_jet, mat_jet, mat_jet_mul, LambdaDiffOp, MatJet, VecJet};
use super::rep::{TensorModule, ZeroWeightSpace};
use crate::error::Result;
use crate::jet::Jet;
use crate::linalg::{self, CMat};
use crate::params::ModelParams;
use crate::sample::Sampler;
use crate::theta::ThetaEvaluator;
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// `h(z)`, `e_λ(z)`, `f_λ(z)` on the full tensor product.
#[derive(Clone, Debug)]
pub struct FieldOps {
    pub h: CMat,
    pub e: CMat,
    pub f: CMat,
}

/// `λ`-jet of `σ_{-λ}(x) = θ(λ+x)θ'(0)/(θ(x)θ(λ))`.
pub fn sigma_minus_jet(th: &ThetaEvaluator, lambda0: C64, x: C64, deg: usize) -> Jet {
    th.th_jet(lambda0 + x, deg).div(&th.th_jet(lambda0, deg)).scale(th.theta_prime_zero() / th.th(x))
}

/// `λ`-jet of `∂_λ σ_λ(x)`.
pub fn sigma_dlambda_jet(th: &ThetaEvaluator, lambda0: C64, x: C64, deg: usize) -> Jet {
    th.sigma_lambda_jet(lambda0, x, deg + 1).derivative()
}

#[derive(Clone, Debug)]
pub struct GaudinModel {
    params: ModelParams,
    module: TensorModule,
    m0: ZeroWeightSpace,
}

impl GaudinModel {
    pub fn new(params: &ModelParams) -> Result<Self> {
        let module = TensorModule::new(&params.lambdas());
        let m0 = ZeroWeightSpace::new(&module)?;
        Ok(GaudinModel { params: params.clone(), module, m0 })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn module(&self) -> &TensorModule {
        &self.module
    }

    pub fn zero_weight(&self) -> &ZeroWeightSpace {
        &self.m0
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    fn th(&self) -> &ThetaEvaluator {
        self.params.th()
    }

    fn check_z(&self, z: C64) -> Result<()> {
        for (i, zi) in self.params.zs().iter().enumerate() {
            self.th().check_pole(&format!("z - z_{}", i + 1), z - zi)?;
        }
        Ok(())
    }

    /// `h(z) = Σ ζ̄(z-z_i) h^{(i)}`, `e_λ(z) = Σ σ_{-λ}(z-z_i) e^{(i)}`,
    /// `f_λ(z) = Σ σ_λ(z-z_i) f^{(i)}`.
    pub fn field_ops(&self, z: C64, lambda: C64) -> Result<FieldOps> {
        self.check_z(z)?;
        self.th().check_pole("lambda", lambda)?;
        let th = self.th();
        let d = self.module.dim();
        let (mut h, mut e, mut f) = (linalg::zeros(d, d), linalg::zeros(d, d), linalg::zeros(d, d));
        for (i, zi) in self.params.zs().iter().enumerate() {
            h = &h + &linalg::scaled(&self.module.h[i], th.zeta_bar_raw(z - zi));
            e = &e + &linalg::scaled(&self.module.e[i], th.sigma_raw(-lambda, z - zi));
            f = &f + &linalg::scaled(&self.module.f[i], th.sigma_raw(lambda, z - zi));
        }
        Ok(FieldOps { h, e, f })
    }

    /// `h'(z) = -Σ ℘̄(z-z_i) h^{(i)}`.
    pub fn h_prime(&self, z: C64) -> Result<CMat> {
        self.check_z(z)?;
        let d = self.module.dim();
        let mut m = linalg::zeros(d, d);
        for (i, zi) in self.params.zs().iter().enumerate() {
            m = &m - &linalg::scaled(&self.module.h[i], self.th().wp_bar_raw(z - zi));
        }
        Ok(m)
    }

    /// `(e_λ(z), f_λ(z))` as `λ`-jets on the full space.
    fn ef_jets(&self, z: C64, lambda0: C64, deg: usize) -> (MatJet, MatJet) {
        let th = self.th();
        let d = self.module.dim();
        let zs = self.params.zs();
        let e: Vec<(Jet, &CMat)> = zs.iter().enumerate().map(|(i, zi)| (sigma_minus_jet(th, lambda0, z - zi, deg), &self.module.e[i])).collect();
        let f: Vec<(Jet, &CMat)> = zs.iter().enumerate().map(|(i, zi)| (th.sigma_lambda_jet(lambda0, z - zi, deg), &self.module.f[i])).collect();
        (mat_jet(&e, d, deg), mat_jet(&f, d, deg))
    }

    fn h_of_z(&self, z: C64) -> CMat {
        let d = self.module.dim();
        let mut h = linalg::zeros(d, d);
        for (i, zi) in self.params.zs().iter().enumerate() {
            h = &h + &linalg::scaled(&self.module.h[i], self.th().zeta_bar_raw(z - zi));
        }
        h
    }

    fn restrict_jet(&self, m: &MatJet) -> MatJet {
        m.iter().map(|x| self.m0.restrict(x)).collect()
    }

    /// `S(z) = (∂ - ½h(z))² + w (e_λ(z) f_λ(z) + f_λ(z) e_λ(z))`; the
    /// commuting family has `w = ½`.
    pub fn s_operator_weighted(&self, z: C64, ef_weight: f64) -> Result<LambdaDiffOp> {
        self.check_z(z)?;
        let me = Arc::new(self.clone());
        let h = self.h_of_z(z);
        let d0 = self.m0.dim();
        let c0 = {
            let me = me.clone();
            let h2 = linalg::scaled(&(&h * &h), C64::new(0.25, 0.0));
            Arc::new(move |l: C64, deg: usize| -> Result<MatJet> {
                me.th().check_pole("lambda", l)?;
                let (e, f) = me.ef_jets(z, l, deg);
                let ef = mat_jet_mul(&e, &f);
                let fe = mat_jet_mul(&f, &e);
                let mut out: MatJet = (0..=deg).map(|k| linalg::scaled(&(&ef[k] + &fe[k]), C64::new(ef_weight, 0.0))).collect();
                out[0] = &out[0] + &h2;
                Ok(me.restrict_jet(&out))
            })
        };
        let mh = self.m0.restrict(&linalg::scaled(&h, C64::new(-1.0, 0.0)));
        Ok(LambdaDiffOp::new(
            d0,
            vec![c0, Arc::new(move |_, deg| Ok(const_jet(&mh, deg))), Arc::new(move |_, deg| Ok(const_jet(&linalg::identity(d0), deg)))],
        ))
    }

    pub fn s_operator(&self, z: C64) -> Result<LambdaDiffOp> {
        self.s_operator_weighted(z, 0.5)
    }

    /// `(∂ - ½h)² + ½(-h'(z) + 2 f_λ(z) e_λ(z))`.
    pub fn s_operator_alternative(&self, z: C64) -> Result<LambdaDiffOp> {
        self.check_z(z)?;
        let me = Arc::new(self.clone());
        let h = self.h_of_z(z);
        let hp = self.h_prime(z)?;
        let d0 = self.m0.dim();
        let base = &linalg::scaled(&(&h * &h), C64::new(0.25, 0.0)) - &linalg::scaled(&hp, C64::new(0.5, 0.0));
        let c0 = Arc::new(move |l: C64, deg: usize| -> Result<MatJet> {
            me.th().check_pole("lambda", l)?;
            let (e, f) = me.ef_jets(z, l, deg);
            let mut out = mat_jet_mul(&f, &e);
            out[0] = &out[0] + &base;
            Ok(me.restrict_jet(&out))
        });
        let mh = self.m0.restrict(&linalg::scaled(&h, C64::new(-1.0, 0.0)));
        Ok(LambdaDiffOp::new(
            d0,
            vec![c0, Arc::new(move |_, deg| Ok(const_jet(&mh, deg))), Arc::new(move |_, deg| Ok(const_jet(&linalg::identity(d0), deg)))],
        ))
    }

    /// `H_j = -h^{(j)}∂ + Σ_{k≠j} [½ζ̄(z_j-z_k) h^{(j)}h^{(k)} + σ_λ(z_j-z_k) e^{(j)}f^{(k)} + σ_{-λ}(z_j-z_k) f^{(j)}e^{(k)}]`,
    /// `j = 1..=n`.
    pub fn h_j(&self, j: usize) -> LambdaDiffOp {
        assert!(j >= 1 && j <= self.n());
        let j = j - 1;
        let me = Arc::new(self.clone());
        let d0 = self.m0.dim();
        let c0 = Arc::new(move |l: C64, deg: usize| -> Result<MatJet> {
            let th = me.th();
            th.check_pole("lambda", l)?;
            let md = &me.module;
            let zs = me.params.zs();
            let dim = md.dim();
            let mut terms: Vec<(Jet, CMat)> = Vec::new();
            let mut fixed = linalg::zeros(dim, dim);
            for k in 0..zs.len() {
                if k == j {
                    continue;
                }
                let x = zs[j] - zs[k];
                fixed = &fixed + &linalg::scaled(&(&md.h[j] * &md.h[k]), th.zeta_bar_raw(x) * 0.5);
                terms.push((th.sigma_lambda_jet(l, x, deg), &md.e[j] * &md.f[k]));
                terms.push((sigma_minus_jet(th, l, x, deg), &md.f[j] * &md.e[k]));
            }
            let refs: Vec<(Jet, &CMat)> = terms.iter().map(|(s, m)| (s.clone(), m)).collect();
            let mut out = mat_jet(&refs, dim, deg);
            out[0] = &out[0] + &fixed;
            Ok(me.restrict_jet(&out))
        });
        let mh = self.m0.restrict(&linalg::scaled(&self.module.h[j], C64::new(-1.0, 0.0)));
        LambdaDiffOp::new(d0, vec![c0, Arc::new(move |_, deg| Ok(const_jet(&mh, deg)))])
    }

    /// `H₀ = ∂² + ⅛Σ_{j,k} h^{(j)}h^{(k)} θ''/θ(z_j-z_k) - Σ_{j,k} [½ e^{(j)}f^{(k)} ∂σ_λ(z_j-z_k) + ½ f^{(j)}e^{(k)} ∂σ_λ(z_k-z_j)]`,
    /// with `θ''/θ(0) := θ'''(0)/θ'(0)` and `∂σ_λ(0) := ℘̄(λ)`.
    pub fn h0(&self) -> LambdaDiffOp {
        let me = Arc::new(self.clone());
        let d0 = self.m0.dim();
        let c0 = Arc::new(move |l: C64, deg: usize| -> Result<MatJet> {
            let th = me.th();
            th.check_pole("lambda", l)?;
            let md = &me.module;
            let zs = me.params.zs();
            let dim = md.dim();
            let mut fixed = linalg::zeros(dim, dim);
            let mut terms: Vec<(Jet, CMat)> = Vec::new();
            let wp = th.wp_bar_jet(l, deg);
            for j in 0..zs.len() {
                for k in 0..zs.len() {
                    let x = zs[j] - zs[k];
                    fixed = &fixed + &linalg::scaled(&(&md.h[j] * &md.h[k]), th.th2_over_th(x) * 0.125);
                    let (djk, dkj) = if j == k { (wp.clone(), wp.clone()) } else { (sigma_dlambda_jet(th, l, x, deg), sigma_dlambda_jet(th, l, -x, deg)) };
                    terms.push((djk.scale(C64::new(-0.5, 0.0)), &md.e[j] * &md.f[k]));
                    terms.push((dkj.scale(C64::new(-0.5, 0.0)), &md.f[j] * &md.e[k]));
                }
            }
            let refs: Vec<(Jet, &CMat)> = terms.iter().map(|(s, m)| (s.clone(), m)).collect();
            let mut out = mat_jet(&refs, dim, deg);
            out[0] = &out[0] + &fixed;
            Ok(me.restrict_jet(&out))
        });
        LambdaDiffOp::new(
            d0,
            vec![c0, Arc::new(move |_, deg| Ok(vec![linalg::zeros(d0, d0); deg + 1])), Arc::new(move |_, deg| Ok(const_jet(&linalg::identity(d0), deg)))],
        )
    }

    /// `[H₀, H₁, .., H_n]`.
    pub fn hamiltonians(&self) -> Vec<LambdaDiffOp> {
        std::iter::once(self.h0()).chain((1..=self.n()).map(|j| self.h_j(j))).collect()
    }

    /// Casimir values `c_k = ½Λ_k(Λ_k+2)`.
    pub fn casimirs(&self) -> Vec<f64> {
        self.params.lambdas().iter().map(|&l| 0.5 * l as f64 * (l as f64 + 2.0)).collect()
    }

    /// `Σ (c_k/2)℘̄(z-z_k) + Σ H_k ζ̄(z-z_k) + H₀`.
    pub fn s_decomposition(&self, z: C64) -> Result<LambdaDiffOp> {
        self.check_z(z)?;
        let th = self.th();
        let zs = self.params.zs();
        let casimir: C64 = self.casimirs().iter().zip(&zs).map(|(c, zk)| th.wp_bar_raw(z - zk) * (c / 2.0)).sum();
        let mut terms = vec![(C64::new(1.0, 0.0), self.h0()), (casimir, LambdaDiffOp::constant(linalg::identity(self.m0.dim())))];
        for (k, zk) in zs.iter().enumerate() {
            terms.push((th.zeta_bar_raw(z - zk), self.h_j(k + 1)));
        }
        Ok(LambdaDiffOp::combine(terms))
    }

    /// `‖([e_λ(z), f_λ(z)] + h'(z))|_{M[0]}‖ / ‖h'(z)|_{M[0]}‖`.
    pub fn ef_commutator_residual(&self, z: C64, lambda: C64) -> Result<f64> {
        let ops = self.field_ops(z, lambda)?;
        let c = linalg::commutator(&ops.e, &ops.f);
        let hp = self.h_prime(z)?;
        Ok(linalg::fro(&self.m0.restrict(&(&c + &hp))) / linalg::fro(&self.m0.restrict(&hp)).max(f64::MIN_POSITIVE))
    }

    /// Random `M[0]`-valued jet with unit-box coefficients.
    pub fn random_jet(&self, s: &mut Sampler, lambda0: C64, deg: usize) -> VecJet {
        let c = (0..=deg).map(|_| (0..self.m0.dim()).map(|_| s.complex(C64::new(0.0, 0.0), 1.0, 1.0)).collect()).collect();
        VecJet { lambda0, c }
    }
}

/// `‖A(Bu) - B(Au)‖ / max(‖A(Bu)‖, ‖B(Au)‖)`.
pub fn commutator_residual(a: &LambdaDiffOp, b: &LambdaDiffOp, u: &VecJet) -> Result<f64> {
    let ab = a.apply(&b.apply(u)?)?;
    let ba = b.apply(&a.apply(u)?)?;
    let scale = ab.norm().max(ba.norm());
    Ok(ab.sub(&ba).norm() / scale)
}

/// `‖Au - Bu‖ / max(‖Au‖, ‖Bu‖)`.
pub fn difference_residual(a: &LambdaDiffOp, b: &LambdaDiffOp, u: &VecJet) -> Result<f64> {
    let x = a.apply(u)?;
    let y = b.apply(u)?;
    Ok(x.sub(&y).norm() / x.norm().max(y.norm()))
}
