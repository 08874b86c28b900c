//! Differential operators in `λ` with matrix coefficients, applied to
//! vector-valued jets.

use crate::error::Result;
use crate::linalg::{self, CMat};
use num_complex::Complex64 as C64;
use std::sync::Arc;

/// Taylor coefficients of a matrix-valued function of `λ` at a base point.
pub type MatJet = Vec<CMat>;

/// Truncated Taylor expansion of `u: C -> C^d` at `lambda0`.
#[derive(Clone, Debug)]
pub struct VecJet {
    pub lambda0: C64,
    pub c: Vec<Vec<C64>>,
}

impl VecJet {
    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.c[0].len()
    }

    pub fn value(&self) -> &[C64] {
        &self.c[0]
    }

    pub fn derivative(&self) -> VecJet {
        let c = (1..self.c.len()).map(|k| self.c[k].iter().map(|v| v * k as f64).collect()).collect();
        VecJet { lambda0: self.lambda0, c }
    }

    pub fn truncate(&self, deg: usize) -> VecJet {
        VecJet { lambda0: self.lambda0, c: self.c[..=deg].to_vec() }
    }

    pub fn scale(&self, s: C64) -> VecJet {
        VecJet { lambda0: self.lambda0, c: self.c.iter().map(|v| v.iter().map(|x| x * s).collect()).collect() }
    }

    pub fn sub(&self, o: &VecJet) -> VecJet {
        let d = self.degree().min(o.degree());
        let c = (0..=d).map(|k| self.c[k].iter().zip(&o.c[k]).map(|(a, b)| a - b).collect()).collect();
        VecJet { lambda0: self.lambda0, c }
    }

    /// Euclidean norm over all coefficients.
    pub fn norm(&self) -> f64 {
        self.c.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Matrix-jet times vector-jet, truncated to the smaller degree.
    pub fn mul_mat(m: &MatJet, u: &VecJet) -> VecJet {
        let d = (m.len() - 1).min(u.degree());
        let dim = m[0].nrows();
        let mut c = vec![vec![C64::new(0.0, 0.0); dim]; d + 1];
        for i in 0..=d {
            for j in 0..=(d - i) {
                let r = &m[i] * &linalg::col(&u.c[j]);
                for a in 0..dim {
                    c[i + j][a] += r[(a, 0)];
                }
            }
        }
        VecJet { lambda0: u.lambda0, c }
    }
}

/// Jet of `Σ s_k(λ) M_k` from scalar jets.
pub fn mat_jet(terms: &[(crate::jet::Jet, &CMat)], dim: usize, deg: usize) -> MatJet {
    let mut out = vec![linalg::zeros(dim, dim); deg + 1];
    for (s, m) in terms {
        for (k, o) in out.iter_mut().enumerate() {
            *o = &*o + &linalg::scaled(m, s.c[k]);
        }
    }
    out
}

/// Product of matrix jets.
pub fn mat_jet_mul(a: &MatJet, b: &MatJet) -> MatJet {
    let d = a.len().min(b.len()) - 1;
    let dim = a[0].nrows();
    let mut out = vec![linalg::zeros(dim, dim); d + 1];
    for i in 0..=d {
        for j in 0..=(d - i) {
            out[i + j] = &out[i + j] + &(&a[i] * &b[j]);
        }
    }
    out
}

type Coef = Arc<dyn Fn(C64, usize) -> Result<MatJet> + Send + Sync>;

/// `Σ_{d ≤ order} c_d(λ) ∂^d_λ`.
#[derive(Clone)]
pub struct LambdaDiffOp {
    dim: usize,
    coefs: Vec<Coef>,
}

impl LambdaDiffOp {
    /// `coefs[d](λ0, deg)` returns the degree-`deg` jet of `c_d` at `λ0`.
    pub fn new(dim: usize, coefs: Vec<Coef>) -> Self {
        assert!(!coefs.is_empty());
        LambdaDiffOp { dim, coefs }
    }

    pub fn order(&self) -> usize {
        self.coefs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coefficient(&self, d: usize, lambda0: C64, deg: usize) -> Result<MatJet> {
        (self.coefs[d])(lambda0, deg)
    }

    /// Applies the operator to a jet of degree `D`; the result has degree
    /// `D - order`.
    pub fn apply(&self, u: &VecJet) -> Result<VecJet> {
        let order = self.order();
        assert!(u.degree() >= order, "jet degree {} below operator order {order}", u.degree());
        let out_deg = u.degree() - order;
        let mut acc: Option<VecJet> = None;
        let mut du = u.clone();
        for d in 0..=order {
            let term = VecJet::mul_mat(&self.coefficient(d, u.lambda0, out_deg)?, &du.truncate(out_deg));
            acc = Some(match acc {
                None => term,
                Some(a) => a.sub(&term.scale(C64::new(-1.0, 0.0))),
            });
            if d < order {
                du = du.derivative();
            }
        }
        Ok(acc.unwrap())
    }

    /// `Σ s_k X_k`.
    pub fn combine(terms: Vec<(C64, LambdaDiffOp)>) -> LambdaDiffOp {
        let dim = terms[0].1.dim;
        let order = terms.iter().map(|(_, t)| t.order()).max().unwrap();
        let terms = Arc::new(terms);
        let coefs: Vec<Coef> = (0..=order)
            .map(|d| {
                let terms = terms.clone();
                Arc::new(move |l: C64, deg: usize| {
                    let mut out = vec![linalg::zeros(dim, dim); deg + 1];
                    for (s, t) in terms.iter() {
                        if d <= t.order() {
                            for (k, m) in t.coefficient(d, l, deg)?.iter().enumerate() {
                                out[k] = &out[k] + &linalg::scaled(m, *s);
                            }
                        }
                    }
                    Ok(out)
                }) as Coef
            })
            .collect();
        LambdaDiffOp { dim, coefs }
    }

    /// Multiplication by a constant matrix.
    pub fn constant(m: CMat) -> LambdaDiffOp {
        let dim = m.nrows();
        LambdaDiffOp::new(
            dim,
            vec![Arc::new(move |_, deg| {
                let mut out = vec![linalg::zeros(dim, dim); deg + 1];
                out[0] = m.clone();
                Ok(out)
            })],
        )
    }
}

/// Constant-coefficient jet.
pub fn const_jet(m: &CMat, deg: usize) -> MatJet {
    let mut out = vec![linalg::zeros(m.nrows(), m.ncols()); deg + 1];
    out[0] = m.clone();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;

    #[test]
    fn leibniz_against_closed_form() {
        // X = λ ∂² + e^λ acting on u = (sin λ, λ³)
        let l0 = C64::new(0.3, 0.2);
        let deg = 6;
        let x = LambdaDiffOp::new(
            2,
            vec![
                Arc::new(|l: C64, d| Ok(mat_jet(&[(Jet::variable(l, d).exp(), &linalg::identity(2))], 2, d))),
                Arc::new(|_l: C64, d| Ok(vec![linalg::zeros(2, 2); d + 1])),
                Arc::new(|l: C64, d| Ok(mat_jet(&[(Jet::variable(l, d), &linalg::identity(2))], 2, d))),
            ],
        );
        let s = Jet::variable(l0, deg);
        let sin: Vec<C64> = {
            // sin via exp
            let i = C64::new(0.0, 1.0);
            let a = s.scale(i).exp();
            let b = s.scale(-i).exp();
            (&a - &b).scale(C64::new(0.0, -0.5)).c
        };
        let cube = (&(&s * &s) * &s).c;
        let u = VecJet { lambda0: l0, c: (0..=deg).map(|k| vec![sin[k], cube[k]]).collect() };
        let r = x.apply(&u).unwrap();
        assert_eq!(r.degree(), deg - 2);
        let want0 = l0 * (-l0.sin()) + l0.exp() * l0.sin();
        let want1 = l0 * (l0 * 6.0) + l0.exp() * l0 * l0 * l0;
        assert!((r.c[0][0] - want0).norm() < 1e-12);
        assert!((r.c[0][1] - want1).norm() < 1e-12);
        // first coefficient is the derivative of the result
        let d0 = -l0.sin() - l0 * l0.cos() + l0.exp() * (l0.sin() + l0.cos());
        assert!((r.c[1][0] - d0).norm() < 1e-12);
    }
}
