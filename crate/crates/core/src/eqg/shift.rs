//! Difference operators in `λ` with matrix coefficients.
//!
//! An operator acts on functions `f: C -> C^N` by
//! `(Xf)(λ) = Σ_k C_k(λ) f(λ + 2ηk)`; it is stored evaluation-first as a
//! closure returning the nonzero `(k, C_k(λ))` pairs. Entry `(t, s)` of
//! `C_k` is the coefficient with which the value at grid point `s` enters
//! the result at grid point `t`.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use num_complex::Complex64 as C64;
use std::collections::BTreeMap;
use std::sync::Arc;

pub type Terms = Vec<(i32, CMat)>;

#[derive(Clone)]
pub struct ShiftOperator {
    dim: usize,
    eta: C64,
    f: Arc<dyn Fn(C64) -> Terms + Send + Sync>,
}

fn merge(dim: usize, terms: impl IntoIterator<Item = (i32, CMat)>) -> Terms {
    let mut map: BTreeMap<i32, CMat> = BTreeMap::new();
    for (k, m) in terms {
        let e = map.entry(k).or_insert_with(|| linalg::zeros(dim, dim));
        *e = &*e + &m;
    }
    map.into_iter().collect()
}

impl ShiftOperator {
    pub fn new(dim: usize, eta: C64, f: impl Fn(C64) -> Terms + Send + Sync + 'static) -> Self {
        ShiftOperator { dim, eta, f: Arc::new(f) }
    }

    /// `C(λ) T^{2ηk}`.
    pub fn single(dim: usize, eta: C64, k: i32, coef: impl Fn(C64) -> CMat + Send + Sync + 'static) -> Self {
        Self::new(dim, eta, move |l| vec![(k, coef(l))])
    }

    /// Multiplication by `C(λ)`.
    pub fn multiplication(dim: usize, eta: C64, coef: impl Fn(C64) -> CMat + Send + Sync + 'static) -> Self {
        Self::single(dim, eta, 0, coef)
    }

    pub fn identity(dim: usize, eta: C64) -> Self {
        Self::multiplication(dim, eta, move |_| linalg::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eta(&self) -> C64 {
        self.eta
    }

    /// Coefficients at `λ`, merged by shift and sorted.
    pub fn eval(&self, lambda: C64) -> Terms {
        merge(self.dim, (self.f)(lambda))
    }

    /// Coefficient of `T^{2ηk}` at `λ` (zero if absent).
    pub fn coefficient(&self, lambda: C64, k: i32) -> CMat {
        self.eval(lambda).into_iter().find(|(s, _)| *s == k).map(|(_, m)| m).unwrap_or_else(|| linalg::zeros(self.dim, self.dim))
    }

    pub fn compose(&self, other: &ShiftOperator) -> ShiftOperator {
        let (a, b) = (self.clone(), other.clone());
        let two_eta = self.eta * 2.0;
        let dim = self.dim;
        ShiftOperator::new(dim, self.eta, move |l| {
            let mut out = Vec::new();
            for (k1, ca) in a.eval(l) {
                for (k2, cb) in b.eval(l + two_eta * k1 as f64) {
                    out.push((k1 + k2, &ca * &cb));
                }
            }
            merge(dim, out)
        })
    }

    pub fn add(&self, other: &ShiftOperator) -> ShiftOperator {
        let (a, b) = (self.clone(), other.clone());
        let dim = self.dim;
        ShiftOperator::new(dim, self.eta, move |l| merge(dim, a.eval(l).into_iter().chain(b.eval(l))))
    }

    pub fn scale(&self, s: C64) -> ShiftOperator {
        let a = self.clone();
        ShiftOperator::new(self.dim, self.eta, move |l| a.eval(l).into_iter().map(|(k, m)| (k, linalg::scaled(&m, s))).collect())
    }

    pub fn sub(&self, other: &ShiftOperator) -> ShiftOperator {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    /// Inverse of a single-term operator `C(λ)T^{2ηk}`:
    /// `C(λ-2ηk)^{-1} T^{-2ηk}`.
    pub fn inverse_single(&self, probe: C64) -> Result<ShiftOperator> {
        let t = self.eval(probe);
        if t.len() != 1 {
            return Err(Error::InvalidArgument(format!("inverse_single needs exactly one shift, found {}", t.len())));
        }
        let k = t[0].0;
        let a = self.clone();
        let two_eta = self.eta * 2.0;
        Ok(ShiftOperator::single(self.dim, self.eta, -k, move |l| {
            let c = a.coefficient(l - two_eta * k as f64, k);
            linalg::inverse(&c).unwrap_or_else(|_| linalg::scaled(&c, C64::new(f64::NAN, 0.0)))
        }))
    }

    /// `(Xf)(λ)` for a sampled function `f`.
    pub fn apply(&self, f: &dyn Fn(C64) -> Vec<C64>, lambda: C64) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); self.dim];
        for (k, c) in self.eval(lambda) {
            let v = f(lambda + self.eta * 2.0 * k as f64);
            let r = &c * &linalg::col(&v);
            for i in 0..self.dim {
                out[i] += r[(i, 0)];
            }
        }
        out
    }

    /// Largest Frobenius norm over shifts of `self - other` at `λ`, and
    /// the corresponding scale `max(‖self‖, ‖other‖)`.
    pub fn difference_at(&self, other: &ShiftOperator, lambda: C64) -> (f64, f64) {
        let d = self.sub(other).eval(lambda);
        let r = d.iter().map(|(_, m)| linalg::fro(m)).fold(0.0, f64::max);
        let s = self.eval(lambda).iter().chain(other.eval(lambda).iter()).map(|(_, m)| linalg::fro(m)).fold(0.0, f64::max);
        (r, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    const ETA: C64 = C64 { re: 0.137, im: 0.041 };

    fn random_op(s: &mut Sampler, dim: usize, shifts: &[i32]) -> ShiftOperator {
        let mats: Vec<(i32, CMat, CMat)> = shifts
            .iter()
            .map(|k| {
                let a = linalg::from_fn(dim, dim, |_, _| s.complex(C64::new(0.0, 0.0), 1.0, 1.0));
                let b = linalg::from_fn(dim, dim, |_, _| s.complex(C64::new(0.0, 0.0), 1.0, 1.0));
                (*k, a, b)
            })
            .collect();
        // coefficients depend on λ: A + λ B
        ShiftOperator::new(dim, ETA, move |l| mats.iter().map(|(k, a, b)| (*k, a + &linalg::scaled(b, l))).collect())
    }

    fn f(l: C64) -> Vec<C64> {
        vec![(l * 0.7).exp(), l * l + 1.0, (l * C64::new(0.0, 1.3)).sin()]
    }

    #[test]
    fn composition_matches_direct_application() {
        let mut s = Sampler::new(1);
        let a = random_op(&mut s, 3, &[-1, 0, 2]);
        let b = random_op(&mut s, 3, &[1, -2]);
        let ab = a.compose(&b);
        let l = C64::new(0.3, -0.4);
        let direct = a.apply(&|x| b.apply(&f, x), l);
        let comp = ab.apply(&f, l);
        for (x, y) in direct.iter().zip(&comp) {
            assert!((x - y).norm() < 1e-12 * x.norm().max(1.0));
        }
    }

    #[test]
    fn associativity() {
        let mut s = Sampler::new(2);
        let a = random_op(&mut s, 3, &[-1, 1]);
        let b = random_op(&mut s, 3, &[0, 1]);
        let c = random_op(&mut s, 3, &[-1, 2]);
        let l = C64::new(0.1, 0.2);
        let (r, sc) = a.compose(&b).compose(&c).difference_at(&a.compose(&b.compose(&c)), l);
        assert!(r <= 1e-11 * sc);
    }

    #[test]
    fn single_inverse() {
        let mut s = Sampler::new(3);
        let a = random_op(&mut s, 3, &[-1]);
        let inv = a.inverse_single(C64::new(0.0, 0.0)).unwrap();
        let l = C64::new(0.2, 0.1);
        let (r, _) = a.compose(&inv).difference_at(&ShiftOperator::identity(3, ETA), l);
        assert!(r < 1e-10);
        let (r, _) = inv.compose(&a).difference_at(&ShiftOperator::identity(3, ETA), l);
        assert!(r < 1e-10);
        assert!(random_op(&mut s, 3, &[0, 1]).inverse_single(l).is_err());
    }
}
