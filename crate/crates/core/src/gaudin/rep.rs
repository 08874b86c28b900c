//! Finite-dimensional sl₂ modules `L_Λ`, their tensor products and the
//! zero-weight subspace.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use num_complex::Complex64 as C64;

/// `L_Λ` on `v₀..v_Λ`: `f v_k = v_{k+1}`, `h v_k = (Λ-2k) v_k`,
/// `e v_k = k(Λ-k+1) v_{k-1}`. Matrices are kept as integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Rep {
    pub lambda: u32,
    pub e: Vec<Vec<i64>>,
    pub f: Vec<Vec<i64>>,
    pub h: Vec<Vec<i64>>,
}

fn imul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn isub(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect()).collect()
}

impl Sl2Rep {
    pub fn new(lambda: u32) -> Self {
        let d = lambda as usize + 1;
        let l = lambda as i64;
        let mut e = vec![vec![0; d]; d];
        let mut f = vec![vec![0; d]; d];
        let mut h = vec![vec![0; d]; d];
        for k in 0..d {
            let ki = k as i64;
            h[k][k] = l - 2 * ki;
            if k + 1 < d {
                f[k + 1][k] = 1;
            }
            if k >= 1 {
                e[k - 1][k] = ki * (l - ki + 1);
            }
        }
        Sl2Rep { lambda, e, f, h }
    }

    pub fn dim(&self) -> usize {
        self.lambda as usize + 1
    }

    /// `[e,f] - h`, `[h,e] - 2e`, `[h,f] + 2f`, each exactly zero.
    pub fn bracket_defects(&self) -> [Vec<Vec<i64>>; 3] {
        let c = |a: &[Vec<i64>], b: &[Vec<i64>]| isub(&imul(a, b), &imul(b, a));
        let two = |a: &[Vec<i64>]| a.iter().map(|r| r.iter().map(|x| 2 * x).collect()).collect::<Vec<Vec<i64>>>();
        let neg2f: Vec<Vec<i64>> = self.f.iter().map(|r| r.iter().map(|x| -2 * x).collect()).collect();
        [isub(&c(&self.e, &self.f), &self.h), isub(&c(&self.h, &self.e), &two(&self.e)), isub(&c(&self.h, &self.f), &neg2f)]
    }

    pub fn complex(m: &[Vec<i64>]) -> CMat {
        linalg::from_fn(m.len(), m.len(), |i, j| C64::new(m[i][j] as f64, 0.0))
    }
}

/// `L_{Λ₁} ⊗ ⋯ ⊗ L_{Λ_n}` with site operators `e^{(i)}, f^{(i)}, h^{(i)}`.
/// Basis index `Σ k_i · stride_i`, first site most significant.
#[derive(Clone, Debug)]
pub struct TensorModule {
    lambdas: Vec<u32>,
    dim: usize,
    pub e: Vec<CMat>,
    pub f: Vec<CMat>,
    pub h: Vec<CMat>,
}

fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca, rb, cb) = (a.nrows(), a.ncols(), b.nrows(), b.ncols());
    linalg::from_fn(ra * rb, ca * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)])
}

impl TensorModule {
    pub fn new(lambdas: &[u32]) -> Self {
        let reps: Vec<Sl2Rep> = lambdas.iter().map(|&l| Sl2Rep::new(l)).collect();
        let dim = reps.iter().map(|r| r.dim()).product();
        let site = |i: usize, pick: &dyn Fn(&Sl2Rep) -> &Vec<Vec<i64>>| {
            let mut m = linalg::identity(1);
            for (j, r) in reps.iter().enumerate() {
                let factor = if i == j { Sl2Rep::complex(pick(r)) } else { linalg::identity(r.dim()) };
                m = kron(&m, &factor);
            }
            m
        };
        let n = lambdas.len();
        TensorModule {
            lambdas: lambdas.to_vec(),
            dim,
            e: (0..n).map(|i| site(i, &|r| &r.e)).collect(),
            f: (0..n).map(|i| site(i, &|r| &r.f)).collect(),
            h: (0..n).map(|i| site(i, &|r| &r.h)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[u32] {
        &self.lambdas
    }

    /// Multi-index `(k₁..k_n)` of basis vector `idx`.
    pub fn multi_index(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0; self.n()];
        for i in (0..self.n()).rev() {
            let d = self.lambdas[i] as usize + 1;
            out[i] = (idx % d) as u32;
            idx /= d;
        }
        out
    }

    /// `v₀ ⊗ ⋯ ⊗ v₀`.
    pub fn highest_weight_vector(&self) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.dim];
        v[0] = C64::new(1.0, 0.0);
        v
    }
}

/// `M[0] = {v : Σ h^{(i)} v = 0}`, spanned by basis vectors with
/// `Σ(Λ_i - 2k_i) = 0`.
#[derive(Clone, Debug)]
pub struct ZeroWeightSpace {
    pub indices: Vec<usize>,
    pub multi_indices: Vec<Vec<u32>>,
    /// `m = ΣΛ_i / 2`.
    pub m: u32,
}

impl ZeroWeightSpace {
    pub fn new(module: &TensorModule) -> Result<Self> {
        let total: u32 = module.lambdas().iter().sum();
        if !total.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!("ΣΛ_i = {total} is odd, the zero weight space is empty")));
        }
        let mut indices = Vec::new();
        let mut multi_indices = Vec::new();
        for idx in 0..module.dim() {
            let k = module.multi_index(idx);
            let w: i64 = k.iter().zip(module.lambdas()).map(|(&k, &l)| l as i64 - 2 * k as i64).sum();
            if w == 0 {
                indices.push(idx);
                multi_indices.push(k);
            }
        }
        Ok(ZeroWeightSpace { indices, multi_indices, m: total / 2 })
    }

    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn restrict(&self, m: &CMat) -> CMat {
        linalg::from_fn(self.dim(), self.dim(), |i, j| m[(self.indices[i], self.indices[j])])
    }

    pub fn restrict_vec(&self, v: &[C64]) -> Vec<C64> {
        self.indices.iter().map(|&i| v[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brackets_exact() {
        for l in 0..6 {
            let r = Sl2Rep::new(l);
            for d in r.bracket_defects() {
                assert!(d.iter().flatten().all(|x| *x == 0));
            }
        }
    }

    #[test]
    fn zero_weight_dimension() {
        let m = TensorModule::new(&[1, 1, 2]);
        assert_eq!(m.dim(), 12);
        let z = ZeroWeightSpace::new(&m).unwrap();
        // k = (0,1,1), (1,0,1), (0,0,2), (1,1,0)
        assert_eq!(z.dim(), 4);
        assert_eq!(z.m, 2);
        assert!(ZeroWeightSpace::new(&TensorModule::new(&[1, 2])).is_err());
    }

    #[test]
    fn sites_commute() {
        let m = TensorModule::new(&[1, 2]);
        assert!(linalg::fro(&linalg::commutator(&m.e[0], &m.f[1])) == 0.0);
        let c = linalg::commutator(&m.e[1], &m.f[1]);
        assert!(linalg::fro(&(&c - &m.h[1])) == 0.0);
    }
}
