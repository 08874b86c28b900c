//! Thin wrappers over faer for the dense complex linear algebra we need.

use crate::error::{Error, Result};
use faer::linalg::solvers::{DenseSolveCore, Solve};
use num_complex::Complex64 as C64;

pub type CMat = faer::Mat<C64>;

pub fn zeros(r: usize, c: usize) -> CMat {
    CMat::zeros(r, c)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_fn(r: usize, c: usize, f: impl FnMut(usize, usize) -> C64) -> CMat {
    CMat::from_fn(r, c, f)
}

pub fn col(v: &[C64]) -> CMat {
    CMat::from_fn(v.len(), 1, |i, _| v[i])
}

pub fn col_vec(m: &CMat) -> Vec<C64> {
    (0..m.nrows()).map(|i| m[(i, 0)]).collect()
}

/// Frobenius norm.
pub fn fro(m: &CMat) -> f64 {
    m.norm_l2()
}

pub fn scaled(m: &CMat, s: C64) -> CMat {
    CMat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * s)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

pub fn diag(v: &[C64]) -> CMat {
    let n = v.len();
    CMat::from_fn(n, n, |i, j| if i == j { v[i] } else { C64::new(0.0, 0.0) })
}

pub fn all_finite(m: &CMat) -> bool {
    (0..m.nrows()).all(|i| (0..m.ncols()).all(|j| m[(i, j)].re.is_finite() && m[(i, j)].im.is_finite()))
}

pub fn solve(a: &CMat, b: &CMat) -> Result<CMat> {
    let x = a.partial_piv_lu().solve(b);
    if !all_finite(&x) {
        return Err(Error::InvalidArgument("singular linear system".into()));
    }
    Ok(x)
}

pub fn inverse(a: &CMat) -> Result<CMat> {
    let x = a.partial_piv_lu().inverse();
    if !all_finite(&x) {
        return Err(Error::InvalidArgument("singular matrix".into()));
    }
    Ok(x)
}

/// Singular values in nonincreasing order.
pub fn singular_values(a: &CMat) -> Result<Vec<f64>> {
    let s = a.singular_values().map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    Ok(s)
}

/// Right singular vector of the smallest singular value, with the
/// normalised singular values `(s_min/s_max, s_second/s_max)`.
pub fn null_vector(a: &CMat) -> Result<(Vec<C64>, f64, f64)> {
    let svd = a.thin_svd().map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|v| v.re).collect();
    let n = s.len();
    let v = svd.V();
    let x: Vec<C64> = (0..v.nrows()).map(|i| v[(i, n - 1)]).collect();
    let smax = s[0].max(f64::MIN_POSITIVE);
    let second = if n >= 2 { s[n - 2] / smax } else { 1.0 };
    Ok((x, s[n - 1] / smax, second))
}

/// Eigenvalues and eigenvectors (columns) of a general complex matrix.
pub fn eigen(a: &CMat) -> Result<(Vec<C64>, CMat)> {
    let e = a.eigen().map_err(|e| Error::Eigensolver(format!("{e:?}")))?;
    let vals: Vec<C64> = e.S().column_vector().iter().cloned().collect();
    let u = e.U();
    let vecs = CMat::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, j)]);
    Ok((vals, vecs))
}

pub fn vnorm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Sine of the angle between two complex vectors.
pub fn sin_angle(u: &[C64], v: &[C64]) -> f64 {
    let ip: C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
    let c = ip.norm() / (vnorm(u) * vnorm(v));
    (1.0 - (c * c).min(1.0)).max(0.0).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_reconstructs() {
        let a = from_fn(4, 4, |i, j| C64::new((i * 3 + j) as f64 * 0.1, (i as f64 - j as f64) * 0.2 + 0.05));
        let (vals, vecs) = eigen(&a).unwrap();
        for k in 0..4 {
            let v = from_fn(4, 1, |i, _| vecs[(i, k)]);
            let r = &a * &v - scaled(&v, vals[k]);
            assert!(fro(&r) < 1e-12 * fro(&a));
        }
    }

    #[test]
    fn null_vector_of_rank_deficient() {
        let a = from_fn(5, 3, |i, j| C64::new((i + 1) as f64 * [1.0, 2.0, 3.0][j], 0.0));
        let b = from_fn(5, 3, |i, j| a[(i, j)] + if j == 0 { C64::new(0.0, (i * i) as f64) } else { C64::new(0.0, 0.0) });
        let (x, smin, second) = null_vector(&b).unwrap();
        assert!(smin < 1e-14);
        assert!(second > 1e-3);
        let r = &b * &col(&x);
        assert!(fro(&r) < 1e-12);
    }

    #[test]
    fn solve_and_inverse() {
        let a = from_fn(3, 3, |i, j| C64::new(if i == j { 2.0 } else { 0.3 }, (i + j) as f64 * 0.1));
        let inv = inverse(&a).unwrap();
        assert!(fro(&(&a * &inv - identity(3))) < 1e-14);
        let b = col(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, -1.0)]);
        let x = solve(&a, &b).unwrap();
        assert!(fro(&(&a * &x - &b)) < 1e-14);
    }
}
