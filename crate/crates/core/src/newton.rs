//! Damped Newton iteration for complex systems, square or underdetermined.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use num_complex::Complex64 as C64;

#[derive(Clone, Debug)]
pub struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub max_halvings: usize,
    /// Jacobians with `s_min/s_max` below this are treated as singular.
    pub singular_tol: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions { tol: 1e-10, max_iter: 200, max_halvings: 20, singular_tol: 1e-14 }
    }
}

#[derive(Clone, Debug)]
pub struct NewtonResult {
    pub x: Vec<C64>,
    pub residual: f64,
    pub iterations: usize,
}

fn inf_norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Newton step `dx` solving `J dx = -F`; the minimum-norm step when `J`
/// has more columns than rows.
fn step(j: &CMat, f: &[C64], it: usize, opts: &NewtonOptions) -> Result<Vec<C64>> {
    let sv = linalg::singular_values(j)?;
    let smax = sv.first().copied().unwrap_or(0.0);
    let smin = sv.last().copied().unwrap_or(0.0);
    if !(smax > 0.0) || smin / smax < opts.singular_tol {
        return Err(Error::SingularStep(it));
    }
    let rhs = linalg::col(&f.iter().map(|v| -v).collect::<Vec<_>>());
    let dx = if j.nrows() == j.ncols() {
        linalg::solve(j, &rhs)?
    } else {
        let jh = j.adjoint().to_owned();
        let y = linalg::solve(&(j * &jh), &rhs)?;
        &jh * &y
    };
    Ok(linalg::col_vec(&dx))
}

pub fn damped_newton<F>(f: F, x0: &[C64], opts: &NewtonOptions) -> Result<NewtonResult>
where
    F: Fn(&[C64]) -> (Vec<C64>, CMat),
{
    let mut x = x0.to_vec();
    let (mut fx, mut jx) = f(&x);
    let mut r = inf_norm(&fx);
    for it in 0..opts.max_iter {
        if r <= opts.tol {
            return Ok(NewtonResult { x, residual: r, iterations: it });
        }
        let dx = step(&jx, &fx, it, opts)?;
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..=opts.max_halvings {
            let xt: Vec<C64> = x.iter().zip(&dx).map(|(a, d)| a + d * t).collect();
            let (ft, jt) = f(&xt);
            let rt = inf_norm(&ft);
            if rt.is_finite() && rt < r {
                accepted = Some((xt, ft, jt, rt));
                break;
            }
            t *= 0.5;
        }
        match accepted {
            Some((xt, ft, jt, rt)) => {
                x = xt;
                fx = ft;
                jx = jt;
                r = rt;
            }
            None => return Err(Error::NoConvergence { iters: it, residual: r }),
        }
    }
    if r <= opts.tol {
        return Ok(NewtonResult { x, residual: r, iterations: opts.max_iter });
    }
    Err(Error::NoConvergence { iters: opts.max_iter, residual: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_square_system() {
        // x^2 = 2+i, y = x + 1
        let f = |v: &[C64]| {
            let r = vec![v[0] * v[0] - C64::new(2.0, 1.0), v[1] - v[0] - 1.0];
            let j = linalg::from_fn(2, 2, |i, k| match (i, k) {
                (0, 0) => v[0] * 2.0,
                (0, 1) => C64::new(0.0, 0.0),
                (1, 0) => C64::new(-1.0, 0.0),
                _ => C64::new(1.0, 0.0),
            });
            (r, j)
        };
        let s = damped_newton(f, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], &NewtonOptions::default()).unwrap();
        assert!((s.x[0] * s.x[0] - C64::new(2.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn underdetermined_lands_on_manifold() {
        // x*y = 1
        let f = |v: &[C64]| (vec![v[0] * v[1] - 1.0], linalg::from_fn(1, 2, |_, k| if k == 0 { v[1] } else { v[0] }));
        let s = damped_newton(f, &[C64::new(2.0, 0.3), C64::new(0.2, 0.1)], &NewtonOptions::default()).unwrap();
        assert!((s.x[0] * s.x[1] - 1.0).norm() < 1e-10);
    }

    #[test]
    fn singular_jacobian_reported() {
        let f = |v: &[C64]| (vec![v[0] * 0.0 + 1.0], linalg::zeros(1, 1));
        assert!(matches!(damped_newton(f, &[C64::new(1.0, 0.0)], &NewtonOptions::default()), Err(Error::SingularStep(0))));
    }
}
