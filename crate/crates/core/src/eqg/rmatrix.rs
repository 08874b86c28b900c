//! The dynamical R-matrix on `V ⊗ V`, basis `e[1]⊗e[1], e[1]⊗e[-1],
//! e[-1]⊗e[1], e[-1]⊗e[-1]`.

use crate::error::Result;
use crate::linalg::{self, CMat};
use crate::theta::ThetaEvaluator;
use num_complex::Complex64 as C64;

/// Weight of basis vector `i` of `V` (0 -> e[1], 1 -> e[-1]).
pub fn wt(i: usize) -> f64 {
    if i == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn alpha(th: &ThetaEvaluator, eta: C64, z: C64, lambda: C64) -> C64 {
    th.th(lambda + eta * 2.0) * th.th(z) / (th.th(lambda) * th.th(z - eta * 2.0))
}

pub fn beta(th: &ThetaEvaluator, eta: C64, z: C64, lambda: C64) -> C64 {
    -th.th(lambda + z) * th.th(eta * 2.0) / (th.th(lambda) * th.th(z - eta * 2.0))
}

pub fn r_matrix_raw(th: &ThetaEvaluator, eta: C64, z: C64, lambda: C64) -> CMat {
    let mut m = linalg::zeros(4, 4);
    m[(0, 0)] = C64::new(1.0, 0.0);
    m[(3, 3)] = C64::new(1.0, 0.0);
    m[(1, 1)] = alpha(th, eta, z, lambda);
    m[(2, 2)] = alpha(th, eta, z, -lambda);
    m[(1, 2)] = beta(th, eta, z, lambda);
    m[(2, 1)] = beta(th, eta, z, -lambda);
    m
}

pub fn r_matrix(th: &ThetaEvaluator, eta: C64, z: C64, lambda: C64) -> Result<CMat> {
    th.check_pole("r_matrix: lambda", lambda)?;
    th.check_pole("r_matrix: z - 2eta", z - eta * 2.0)?;
    Ok(r_matrix_raw(th, eta, z, lambda))
}

/// `h ⊗ 1 + 1 ⊗ h` on `V ⊗ V`.
pub fn total_weight() -> CMat {
    linalg::diag(&[2.0, 0.0, 0.0, -2.0].map(|x| C64::new(x, 0.0)))
}

/// Operator on `V^{⊗3}` acting by `f(μ)` on the factors `(p, q)` where `μ` is
/// the weight of the remaining factor (`None`: no dependence).
fn embed3(p: usize, q: usize, spectator: Option<usize>, f: &dyn Fn(f64) -> CMat) -> CMat {
    let bit = |idx: usize, slot: usize| (idx >> (2 - slot)) & 1;
    let mut out = linalg::zeros(8, 8);
    let mut cache: [Option<CMat>; 2] = [None, None];
    for col in 0..8 {
        for row in 0..8 {
            let other = (0..3).find(|s| *s != p && *s != q).unwrap();
            if bit(row, other) != bit(col, other) {
                continue;
            }
            let mu_idx = spectator.map(|s| bit(col, s)).unwrap_or(0);
            if cache[mu_idx].is_none() {
                cache[mu_idx] = Some(f(spectator.map(|_| wt(mu_idx)).unwrap_or(0.0)));
            }
            let m = cache[mu_idx].as_ref().unwrap();
            let r = bit(row, p) * 2 + bit(row, q);
            let c = bit(col, p) * 2 + bit(col, q);
            out[(row, col)] = m[(r, c)];
        }
    }
    out
}

/// Relative residual of
/// `R12(z-w, λ-2ηh3) R13(z, λ) R23(w, λ-2ηh1) = R23(w, λ) R13(z, λ-2ηh2) R12(z-w, λ)`.
pub fn qybe_residual(th: &ThetaEvaluator, eta: C64, z: C64, w: C64, lambda: C64) -> f64 {
    let r = |u: C64, l: C64| r_matrix_raw(th, eta, u, l);
    let e2 = eta * 2.0;
    let lhs = embed3(0, 1, Some(2), &|mu| r(z - w, lambda - e2 * mu)) * embed3(0, 2, None, &|_| r(z, lambda)) * embed3(1, 2, Some(0), &|mu| r(w, lambda - e2 * mu));
    let rhs = embed3(1, 2, None, &|_| r(w, lambda)) * embed3(0, 2, Some(1), &|mu| r(z, lambda - e2 * mu)) * embed3(0, 1, None, &|_| r(z - w, lambda));
    linalg::fro(&(&lhs - &rhs)) / linalg::fro(&rhs)
}

/// `K ⊗ K` with `K = ((0,1),(1,0))`.
pub fn k_twist() -> CMat {
    linalg::from_fn(4, 4, |i, j| if i + j == 3 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
}

/// `‖K⊗K R(z,λ) - R(z,-λ) K⊗K‖ / ‖R(z,λ)‖`.
pub fn ktwist_check(th: &ThetaEvaluator, eta: C64, z: C64, lambda: C64) -> Result<f64> {
    let k = k_twist();
    let a = &k * &r_matrix(th, eta, z, lambda)?;
    let b = &r_matrix(th, eta, z, -lambda)? * &k;
    Ok(linalg::fro(&(&a - &b)) / linalg::fro(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::Lattice;

    fn ev() -> ThetaEvaluator {
        ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07)).unwrap()).unwrap()
    }
    const ETA: C64 = C64 { re: 0.137, im: 0.041 };

    #[test]
    fn flip_at_zero() {
        let th = ev();
        let r = r_matrix(&th, ETA, C64::new(0.0, 0.0), C64::new(0.23, 0.19)).unwrap();
        let p = linalg::from_fn(4, 4, |i, j| {
            let f = [0, 2, 1, 3];
            if f[j] == i {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        assert!(linalg::fro(&(&r - &p)) < 1e-13);
    }

    #[test]
    fn weight_preserving_block_structure() {
        let th = ev();
        let (z, l) = (C64::new(0.31, -0.2), C64::new(0.23, 0.19));
        let r = r_matrix(&th, ETA, z, l).unwrap();
        assert!(linalg::fro(&linalg::commutator(&r, &total_weight())) < 1e-14);
        assert_eq!(r[(1, 1)], alpha(&th, ETA, z, l));
        assert_eq!(r[(1, 2)], beta(&th, ETA, z, l));
        assert_eq!(r[(2, 1)], beta(&th, ETA, z, -l));
        assert_eq!(r[(2, 2)], alpha(&th, ETA, z, -l));
    }

    #[test]
    fn qybe_holds() {
        let th = ev();
        let r = qybe_residual(&th, ETA, C64::new(0.31, -0.2), C64::new(-0.17, 0.33), C64::new(0.23, 0.19));
        assert!(r < 1e-12, "{r}");
    }

    #[test]
    fn twist() {
        let th = ev();
        assert!(ktwist_check(&th, ETA, C64::new(0.31, -0.2), C64::new(0.23, 0.19)).unwrap() < 1e-14);
        let k = k_twist();
        assert!(linalg::fro(&(&k * &k - linalg::identity(4))) == 0.0);
    }

    #[test]
    fn pole_checked() {
        let th = ev();
        assert!(r_matrix(&th, ETA, ETA * 2.0, C64::new(0.2, 0.1)).is_err());
        assert!(r_matrix(&th, ETA, C64::new(0.3, 0.0), C64::new(1.0, 0.0)).is_err());
    }
}
