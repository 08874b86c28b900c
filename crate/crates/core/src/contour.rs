//! Contour quadrature: Laurent coefficients on circles and Gauss–Legendre
//! line integrals. Used for residues, zero counting and as an independent
//! check on analytic derivatives.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

/// Coefficient `a_k` of the Laurent expansion `f(c + t) = sum a_k t^k`,
/// from the trapezoid rule on `|t| = radius` with `n` nodes. Spectrally
/// accurate when `f` is analytic on an annulus around the circle.
pub fn laurent_coefficient<F: Fn(C64) -> C64>(f: F, center: C64, radius: f64, n: usize, k: i32) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for j in 0..n {
        let phi = 2.0 * PI * (j as f64) / (n as f64);
        let u = C64::from_polar(1.0, phi);
        s += f(center + u * radius) * u.powi(-k);
    }
    s / (n as f64) / radius.powi(k)
}

/// Residue of `f` at `center`.
pub fn residue<F: Fn(C64) -> C64>(f: F, center: C64, radius: f64, n: usize) -> C64 {
    laurent_coefficient(f, center, radius, n, -1)
}

/// Taylor coefficients `f^(k)(c)/k!` for `k = 0..=deg`.
pub fn taylor_coefficients<F: Fn(C64) -> C64>(f: F, center: C64, radius: f64, n: usize, deg: usize) -> Vec<C64> {
    let vals: Vec<C64> = (0..n)
        .map(|j| f(center + C64::from_polar(radius, 2.0 * PI * j as f64 / n as f64)))
        .collect();
    (0..=deg)
        .map(|k| {
            let mut s = C64::new(0.0, 0.0);
            for (j, v) in vals.iter().enumerate() {
                s += v * C64::from_polar(1.0, -2.0 * PI * (j * k) as f64 / n as f64);
            }
            s / (n as f64) / radius.powi(k as i32)
        })
        .collect()
}

/// Gauss–Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut t = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * t * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if dt.abs() < 1e-16 {
                break;
            }
        }
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

/// `∫ f(z) dz` along the segment `a -> b`, composite Gauss–Legendre.
pub fn segment_integral<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64, panels: usize, order: usize) -> C64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut s = C64::new(0.0, 0.0);
    for p in 0..panels {
        let lo = a + h * p as f64;
        for (xi, wi) in x.iter().zip(&w) {
            s += f(lo + h * (0.5 * (xi + 1.0))) * *wi;
        }
    }
    s * h * 0.5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_of_simple_pole() {
        let f = |z: C64| (z * 2.0).exp() / (z - C64::new(0.1, 0.2));
        let r = residue(f, C64::new(0.1, 0.2), 0.05, 64);
        assert!((r - C64::new(0.2, 0.4).exp()).norm() < 1e-13);
    }

    #[test]
    fn taylor_of_exp() {
        let c = taylor_coefficients(|z: C64| z.exp(), C64::new(0.0, 0.0), 0.5, 48, 4);
        let mut f = 1.0;
        for k in 0..=4 {
            if k > 0 {
                f *= k as f64;
            }
            assert!((c[k] - C64::new(1.0 / f, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(8);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(14)).sum();
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn closed_contour_counts_winding() {
        let f = |z: C64| 1.0 / z;
        let pts = [C64::new(-1.0, -1.0), C64::new(1.0, -1.0), C64::new(1.0, 1.0), C64::new(-1.0, 1.0)];
        let mut s = C64::new(0.0, 0.0);
        for i in 0..4 {
            s += segment_integral(&f, pts[i], pts[(i + 1) % 4], 8, 16);
        }
        assert!((s / C64::new(0.0, 2.0 * PI) - 1.0).norm() < 1e-12);
    }
}
