//! Local Boltzmann weights from the dynamical R-matrix:
//! `R(z, -2ηd) e[c-d]⊗e[b-c] = Σ_a W(c,b,a,d|z) e[b-a]⊗e[a-d]`.

use crate::eqg::rmatrix::r_matrix;
use crate::error::Result;
use crate::linalg::CMat;
use crate::theta::ThetaEvaluator;
use num_complex::Complex64 as C64;

fn slot(step2: i64) -> Option<usize> {
    match step2 {
        2 => Some(0),
        -2 => Some(1),
        _ => None,
    }
}

/// Entry of `r` (the R-matrix at `λ = -2ηd`) for doubled heights; zero
/// unless every step is `±1`.
pub fn weight_from_r(r: &CMat, c2: i64, b2: i64, a2: i64, d2: i64) -> C64 {
    match (slot(c2 - d2), slot(b2 - c2), slot(b2 - a2), slot(a2 - d2)) {
        (Some(i), Some(j), Some(p), Some(q)) => r[(p * 2 + q, i * 2 + j)],
        _ => C64::new(0.0, 0.0),
    }
}

/// `W(c,b,a,d|z)` for heights given doubled (`c2 = 2c`, ...).
pub fn boltzmann_weight(th: &ThetaEvaluator, eta: C64, c2: i64, b2: i64, a2: i64, d2: i64, z: C64) -> Result<C64> {
    if [c2 - d2, b2 - c2, b2 - a2, a2 - d2].iter().any(|s| s.abs() != 2) {
        return Ok(C64::new(0.0, 0.0));
    }
    let r = r_matrix(th, eta, z, -eta * d2 as f64)?;
    Ok(weight_from_r(&r, c2, b2, a2, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eqg::rmatrix::alpha;
    use crate::theta::Lattice;

    fn ev() -> ThetaEvaluator {
        ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07)).unwrap()).unwrap()
    }
    const ETA: C64 = C64 { re: 0.137, im: 0.041 };

    #[test]
    fn unit_faces() {
        let th = ev();
        let z = C64::new(0.3, -0.1);
        for l2 in [-3, -1, 1, 3] {
            // heights d=l, c=l+1, b=l+2, a=l+1 around the face
            assert!((boltzmann_weight(&th, ETA, l2 + 2, l2 + 4, l2 + 2, l2, z).unwrap() - 1.0).norm() < 1e-15);
            assert!((boltzmann_weight(&th, ETA, l2 - 2, l2 - 4, l2 - 2, l2, z).unwrap() - 1.0).norm() < 1e-15);
            // positional W(l, l+1, l+2, l+1) is the α entry instead
            let w = boltzmann_weight(&th, ETA, l2, l2 + 2, l2 + 4, l2 + 2, z).unwrap();
            assert!((w - alpha(&th, ETA, z, ETA * (l2 + 2) as f64)).norm() < 1e-14);
        }
    }

    #[test]
    fn flip_at_zero() {
        let th = ev();
        let z0 = C64::new(0.0, 0.0);
        for (c, b, a, d) in [(1, 3, 1, -1), (1, -1, 1, -1), (1, -1, -3, -1), (-1, 1, 3, 1), (-1, 1, -1, 1)] {
            let w = boltzmann_weight(&th, ETA, c, b, a, d, z0).unwrap();
            let want = if a == c { 1.0 } else { 0.0 };
            assert!((w - want).norm() < 1e-14, "{c} {b} {a} {d}: {w}");
        }
    }

    #[test]
    fn inadmissible_is_zero() {
        let th = ev();
        assert_eq!(boltzmann_weight(&th, ETA, 1, 3, 1, 5, C64::new(0.2, 0.1)).unwrap(), C64::new(0.0, 0.0));
        assert_eq!(boltzmann_weight(&th, ETA, 1, 1, 1, -1, C64::new(0.2, 0.1)).unwrap(), C64::new(0.0, 0.0));
    }
}
