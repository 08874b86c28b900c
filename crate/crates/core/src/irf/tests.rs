use super::*;
use crate::params::{ModelParams, Site};
use crate::sample::Sampler;
use crate::theta::{Lattice, ThetaEvaluator};
use num_complex::Complex64 as C64;

fn params(zs: &[C64]) -> ModelParams {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07)).unwrap()).unwrap();
    ModelParams::new(th, C64::new(0.137, 0.041), zs.iter().map(|&z| Site { z, lambda: 1 }).collect()).unwrap()
}

fn zs3() -> Vec<C64> {
    vec![C64::new(0.21, 0.05), C64::new(0.57, -0.11), C64::new(-0.3, 0.2)]
}

fn zs5() -> Vec<C64> {
    let mut z = zs3();
    z.extend([C64::new(0.05, -0.27), C64::new(-0.61, -0.08)]);
    z
}

#[test]
fn dual_construction_agrees() {
    let mut s = Sampler::new(3);
    for zs in [vec![C64::new(0.21, 0.05)], zs3(), zs5()] {
        let r = dual_construction_check(&params(&zs), &mut s, 3, 3).unwrap();
        assert!(r.residual < 1e-9, "{r:?}");
        assert!(r.forbidden < 1e-12, "{r:?}");
        assert!(r.fit_gap > 1e-6, "{r:?}");
        if r.n > 1 {
            assert!(r.naive_residual > 1e-2, "{r:?}");
        }
    }
}

#[test]
fn transfer_matrices_commute() {
    let mut s = Sampler::new(5);
    for zs in [zs3(), zs5()] {
        let p = params(&zs);
        let (z, w) = (generic_spectral(&p, &mut s), generic_spectral(&p, &mut s));
        let (a, b) = (build_t_irf_paths(&p, z).unwrap(), build_t_irf_paths(&p, w).unwrap());
        assert!(commutator_residual(&a, &b) < 1e-12);
        let (a, b) = (build_t_irf_sov(&p, z).unwrap(), build_t_irf_sov(&p, w).unwrap());
        assert!(commutator_residual(&a, &b) < 1e-12);
    }
}

#[test]
fn single_site_transfer_has_zero_diagonal() {
    let p = params(&[C64::new(0.21, 0.05)]);
    let t = build_t_irf_paths(&p, C64::new(0.3, 0.1)).unwrap();
    assert_eq!(t[(0, 0)], C64::new(0.0, 0.0));
    assert_eq!(t[(1, 1)], C64::new(0.0, 0.0));
    assert!(t[(0, 1)].norm() > 1e-6 && t[(1, 0)].norm() > 1e-6);
}

#[test]
fn even_n_is_rejected() {
    let p = params(&zs3()[..2]);
    assert!(build_t_irf_paths(&p, C64::new(0.3, 0.1)).is_err());
}

#[test]
fn spectrum_is_certified() {
    let mut s = Sampler::new(7);
    for zs in [vec![C64::new(0.21, 0.05)], zs3()] {
        let r = certify_spectrum(&params(&zs), &mut s, &SpectrumOptions::default()).unwrap();
        for c in &r.certificates {
            assert!(c.pass, "{:?}", (c.index, c.membership_residual, c.quasi_residuals, &c.quadratic_residuals, &c.second_line_residuals, c.reconstruction_angle, c.gap));
            assert!(c.impostor_residual > 1e-4, "{}", c.impostor_residual);
        }
        assert!(r.span_smin > 1e-6, "{}", r.span_smin);
        assert!(r.all_pass);
    }
}

#[test]
fn partition_function_is_row_symmetric() {
    let p = params(&zs3());
    let mut s = Sampler::new(9);
    let rows: Vec<C64> = (0..4).map(|_| generic_spectral(&p, &mut s)).collect();
    let perms = vec![vec![1, 0, 2, 3], vec![3, 2, 1, 0], vec![2, 0, 3, 1]];
    assert!(partition::permutation_residual(&p, &rows, &perms).unwrap() < 1e-10);
}

// Every face on the diagonal has b = a, so one row always gives zero; the
// eigenvalues of the dual matrix must sum to zero as well.
#[test]
fn single_row_partition_function_is_eigenvalue_sum() {
    let zs = zs3();
    let p = params(&zs);
    let eta = p.eta();
    let up = p.shifted(eta).unwrap();
    let mut s = Sampler::new(13);
    let w = generic_spectral(&up, &mut s);
    let z1 = partition_function(&p, &[w]).unwrap();
    assert_eq!(z1, C64::new(0.0, 0.0));
    let ts = build_t_irf_sov(&up, w).unwrap();
    let (vals, _) = crate::linalg::eigen(&ts).unwrap();
    let sum: C64 = vals.iter().sum();
    assert!(sum.norm() < 1e-12 * crate::linalg::fro(&ts));
}

#[test]
fn continuous_bethe_eigenfunction() {
    let mut s = Sampler::new(17);
    let p = params(&zs3()[..2]);
    let r = continuous_bethe(&p, &mut s, 4).unwrap();
    assert!(r.bethe_residual < 1e-10, "{r:?}");
    assert!(r.eigen_residual < 1e-9, "{r:?}");
    assert!(r.character_residual < 1e-9, "{r:?}");
}
