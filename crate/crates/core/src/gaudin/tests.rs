use super::*;
use crate::linalg;
use crate::params::{ModelParams, Site};
use crate::sample::Sampler;
use crate::theta::{Lattice, ThetaEvaluator};
use num_complex::Complex64 as C64;

const ZS: [C64; 3] = [C64 { re: 0.1, im: 0.05 }, C64 { re: 0.45, im: -0.1 }, C64 { re: -0.3, im: 0.2 }];

fn model(lambdas: &[u32]) -> GaudinModel {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07)).unwrap()).unwrap();
    let sites = lambdas.iter().zip(ZS).map(|(&lambda, z)| Site { z, lambda }).collect();
    GaudinModel::new(&ModelParams::new(th, C64::new(0.137, 0.041), sites).unwrap()).unwrap()
}

const L0: C64 = C64 { re: 0.37, im: 0.12 };

#[test]
fn field_ops_structure() {
    let g = model(&[2]);
    let ops = g.field_ops(C64::new(0.21, -0.33), L0).unwrap();
    assert_eq!(ops.e.nrows(), 3);
    let th = g.params().th();
    let s = th.sigma_raw(L0, C64::new(0.21, -0.33) - ZS[0]);
    assert!((ops.f[(1, 0)] - s).norm() < 1e-15 && (ops.f[(2, 1)] - s).norm() < 1e-15);
    let g = model(&[1, 1, 2]);
    let z = C64::new(0.21, -0.33);
    let ops = g.field_ops(z, L0).unwrap();
    let htot: linalg::CMat = g.module().h.iter().fold(linalg::zeros(12, 12), |a, h| &a + h);
    assert!(linalg::fro(&linalg::commutator(&ops.h, &htot)) < 1e-14);
    let ce = linalg::commutator(&htot, &ops.e);
    assert!(linalg::fro(&(&ce - &linalg::scaled(&ops.e, C64::new(2.0, 0.0)))) < 1e-13);
    assert!(g.ef_commutator_residual(z, L0).unwrap() < 1e-12);
    assert!(g.field_ops(ZS[1], L0).is_err());
}

#[test]
fn hamiltonians_commute_and_sum_to_zero() {
    let mut s = Sampler::new(7);
    for ls in [vec![1, 1], vec![1, 1, 2], vec![2, 2]] {
        let g = model(&ls);
        let hs = g.hamiltonians();
        let u = g.random_jet(&mut s, L0, 6);
        for i in 0..hs.len() {
            for j in 0..i {
                let r = commutator_residual(&hs[i], &hs[j], &u).unwrap();
                assert!(r < 1e-10, "{ls:?} [{i},{j}] = {r}");
            }
        }
        let sum = LambdaDiffOp::combine((1..hs.len()).map(|j| (C64::new(1.0, 0.0), hs[j].clone())).collect());
        let v = sum.apply(&u).unwrap();
        assert!(v.norm() < 1e-11 * u.norm(), "{ls:?}");
    }
}

#[test]
fn decomposition_and_s_commutation() {
    let mut s = Sampler::new(8);
    let g = model(&[1, 1, 2]);
    let u = g.random_jet(&mut s, L0, 6);
    for z in [C64::new(0.21, -0.33), C64::new(-0.4, 0.1)] {
        let r = difference_residual(&g.s_operator(z).unwrap(), &g.s_decomposition(z).unwrap(), &u).unwrap();
        assert!(r < 1e-10, "{r}");
        let r = difference_residual(&g.s_operator(z).unwrap(), &g.s_operator_alternative(z).unwrap(), &u).unwrap();
        assert!(r < 1e-10, "{r}");
    }
    let (z, w) = (C64::new(0.21, -0.33), C64::new(-0.4, 0.1));
    let r = commutator_residual(&g.s_operator(z).unwrap(), &g.s_operator(w).unwrap(), &u).unwrap();
    assert!(r < 1e-10, "{r}");
    // the displayed normalization (weight 1 on ef + fe) does not commute
    let r = commutator_residual(&g.s_operator_weighted(z, 1.0).unwrap(), &g.s_operator_weighted(w, 1.0).unwrap(), &u).unwrap();
    assert!(r > 1e-4, "{r}");
}

#[test]
fn single_site_lame() {
    let g = model(&[4]);
    let h0 = g.h0();
    let th = g.params().th();
    let c = h0.coefficient(0, L0, 0).unwrap();
    // m = 2: ∂² - m(m+1)℘̄(λ)
    assert!((c[0][(0, 0)] + th.wp_bar_raw(L0) * 6.0).norm() < 1e-12);
}

#[test]
fn coefficients_periodic_in_lambda() {
    let g = model(&[1, 1, 2]);
    for h in g.hamiltonians() {
        let a = h.coefficient(0, L0, 3).unwrap();
        let b = h.coefficient(0, L0 + 1.0, 3).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(linalg::fro(&(x - y)) < 1e-11 * (1.0 + linalg::fro(x)));
        }
    }
}

#[test]
fn bethe_pair_of_spins() {
    let g = model(&[1, 1]);
    let c = C64::new(0.3, 0.1);
    let sol = solve_gaudin_bethe(&g, c, &[C64::new(0.3, 0.2)], &BetheOptions::default()).unwrap();
    assert!(sol.residual < 1e-10);
    let th = g.params().th();
    let w = sol.w[0];
    assert!((th.zeta_bar_raw(w - ZS[0]) + th.zeta_bar_raw(w - ZS[1]) - c * 2.0).norm() < 1e-10);
    let ls = [L0, C64::new(-0.2, 0.3), C64::new(0.1, -0.25), C64::new(0.45, 0.4), C64::new(-0.33, -0.1)];
    let zp = [C64::new(0.21, -0.33)];
    let r = bethe_eigen_report(&g, &sol, FReading::Lambda, &ls, &zp).unwrap();
    assert!(r.eigen_residual < 1e-8 && r.eps_sum < 1e-9 && r.s_residual < 1e-8, "{r:?}");
}

#[test]
fn bethe_two_roots_pick_reading_and_factor() {
    let g = model(&[2, 2]);
    let c = C64::new(0.3, 0.1);
    let seed = [C64::new(0.3, 0.2), C64::new(-0.2, -0.25)];
    let sol = solve_gaudin_bethe(&g, c, &seed, &BetheOptions::default()).unwrap();
    let ls = [L0, C64::new(-0.2, 0.3)];
    let good = bethe_eigen_report(&g, &sol, FReading::Lambda, &ls, &[]).unwrap();
    assert!(good.eigen_residual < 1e-8 && good.eps_sum < 1e-9, "{good:?}");
    let other = bethe_eigen_report(&g, &sol, FReading::MinusLambda, &ls, &[]).unwrap();
    assert!(other.eigen_residual > 1e-4, "{other:?}");
    // the equations with a unit pair factor give no eigenvector
    let opts = BetheOptions { pair_factor: 1.0, ..Default::default() };
    let sol1 = solve_gaudin_bethe(&g, c, &seed, &opts).unwrap();
    let bad = bethe_eigen_report(&g, &sol1, FReading::Lambda, &ls, &[]).unwrap();
    assert!(bad.eigen_residual > 1e-4, "{bad:?}");
}

#[test]
fn bethe_rejects_bad_input() {
    let g = model(&[1, 1]);
    assert!(solve_gaudin_bethe(&g, C64::new(0.3, 0.1), &[], &BetheOptions::default()).is_err());
    let g = model(&[2, 2]);
    let z = C64::new(0.1, 0.1);
    assert!(solve_gaudin_bethe(&g, C64::new(0.3, 0.1), &[z, z], &BetheOptions::default()).is_err());
}
