//! The difference-operator representation of the elliptic quantum group:
//! dynamical Yang-Baxter equation, the sixteen RLL relations and the
//! highest-weight vector.

use ellsov::eqg::{self, OperatorQuadruple};
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let eta = C64::new(0.137, 0.041);
    let (z, w, lambda) = (C64::new(0.33, 0.1), C64::new(-0.12, 0.2), C64::new(0.41, -0.17));
    println!("dynamical YBE residual: {:.2e}", eqg::qybe_residual(&th, eta, z, w, lambda));

    let sites = vec![Site { z: C64::new(0.21, 0.05), lambda: 1 }, Site { z: C64::new(0.57, -0.11), lambda: 2 }];
    let params = ModelParams::new(th, eta, sites)?;
    let q = OperatorQuadruple::new(&params);
    println!("grid size: {}", q.dim());
    let mut s = Sampler::new(9);
    for _ in 0..3 {
        let (z, w, l) = (eqg::generic_z(&params, &mut s), eqg::generic_z(&params, &mut s), eqg::generic_lambda(&params, &mut s));
        let r = eqg::rll_residual(&q, z, w, l)?;
        println!("RLL at lambda = {l:.3}: max residual {:.2e}", r.max_residual);
    }
    let hw = eqg::highest_weight_check(&q, z, lambda)?;
    println!("|c(z) v_hw| = {:.1e}, a-eigen {:.1e}, d-eigen {:.1e}", hw.c_annihilates, hw.a_eigen, hw.d_eigen);
    Ok(())
}
