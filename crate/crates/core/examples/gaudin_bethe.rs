//! The elliptic Gaudin Hamiltonians on two spin-½ sites: check that they
//! commute, solve the Bethe equation and test the Bethe vector.

use ellsov::gaudin::{self, BetheOptions, FReading, GaudinModel};
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let sites = vec![Site { z: C64::new(0.1, 0.05), lambda: 1 }, Site { z: C64::new(0.45, -0.1), lambda: 1 }];
    let model = GaudinModel::new(&ModelParams::new(th, C64::new(0.137, 0.041), sites)?)?;

    let hs = model.hamiltonians();
    let lambda0 = C64::new(0.37, 0.12);
    let u = model.random_jet(&mut Sampler::new(1), lambda0, 6);
    println!("[H0, H1] residual: {:.2e}", gaudin::commutator_residual(&hs[0], &hs[1], &u)?);
    println!("[H1, H2] residual: {:.2e}", gaudin::commutator_residual(&hs[1], &hs[2], &u)?);

    let sol = gaudin::solve_gaudin_bethe(&model, C64::new(0.3, 0.1), &[C64::new(0.3, 0.2)], &BetheOptions::default())?;
    println!("Bethe root w = {:.10} (residual {:.1e}, {} iterations)", sol.w[0], sol.residual, sol.iterations);
    let lambdas = [lambda0, C64::new(-0.2, 0.3), C64::new(0.1, -0.25)];
    let r = gaudin::bethe_eigen_report(&model, &sol, FReading::Lambda, &lambdas, &[C64::new(0.21, -0.33)])?;
    for (j, e) in r.eps.iter().enumerate() {
        println!("eps_{j} = {e:.10}");
    }
    println!("eigen-residual {:.2e}, |eps_1 + eps_2| = {:.2e}", r.eigen_residual, r.eps_sum);
    Ok(())
}
