//! Bethe ansatz for the transfer matrix on continuous variables: solve
//! the separated difference equation and test u(x) = ∏Q(x_i).

use ellsov::irf;
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let sites = vec![Site { z: C64::new(0.21, 0.05), lambda: 1 }, Site { z: C64::new(0.57, -0.11), lambda: 1 }];
    let params = ModelParams::new(th, C64::new(0.137, 0.041), sites)?;
    let r = irf::continuous_bethe(&params, &mut Sampler::new(17), 6)?;
    println!("Q(x) = exp({:.8} x) θ(x - {:.8})", r.a, r.w[0]);
    println!("Bethe equation residual {:.1e}", r.bethe_residual);
    println!("T(z)u - eps(z)u, relative: {:.1e}", r.eigen_residual);
    println!("character of Q: ({:.8}, {:.8})", r.character.chi1, r.character.chi_tau);
    println!("from (a, w):    ({:.8}, {:.8})", r.character_formula.chi1, r.character_formula.chi_tau);
    Ok(())
}
