//! Certify the spectrum of the n = 3 IRF transfer matrix and rebuild
//! each eigenvector from the eigenvalue alone.

use ellsov::irf::{self, SpectrumOptions};
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let zs = [C64::new(0.21, 0.05), C64::new(0.57, -0.11), C64::new(-0.3, 0.2)];
    let params = ModelParams::new(th, C64::new(0.137, 0.041), zs.iter().map(|&z| Site { z, lambda: 1 }).collect())?;
    let r = irf::certify_spectrum(&params, &mut Sampler::new(7), &SpectrumOptions::default())?;
    println!("z0 = {:.4}", r.z0);
    println!("{:>3} {:>28} {:>10} {:>10} {:>10} {:>6}", "k", "eigenvalue", "quadratic", "impostor", "angle", "pass");
    for c in &r.certificates {
        let quad = c.quadratic_residuals.iter().cloned().fold(0.0, f64::max);
        println!("{:>3} {:>28.6} {:>10.1e} {:>10.1e} {:>10.1e} {:>6}", c.index, c.eigenvalue, quad, c.impostor_residual, c.reconstruction_angle, c.pass);
    }
    println!("smallest singular value of the reconstructed basis: {:.3e}", r.span_smin);
    Ok(())
}
