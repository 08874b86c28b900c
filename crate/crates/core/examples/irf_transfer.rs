//! The antiperiodic IRF transfer matrix built from Boltzmann weights and
//! from the difference operators, and the intertwiner relating them.

use ellsov::irf;
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let zs = [C64::new(0.21, 0.05), C64::new(0.57, -0.11), C64::new(-0.3, 0.2)];
    let params = ModelParams::new(th, C64::new(0.137, 0.041), zs.iter().map(|&z| Site { z, lambda: 1 }).collect())?;

    let t = irf::build_t_irf_paths(&params, C64::new(0.13, 0.07))?;
    println!("T(0.13+0.07i) in the path basis:");
    for i in 0..t.nrows() {
        let row: Vec<String> = (0..t.ncols()).map(|j| format!("{:>9.4}", t[(i, j)].norm())).collect();
        println!("  {}", row.join(" "));
    }

    let mut s = Sampler::new(3);
    let d = irf::dual_construction_check(&params, &mut s, 3, 5)?;
    println!("two constructions, same parameters: relative difference {:.2e}", d.naive_residual);
    println!("after the shift z_i -> z_i - eta and intertwining: {:.2e}", d.residual);
    let (z, w) = (irf::generic_spectral(&params, &mut s), irf::generic_spectral(&params, &mut s));
    let r = irf::commutator_residual(&irf::build_t_irf_paths(&params, z)?, &irf::build_t_irf_paths(&params, w)?);
    println!("[T(z), T(w)] relative: {r:.2e}");
    Ok(())
}
