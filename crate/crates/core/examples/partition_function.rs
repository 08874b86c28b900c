//! Partition function of the IRF model on four rows and its symmetry
//! under reordering the rows.

use ellsov::irf;
use ellsov::params::{ModelParams, Site};
use ellsov::sample::Sampler;
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let zs = [C64::new(0.21, 0.05), C64::new(0.57, -0.11), C64::new(-0.3, 0.2)];
    let params = ModelParams::new(th, C64::new(0.137, 0.041), zs.iter().map(|&z| Site { z, lambda: 1 }).collect())?;
    let mut s = Sampler::new(11);
    let rows: Vec<C64> = (0..4).map(|_| irf::generic_spectral(&params, &mut s)).collect();
    println!("Z(w1..w4) = {:.12}", irf::partition_function(&params, &rows)?);
    let reversed: Vec<C64> = rows.iter().rev().cloned().collect();
    println!("Z(w4..w1) = {:.12}", irf::partition_function(&params, &reversed)?);
    println!("Z(w1)     = {} (odd row counts vanish)", irf::partition_function(&params, &rows[..1])?);
    Ok(())
}
