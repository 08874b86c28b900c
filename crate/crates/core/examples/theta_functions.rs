//! Evaluate θ and its companions, then interpolate an element of Θ₃(χ)
//! and locate its zeros by contour integration.

use ellsov::sample::Sampler;
use ellsov::spaces::{self, Character};
use ellsov::theta::{Lattice, ThetaEvaluator};
use ellsov::C64;

fn main() -> ellsov::Result<()> {
    let th = ThetaEvaluator::new(Lattice::new(C64::new(0.31, 1.07))?)?;
    let z = C64::new(0.3, 0.2);
    println!("theta({z})      = {}", th.th(z));
    println!("theta'(0)        = {}", th.theta_prime_zero());
    println!("sigma_0.4(z)     = {}", th.sigma(C64::new(0.4, 0.0), z)?);
    println!("zeta_bar(z)      = {}", th.zeta_bar(z)?);
    println!("wp_bar(z)        = {}", th.wp_bar(z)?);

    let chi = Character::new(C64::new(0.4, 0.2), C64::new(-0.7, 1.1))?;
    let mut s = Sampler::new(42);
    let nodes = spaces::generic_nodes(&th, 3, &chi, &mut s, &[]);
    let f = spaces::interpolate(&th, 3, &chi, &nodes, &[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-0.5, 0.3)])?;
    let (count, sum) = spaces::contour_zero_moments(&th, &|z| f.eval_d(&th, z));
    let expected = chi.phi(th.tau()) + spaces::delta(th.tau()) * 3.0;
    println!("zeros of f: count {count:.8}, sum {sum:.8}");
    println!("phi(chi) + 3 delta = {expected:.8} (equal mod the lattice: {:.2e})", th.lattice().dist(sum - expected));
    Ok(())
}
