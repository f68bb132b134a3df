//! Normalized radial eigenfunctions: evaluation, node structure and
//! quadrature-checked norms.
//!
//! Run with `cargo run --example wavefunctions`.

use mietype::model::{Channel, PotentialParams};
use mietype::quadrature::radial_inner_product;
use mietype::wavefunction::{log_spaced, RadialState};

fn main() {
    let hydrogen = PotentialParams::natural(1.0, 0.0, 0.0).unwrap();
    let ground = RadialState::new(&hydrogen, &Channel::new(3, 0, 0).unwrap()).unwrap();
    println!("hydrogen 1s: C_0 = {}", ground.norm_constant());
    println!("R(1) = {}   (2/e = {})", ground.eval(1.0).unwrap(), 2.0 / std::f64::consts::E);
    println!("U(1) = {}   (reduced, r R at N = 3)", ground.reduced(1.0).unwrap());

    // a well with an inverse-square core: fractional effective angular index
    let kratzer = PotentialParams::natural(2.0, 1.0, 0.0).unwrap();
    println!();
    println!("Kratzer well A=2, B=1 at N = 4:");
    println!("{:>4} {:>14} {:>10} {:>22}", "n_r", "epsilon", "nodes", "norm");
    for n_r in 0..6u32 {
        let ch = Channel::new(4, 1, n_r).unwrap();
        let state = RadialState::new(&kratzer, &ch).unwrap();
        let eps = state.epsilon();
        let grid = log_spaced(0.01 / eps, 50.0 / eps, 4000);
        let sampled = state.eval_grid(&grid).unwrap();
        let norm = radial_inner_product(&state, &state, 0, 3).unwrap();
        println!(
            "{:>4} {:>14.8} {:>10} {:>22.16}",
            n_r,
            eps,
            sampled.sign_changes(),
            norm
        );
    }

    // physical eigenstates at distinct n_r are orthogonal under the
    // volume measure even though each carries its own decay rate
    println!();
    let s0 = RadialState::new(&kratzer, &Channel::new(4, 1, 0).unwrap()).unwrap();
    let s3 = RadialState::new(&kratzer, &Channel::new(4, 1, 3).unwrap()).unwrap();
    let overlap = radial_inner_product(&s0, &s3, 0, 3).unwrap();
    println!("<R_0, R_3> under r^3 dr = {overlap:e}");
}
