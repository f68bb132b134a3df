//! Hellmann-Feynman expectation values <1/r> and <1/r^2> and the virial
//! relation, against their quadrature cross-checks.
//!
//! Run with `cargo run --example expectation_values`.

use mietype::model::{Channel, PotentialParams};
use mietype::observables::{expect_inv_r, expect_inv_r2, virial};
use mietype::quadrature::radial_inner_product;
use mietype::wavefunction::RadialState;

fn main() {
    let hydrogen = PotentialParams::natural(1.0, 0.0, 0.0).unwrap();
    let ch = Channel::new(3, 0, 0).unwrap();
    println!("hydrogen 1s:");
    println!("  <1/r>   closed form = {}", expect_inv_r(&hydrogen, &ch).unwrap());
    println!("  <1/r^2> closed form = {}", expect_inv_r2(&hydrogen, &ch).unwrap());
    let state = RadialState::new(&hydrogen, &ch).unwrap();
    println!(
        "  <1/r>   quadrature  = {}",
        radial_inner_product(&state, &state, -1, 2).unwrap()
    );
    println!(
        "  <1/r^2> quadrature  = {}",
        radial_inner_product(&state, &state, -2, 2).unwrap()
    );

    println!();
    println!("virial relation -(2 - beta) <T> = (1 - beta) <V - C> across wells:");
    println!(
        "{:>18} {:>3} {:>3} {:>4} {:>10} {:>14} {:>14} {:>12}",
        "(A, B, C)", "N", "l", "n_r", "beta", "lhs", "rhs", "residual"
    );
    for (a, b, c) in [(1.0, 0.0, 0.0), (2.0, 1.0, 0.0), (2.0, 1.0, 1.0)] {
        let p = PotentialParams::natural(a, b, c).unwrap();
        for (n_dim, ell, n_r) in [(3u32, 0u32, 0u32), (4, 1, 1), (5, 0, 2)] {
            let ch = Channel::new(n_dim, ell, n_r).unwrap();
            let hft = virial(&p, &ch).unwrap();
            let residual = (hft.virial_lhs - hft.virial_rhs).abs() / hft.virial_rhs.abs();
            println!(
                "{:>18} {:>3} {:>3} {:>4} {:>10.6} {:>14.9} {:>14.9} {:>12.3e}",
                format!("({a}, {b}, {c})"),
                n_dim,
                ell,
                n_r,
                hft.beta,
                hft.virial_lhs,
                hft.virial_rhs,
                residual
            );
        }
    }
}
