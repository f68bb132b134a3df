//! Bound-state spectra of a Kratzer-Fues well across dimensions.
//!
//! Run with `cargo run --example spectrum`.

use mietype::model::{Channel, KratzerForm, KratzerVariant, PotentialParams};
use mietype::spectrum::{energy, energy_coulomb};

fn main() {
    // kappa = 1, r_e = 1 maps to A = 2, B = 1, C = 0
    let form = KratzerForm::new(1.0, 1.0, KratzerVariant::KratzerFues).unwrap();
    let kratzer = PotentialParams::from_kratzer(&form).unwrap();
    println!("Kratzer-Fues well kappa=1, r_e=1  ->  (A, B, C) = ({}, {}, {})", kratzer.a, kratzer.b, kratzer.c);
    println!();
    println!("{:>3} {:>3} {:>4} {:>12} {:>20}", "N", "l", "n_r", "K", "energy");
    for n_dim in [3u32, 4, 5, 9] {
        for ell in 0..2u32 {
            for n_r in 0..3u32 {
                let ch = Channel::new(n_dim, ell, n_r).unwrap();
                let level = energy(&kratzer, &ch).unwrap();
                println!(
                    "{:>3} {:>3} {:>4} {:>12.6} {:>20.12}",
                    n_dim, ell, n_r, level.k, level.energy
                );
            }
        }
    }

    // the Coulombic reduction: B = C = 0 recovers hydrogen-like levels,
    // with the accidental degeneracy between (n_r, l) and (n_r - 1, l + 1)
    println!();
    println!("Coulombic reduction at N = 3 (A = 1):");
    let coulomb = PotentialParams::natural(1.0, 0.0, 0.0).unwrap();
    for (ell, n_r) in [(0u32, 0u32), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)] {
        let ch = Channel::new(3, ell, n_r).unwrap();
        let level = energy_coulomb(&coulomb, &ch).unwrap();
        println!(
            "  l={ell} n_r={n_r}:  E = {:>12.8}   (principal n = {})",
            level.energy, level.principal_n
        );
    }
}
