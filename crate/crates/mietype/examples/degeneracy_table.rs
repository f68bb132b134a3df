//! Degeneracies of the principal levels in N dimensions, by summing
//! hyperspherical-harmonic multiplicities, cross-checked against literal
//! enumeration of the angular quantum-number chains.
//!
//! Run with `cargo run --example degeneracy_table`.

use mietype::spectrum::{degeneracy, degeneracy_enumerated};

fn main() {
    println!("{:>3} | {:>6} {:>6} {:>6} {:>6} {:>6}", "N", "n=1", "n=2", "n=3", "n=4", "n=5");
    println!("----+-{}", "-".repeat(34));
    for n_dim in 3..=10u32 {
        let counts: Vec<u64> = (1..=5).map(|n| degeneracy(n, n_dim).unwrap()).collect();
        println!(
            "{:>3} | {:>6} {:>6} {:>6} {:>6} {:>6}",
            n_dim, counts[0], counts[1], counts[2], counts[3], counts[4]
        );
    }

    println!();
    println!("closed form vs literal chain enumeration (guarded range):");
    for n_dim in 3..=8u32 {
        for n in 1..=6u32 {
            let closed = degeneracy(n, n_dim).unwrap();
            let enumerated = degeneracy_enumerated(n, n_dim).unwrap();
            assert_eq!(closed, enumerated);
        }
        println!("  N = {n_dim}: all n in 1..=6 agree");
    }

    // at N = 3 the count collapses to n^2
    println!();
    for n in [1u32, 4, 7, 12] {
        println!("  N=3, n={n}: {} (= n^2)", degeneracy(n, 3).unwrap());
    }
}
