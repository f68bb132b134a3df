//! The full verification run: every closed form against its numerical
//! oracle, with the known discrepancies in the published formulas flagged
//! rather than silently corrected.
//!
//! Run with `cargo run --example verify_report`.

use mietype::report::{build_report, ItemStatus, SweepConfig};

fn main() {
    // a reduced sweep keeps this example quick; the command-line
    // `mietype verify` runs the full default sweep
    let config = SweepConfig {
        potentials: vec![(1.0, 0.0, 0.0), (2.0, 1.0, 1.0)],
        dims: vec![3, 5],
        ells: vec![0],
        n_rs: vec![0, 1],
        ..SweepConfig::default()
    };
    let report = build_report(&config).unwrap();

    let matches = report.items.len() - report.flagged() - report.mismatches();
    println!(
        "{} items: {} matches, {} flagged discrepancies, {} mismatches",
        report.items.len(),
        matches,
        report.flagged(),
        report.mismatches()
    );

    println!();
    println!("flagged discrepancies in the published closed forms:");
    for item in &report.items {
        if item.status == ItemStatus::FlaggedDiscrepancy {
            println!();
            println!("  {}", item.name);
            println!("    literal: {}", item.literal_form);
            println!("    {}", item.detail);
        }
    }

    // worst residual among the plain comparisons
    let worst = report
        .items
        .iter()
        .filter(|i| i.status == ItemStatus::Match)
        .max_by(|x, y| x.rel_error.total_cmp(&y.rel_error))
        .unwrap();
    println!();
    println!(
        "worst matched item: {} at relative error {:.3e} (tolerance {:.0e})",
        worst.name, worst.rel_error, worst.tolerance
    );
}
