//! The finite-difference eigensolver used as the energy oracle: discretize
//! the reduced radial equation, extract the lowest eigenvalues by Sturm
//! bisection, Richardson-extrapolate, and compare with the closed forms.
//!
//! Run with `cargo run --example fd_oracle`.

use mietype::model::{Channel, PotentialParams};
use mietype::oracle::{fd_eigenvalues, fd_eigenvalues_single_grid, FdProblem};
use mietype::spectrum::energy;

fn main() {
    let p = PotentialParams::natural(2.0, 1.0, 1.0).unwrap();
    let (n_dim, ell) = (4u32, 1u32);
    let problem = FdProblem::auto(&p, n_dim, ell, 3).unwrap();
    println!(
        "shifted Kratzer well A=2, B=1, C=1 at N={n_dim}, l={ell}: {} interior points, box {:.1}",
        problem.grid_points, problem.r_max
    );

    let oracle = fd_eigenvalues(&problem, 3).unwrap();
    println!();
    println!("{:>4} {:>22} {:>22} {:>12}", "n_r", "closed form", "fd oracle", "rel dev");
    for (n_r, &fd) in oracle.iter().enumerate() {
        let ch = Channel::new(n_dim, ell, n_r as u32).unwrap();
        let exact = energy(&p, &ch).unwrap().energy;
        println!(
            "{:>4} {:>22.14} {:>22.14} {:>12.3e}",
            n_r,
            exact,
            fd,
            ((fd - exact) / exact).abs()
        );
    }

    // the discretization error falls as h^2: halving the spacing divides
    // the single-grid error by four
    println!();
    println!("second-order convergence on the hydrogen ground state:");
    let hydrogen = PotentialParams::natural(1.0, 0.0, 0.0).unwrap();
    let mut previous: Option<f64> = None;
    for m in [1500usize, 3001, 6003] {
        let problem = FdProblem::new(hydrogen, 3, 0, 45.0, m).unwrap();
        let ev = fd_eigenvalues_single_grid(&problem, 1).unwrap()[0];
        let error = (ev + 0.5).abs();
        match previous {
            Some(last) => println!("  m = {m:>5}: error {error:.3e}  (ratio {:.2})", last / error),
            None => println!("  m = {m:>5}: error {error:.3e}"),
        }
        previous = Some(error);
    }
}
