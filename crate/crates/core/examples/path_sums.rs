//! The path-sum table Ξₙ(l, r, d, u) by recursion and by brute force, and the
//! position law it induces.

use qw2d::paths::{prob_from_xi, xi_bruteforce, xi_recursive};
use qw2d::position::{distribution, evolve, init_state};
use qw2d::{build_walk_operators, coin_hadamard, Qubit4};

fn main() -> qw2d::Result<()> {
    let coin = coin_hadamard();
    let phi = Qubit4::symmetric();
    for n in 0..=6 {
        let fast = xi_recursive(&coin, n)?;
        let slow = xi_bruteforce(&coin, n)?;
        let law = prob_from_xi(&fast, &phi);
        let walk = distribution(&evolve(&init_state(&phi), &build_walk_operators(&coin), n));
        println!(
            "n = {n}: {:>3} tables, recursion vs enumeration {:.1e}, law vs walk {:.1e}",
            fast.len(),
            fast.max_abs_diff(&slow),
            law.max_abs_diff(&walk),
        );
    }
    Ok(())
}
