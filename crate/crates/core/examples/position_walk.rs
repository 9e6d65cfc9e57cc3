//! Evolves the Hadamard walker from a symmetric start and prints the spread.

use qw2d::position::{distribution, evolve, init_state, moments};
use qw2d::{build_walk_operators, coin_hadamard, Qubit4};

fn main() {
    let ops = build_walk_operators(&coin_hadamard());
    let start = init_state(&Qubit4::symmetric());
    for n in [1, 5, 10, 20, 40] {
        let dist = distribution(&evolve(&start, &ops, n));
        let var_x = moments(&dist, 2, 0) - moments(&dist, 1, 0).powi(2);
        println!(
            "n = {n:>2}: sites = {:>4}, total = {:.15}, E[x] = {:+.4}, Var[x] = {:>8.4}, Var[x]/n^2 = {:.4}",
            dist.probs.len(),
            dist.total(),
            moments(&dist, 1, 0),
            var_x,
            var_x / (n * n) as f64,
        );
    }

    // Row x = 0 of the n = 4 law.
    let dist = distribution(&evolve(&start, &ops, 4));
    let row: Vec<String> = (-4..=4).map(|y| format!("{:.3}", dist.prob(0, y))).collect();
    println!("\np(0, y) at n = 4, y = -4..4: {}", row.join(" "));
}
