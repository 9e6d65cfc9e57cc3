//! Runs the walk in momentum space and compares it with position space.

use qw2d::fourier::{default_grid_size, evolve_fourier, invert, lemma_residual, transform};
use qw2d::position::{distribution, evolve, init_state, step};
use qw2d::{build_walk_operators, coin_random, Qubit4};

fn main() -> qw2d::Result<()> {
    let coin = coin_random(11);
    let ops = build_walk_operators(&coin);
    let start = init_state(&Qubit4::random(3));

    println!("one step in momentum space is multiplication by U(xi, eta):");
    let mut state = start.clone();
    for n in 1..=6 {
        let next = step(&state, &ops);
        let size = default_grid_size(n);
        let r = lemma_residual(&transform(&state, size)?, &transform(&next, size)?, &coin);
        println!("  n = {n}, grid {size}x{size}: max deviation {r:.2e}");
        state = next;
    }

    println!("\nposition law against the inverted momentum-space evolution:");
    for n in [5, 15, 30] {
        let size = default_grid_size(n);
        let grid = evolve_fourier(&transform(&start, size)?, &coin, n);
        let via_fourier = distribution(&invert(&grid)?);
        let direct = distribution(&evolve(&start, &ops, n));
        println!(
            "  n = {n:>2}: max |p - p_fourier| = {:.2e}",
            direct.max_abs_diff(&via_fourier)
        );
    }

    match transform(&evolve(&start, &ops, 5), 10) {
        Err(e) => println!("\n{e}"),
        Ok(_) => unreachable!("a 10x10 grid cannot resolve time 5"),
    }
    Ok(())
}
