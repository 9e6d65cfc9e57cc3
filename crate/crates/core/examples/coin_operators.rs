//! Builds a coin, splits `U⊗U` into the four shift-coin operators and checks
//! that they add back up.

use qw2d::linalg::{frobenius_distance, is_unitary};
use qw2d::{build_walk_operators, coin_hadamard, coin_random, make_coin, C64};

fn main() -> qw2d::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let explicit = make_coin(C64::new(s, 0.0), C64::new(0.0, s), C64::new(1.0, 0.0))?;

    for (label, coin) in [
        ("hadamard", coin_hadamard()),
        ("seed:7", coin_random(7)),
        ("explicit", explicit),
    ] {
        let ops = build_walk_operators(&coin);
        let gap = frobenius_distance(&ops.sum(), &coin.tensor_square())?;
        println!(
            "{label:>9}: a = {:.4}, b = {:.4}, delta = {:.4}, unitary = {}, |P+Q+R+S - UxU| = {gap:.1e}",
            coin.a(),
            coin.b(),
            coin.delta(),
            is_unitary(&coin.matrix(), 1e-12),
        );
    }

    let ops = build_walk_operators(&coin_hadamard());
    println!("\nP (moves left) for the Hadamard coin:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format!("{:+.3}", ops.p_left.get(i, j).re)).collect();
        println!("  [{}]", row.join(", "));
    }
    Ok(())
}
