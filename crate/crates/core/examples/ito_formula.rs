//! The discrete Itô formula on one path pair, then weighted by the walk's
//! path operators and summed over all pairs.

use qw2d::coin_random;
use qw2d::ito::{check_prop2_local, check_prop2_telescoped, check_thm3, lookup, Axis};
use qw2d::paths::PathPair;

fn main() -> qw2d::Result<()> {
    let f = lookup("x_sq")?;
    // first path +1,+1,-1 (index 0b011), second path -1,+1 (index 0b10)
    let pair = PathPair::from_indices(3, 0b011, 2, 0b10)?;
    println!(
        "first path {:?}, second path {:?}",
        pair.first.positions(),
        pair.second.positions()
    );
    for m in 0..3 {
        let r = check_prop2_local(&f, &pair, m, 1, Axis::First)?;
        let (lhs, rhs) = (
            r.lhs.as_scalar().unwrap_or_default(),
            r.rhs.as_scalar().unwrap_or_default(),
        );
        println!(
            "  m = {m}: lhs {:+.1} rhs {:+.1} residual {:.1e}",
            lhs.re, rhs.re, r.residual
        );
    }
    let r = check_prop2_telescoped(&f, &pair, Axis::Second);
    println!("  telescoped along the second path: residual {:.1e}", r.residual);

    let coin = coin_random(2024);
    println!("\noperator form, seeded coin, f = x_sq:");
    for (n, n_prime) in [(2, 2), (4, 3), (5, 5)] {
        let local = check_thm3(&f, &coin, n, n_prime, n - 1, 0, Axis::First, false)?;
        let summed = check_thm3(&f, &coin, n, n_prime, 0, 0, Axis::Second, true)?;
        println!(
            "  n = {n}, n' = {n_prime}: local {:.1e} ({:?}), summed {:.1e} ({:?})",
            local.residual, local.verdict, summed.residual, summed.verdict
        );
    }
    Ok(())
}
