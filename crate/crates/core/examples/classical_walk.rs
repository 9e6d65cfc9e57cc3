//! Replacing P, Q, R, S by probabilities p, q, r, s gives a classical walk.

use qw2d::ito::{binomial_product_law, check_classical_reduction, classical_endpoint_law, lookup};
use qw2d::ClassicalWeights;

fn main() -> qw2d::Result<()> {
    let uniform = ClassicalWeights::uniform();
    let law = classical_endpoint_law(&uniform, 2, 2)?;
    let binomial = binomial_product_law(2, 2);
    println!("uniform weights, n = n' = 2:");
    for (site, p) in &law {
        println!("  {site:?}: {p:.4} (binomial {:.4})", binomial[site]);
    }

    let biased = ClassicalWeights::new(0.4, 0.3, 0.2, 0.1)?;
    println!("\nbiased weights (0.4, 0.3, 0.2, 0.1), n = 4, n' = 3:");
    for name in ["x", "xy", "abs_x_plus_abs_y", "exp_pi3_2"] {
        let r = check_classical_reduction(&biased, &lookup(name)?, 4, 3)?;
        println!("  {name:<17} residual {:.1e} ({:?})", r.residual, r.verdict);
    }
    Ok(())
}
