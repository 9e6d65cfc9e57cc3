//! Phase-weighted path sums: the tensor identity, and the expanded form of
//! U(xi, eta)^n evaluated as displayed.

use std::f64::consts::PI;

use qw2d::coin_hadamard;
use qw2d::ito::{check_cor5, Cor5Variant};

fn main() -> qw2d::Result<()> {
    let coin = coin_hadamard();
    for (xi, eta) in [(0.0, 0.0), (PI / 3.0, PI / 5.0), (PI / 2.0, -PI)] {
        for n in [1, 3, 6] {
            let tensor = check_cor5(&coin, n, xi, eta, Cor5Variant::Tensor)?;
            let literal = check_cor5(&coin, n, xi, eta, Cor5Variant::Literal)?;
            println!(
                "xi = {xi:+.3}, eta = {eta:+.3}, n = {n}: tensor {:.1e} ({:?}), expanded {:.3e} ({:?})",
                tensor.residual, tensor.verdict, literal.residual, literal.verdict
            );
        }
    }
    Ok(())
}
