//! The operator-valued path sum of f over all path pairs.

use qw2d::ito::{lookup, path_integral_sigma};
use qw2d::linalg::{frobenius_distance, mat_power, tensor_product};
use qw2d::{coin_hadamard, coin_identity};

fn main() -> qw2d::Result<()> {
    let coin = coin_hadamard();
    let one = path_integral_sigma(&lookup("one")?, &coin, 2, 2)?;
    let u2 = mat_power(&coin.matrix(), 2);
    println!(
        "sigma(one) vs U^2 x U^2: {:.1e}",
        frobenius_distance(&one, &tensor_product(&u2, &u2)?)?
    );

    let x = path_integral_sigma(&lookup("x")?, &coin_identity(), 2, 0)?;
    let diag: Vec<String> = (0..4).map(|i| format!("{:+.1}", x.get(i, i).re)).collect();
    println!("sigma(x), identity coin, n = 2, n' = 0: diag [{}]", diag.join(", "));

    for name in ["x", "x_sq", "abs_x_plus_abs_y"] {
        let s = path_integral_sigma(&lookup(name)?, &coin, 4, 4)?;
        let trace: qw2d::C64 = (0..4).map(|i| s.get(i, i)).sum();
        println!("tr sigma({name}) at n = n' = 4, Hadamard: {trace:.6}");
    }
    Ok(())
}
