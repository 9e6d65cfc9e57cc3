//! Tanaka-type formula for |x|: the increment form holds, the form without the
//! subtracted |w(m)| does not.

use qw2d::coin_hadamard;
use qw2d::ito::{check_tanaka, Axis};

fn main() -> qw2d::Result<()> {
    let coin = coin_hadamard();
    for (m, m_prime) in [(0, 0), (1, 2), (3, 1), (4, 4)] {
        for axis in Axis::BOTH {
            let corrected = check_tanaka(&coin, 5, 5, m, m_prime, axis, false)?;
            let literal = check_tanaka(&coin, 5, 5, m, m_prime, axis, true)?;
            println!(
                "m = {m}, m' = {m_prime}, {:<6}: increment form {:.1e} ({:?}), |w(m+1)| alone {:.3} ({:?})",
                axis.as_str(),
                corrected.residual,
                corrected.verdict,
                literal.residual,
                literal.verdict,
            );
        }
    }
    Ok(())
}
