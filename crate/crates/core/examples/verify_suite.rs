//! Runs two verification suites for a seeded coin and prints the reports.

use qw2d::coin_random;
use qw2d::ito::sweep::{run_suites, LabeledCoin, Suite, DEFAULT_STATE_SEED};
use qw2d::ito::{suite_passed, write_reports};

fn main() -> qw2d::Result<()> {
    let coin = LabeledCoin::new("seed:42", coin_random(42));
    let reports = run_suites(&[Suite::Tanaka, Suite::XiOracle], &coin, Some(3), DEFAULT_STATE_SEED)?;
    for r in &reports {
        println!("{:<18} {:?} residual {:.2e}", r.check_name, r.verdict, r.residual);
    }
    println!("suite passed: {}", suite_passed(&reports));

    let mut first = Vec::new();
    write_reports(&reports[..1], &mut first)?;
    println!("\nfirst report as JSON:\n{}", String::from_utf8_lossy(&first));
    Ok(())
}
