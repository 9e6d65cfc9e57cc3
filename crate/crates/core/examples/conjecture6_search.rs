//! Searches for instances where the conjectured two-index formula fails.

use qw2d::ito::report::Param;
use qw2d::ito::sweep::sweep_conjecture6;

fn main() -> qw2d::Result<()> {
    for n in 2..=4 {
        let report = sweep_conjecture6(n, n)?;
        println!(
            "n = n' = {n}: {} counterexamples, largest residual {:.3}",
            report.counterexamples.len(),
            report.residual
        );
    }

    let report = sweep_conjecture6(3, 3)?;
    let mut per_function = std::collections::BTreeMap::<String, usize>::new();
    for c in &report.counterexamples {
        if let Some(Param::Text(name)) = c.params.get("function") {
            *per_function.entry(name.clone()).or_default() += 1;
        }
    }
    println!("\ncounterexamples per function at n = n' = 3:");
    for (name, count) in per_function {
        println!("  {name:<18} {count}");
    }
    Ok(())
}
