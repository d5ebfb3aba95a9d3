//! The three single-run weight sets side by side at a common resolution.
//!
//! Usage: `cargo run --release --example compare_scenarios [points]`

use nnlsg_experiments::{run_scenario, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(601);
    let dir = std::env::temp_dir().join("nnlsg-compare");
    println!("{:6} {:>10} {:>11} {:>12} {:>10}", "name", "integrable", "transparent", "Nerr/|N|", "R(T)");
    for name in ["fig2", "fig4", "fig5"] {
        let s = Scenario::builtin(name).expect("built-in").with_points(points)?;
        let sm = run_scenario(&s, &dir.join(name))?.summary;
        let rel = sm.norm_error.unwrap_or(f64::NAN) / sm.mean_norm.map_or(f64::NAN, |n| n.norm());
        println!(
            "{name:6} {:>10} {:>11} {rel:12.3e} {:10.4}",
            sm.integrable,
            sm.transparent,
            sm.reflection.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
