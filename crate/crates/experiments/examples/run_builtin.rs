//! Runs a built-in scenario, writes its outputs and prints the reflection
//! coefficient over time.
//!
//! Usage: `cargo run --release --example run_builtin [name] [out-dir]`

use nnlsg_experiments::{run_scenario, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "fig4".into());
    let out = args.next().unwrap_or_else(|| format!("out/{name}"));
    let scenario = Scenario::builtin(&name).ok_or(format!("no built-in scenario {name:?}"))?;

    let outcome = run_scenario(&scenario, out.as_ref())?;
    print!("{}", outcome.summary.render());
    let every = (outcome.records.len() / 10).max(1);
    for r in outcome.records.iter().step_by(every) {
        println!("t = {:5.3}  N = {:.6}  R = {:.4}", r.t, r.total_norm, r.reflection.unwrap_or(f64::NAN));
    }
    println!("outputs in {out}");
    Ok(())
}
