//! One row of the weight sweep: fixed `β_{-1}`, varying `β_1`, with
//! `β_{±2} = 2`. Prints the norm error and reflection per cell next to the
//! weight where the transparency rule holds.
//!
//! Usage: `cargo run --release --example sweep_row [beta_m1] [count]`

use nnlsg_experiments::{run_cell, Axis, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let beta_m1: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(2.0);
    let count: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(21);
    let scenario = Scenario::builtin("fig6").expect("built-in");
    let axis = Axis { min: 0.5, max: 4.0, count };

    if beta_m1 > 1.0 {
        println!("transparency rule holds at beta_p1 = {:.4}", beta_m1 / (beta_m1 - 1.0));
    }
    println!("{:>8} {:>12} {:>10}  status", "beta_p1", "Nerr", "R");
    for beta_p1 in axis.values() {
        let c = run_cell(&scenario, beta_m1, beta_p1);
        println!(
            "{beta_p1:8.3} {:12.4e} {:10.4e}  {}",
            c.norm_error.unwrap_or(f64::NAN),
            c.reflection.unwrap_or(f64::NAN),
            c.status
        );
    }
    Ok(())
}
