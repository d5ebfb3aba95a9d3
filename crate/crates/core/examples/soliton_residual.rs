//! Finite-difference residual of the NNLS equation for the closed-form
//! solitons, at a few spacings.
//!
//! Usage: `cargo run --example soliton_residual`

use nnlsg::solitons::{
    nnls_residual, standing_soliton, traveling_soliton, StandingSolitonParams, TravelingSolitonParams,
};
use nnlsg::C64;

fn main() -> nnlsg::Result<()> {
    let standing = StandingSolitonParams::new(0.6, 0.4, 0.3, -0.2)?;
    let traveling = TravelingSolitonParams::launch();
    let partner = traveling.mirror_partner();
    println!(
        "traveling soliton: speed {:.3}, envelope maximum at x = {:.4} for t = 0",
        traveling.velocity(),
        traveling.center(0.0)
    );

    let qs = |x: f64, t: f64| standing_soliton(&standing, x, t).unwrap_or(C64::new(f64::NAN, 0.0));
    let qt = |x: f64, t: f64| traveling_soliton(&traveling, x, t).unwrap_or(C64::new(f64::NAN, 0.0));
    let qm = |x: f64, t: f64| traveling_soliton(&partner, x, t).unwrap_or(C64::new(f64::NAN, 0.0));

    let points = [(-1.3, 0.2), (0.4, 0.5), (2.1, 0.9)];
    println!("{:>8} {:>14} {:>14}", "h", "standing", "traveling");
    for k in 0..5 {
        let h = 0.04 / 2f64.powi(k);
        let rs: f64 = points.iter().map(|&(x, t)| nnls_residual(qs, qs, 2.0, x, t, h, h).norm()).sum();
        let rt: f64 = points.iter().map(|&(x, t)| nnls_residual(qt, qm, 2.0, x, t, h, h).norm()).sum();
        println!("{h:8.5} {rs:14.3e} {rt:14.3e}");
    }
    Ok(())
}
