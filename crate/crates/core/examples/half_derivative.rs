//! Convolution-quadrature half derivative against closed forms at `t = 1`.
//!
//! Usage: `cargo run --example half_derivative`

use std::f64::consts::PI;

use nnlsg::fracops::{t0_apply, ConvolutionState, GaugeState};
use nnlsg::C64;

fn at_one(f: impl Fn(f64) -> f64, dt: f64) -> f64 {
    let n = (1.0 / dt).round() as usize;
    let mut st = ConvolutionState::new(dt);
    (0..=n).map(|k| st.half_derivative(C64::new(f(k as f64 * dt), 0.0))).last().unwrap_or_default().re
}

fn main() {
    let cases: [(&str, &dyn Fn(f64) -> f64, f64); 3] = [
        ("step", &|t| if t > 0.0 { 1.0 } else { 0.0 }, 1.0 / PI.sqrt()),
        ("t", &|t| t, 2.0 / PI.sqrt()),
        ("t^2", &|t| t * t, 8.0 / (3.0 * PI.sqrt())),
    ];
    for dt in [1e-2, 1e-3, 1e-4] {
        for (name, f, exact) in &cases {
            let d = at_one(f, dt);
            println!(
                "dt = {dt:.0e}  f = {name:4}  D = {d:.6}  exact = {exact:.6}  rel. error = {:.2e}",
                (d - exact).abs() / exact
            );
        }
    }

    // T0 of a trace sin t under a constant potential
    let dt = 1e-3;
    let mut trace = ConvolutionState::new(dt);
    let mut gauge = GaugeState::new(C64::new(0.5, 0.0));
    let mut t0 = C64::default();
    for k in 0..=1000 {
        if k > 0 {
            gauge.update(C64::new(0.5, 0.0), dt);
        }
        t0 = t0_apply(&mut trace, &gauge, C64::new(0.1, 0.0), C64::new((k as f64 * dt).sin(), 0.0));
    }
    println!("T0 at t = 1 for q = sin t, V = 0.5, dV/dx = 0.1: {t0:.6}");
}
