//! A free Gaussian packet `exp(-x²) e^{5ix}` leaves `[-10, 10]` through the
//! transparent ends. The result is compared with a Dirichlet run on a domain
//! four times as large, where the packet never reaches the ends.
//!
//! Usage: `cargo run --release --example outer_tbc_packet [h] [T]`

use nnlsg::solver::{LineBc, LineConfig, LineSolver};
use nnlsg::C64;

fn packet(cfg: &LineConfig) -> Vec<C64> {
    (0..cfg.points)
        .map(|i| {
            let x = cfg.coordinate(i);
            C64::from_polar((-x * x).exp(), 5.0 * x)
        })
        .collect()
}

fn main() -> nnlsg::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().ok());
    let h = args.next().flatten().unwrap_or(0.025);
    let t = args.next().flatten().unwrap_or(1.5);
    let points = |l: f64| (2.0 * l / h).round() as usize + 1;

    let small =
        LineConfig { half_length: 10.0, points: points(10.0), c_dt: 0.5, final_time: t, bc: LineBc::Tbc, coeff: 0.0 };
    let large = LineConfig { half_length: 40.0, points: points(40.0), bc: LineBc::Dirichlet0, ..small };

    let mut a = LineSolver::new(small, packet(&small))?;
    a.run()?;
    let mut b = LineSolver::new(large, packet(&large))?;
    b.run()?;

    let offset = (large.points - small.points) / 2;
    let n0 = (std::f64::consts::PI / 2.0).sqrt();
    let mass = |q: &[C64]| q.iter().map(|z| z.norm_sqr()).sum::<f64>() * h / n0;
    let diff: Vec<C64> = a.values().iter().zip(&b.values()[offset..]).map(|(x, y)| x - y).collect();
    println!("h = {h}, T = {t}, steps = {}", a.steps());
    println!("reflected fraction  {:.3e}", mass(&diff));
    println!("remaining (tbc)     {:.3e}", mass(a.values()));
    println!("remaining (ref)     {:.3e}", mass(&b.values()[offset..offset + small.points]));
    Ok(())
}
