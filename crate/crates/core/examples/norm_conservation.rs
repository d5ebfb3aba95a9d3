//! Quasi-norm conservation for the integrable weights `β_{±1} = 6`, `β_{±2} = 2`.
//!
//! Usage: `cargo run --release --example norm_conservation [points...]`

use nnlsg::observables::{mean_norm, norm_error};
use nnlsg::solitons::{initial_condition, TravelingSolitonParams, DEFAULT_OFFSET};
use nnlsg::{BondMap, SolverConfig, StarGraph};

fn main() -> nnlsg::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let grids = if args.is_empty() { vec![301, 601] } else { args };
    let beta = BondMap::new(6.0, 6.0, 2.0, 2.0);
    let mut prev: Option<f64> = None;
    for m in grids {
        let graph = StarGraph::new(15.0, m, beta)?;
        let ic = initial_condition(&graph, &TravelingSolitonParams::launch(), DEFAULT_OFFSET)?;
        let start = std::time::Instant::now();
        let tr = nnlsg::solver::run(&graph, &SolverConfig::default(), ic)?;
        let rel = norm_error(&tr.records)? / mean_norm(&tr.records)?.norm();
        let last = tr.records.last().expect("at least one record");
        print!(
            "M = {m:5}  steps = {:6}  Nerr/|N| = {rel:.3e}  R(2) = {:.4}",
            tr.steps,
            last.reflection.unwrap_or(f64::NAN)
        );
        if let Some(p) = prev {
            print!("  ratio = {:.2}", p / rel);
        }
        println!("  ({:.1} s)", start.elapsed().as_secs_f64());
        prev = Some(rel);
    }
    Ok(())
}
