//! Reflection at the vertex when the transparency sum rule holds and when it
//! is broken, together with the residuals of the vertex transparency relations.
//!
//! Usage: `cargo run --release --example vertex_transparency [points]`

use nnlsg::graph::check_transparency_sum_rule;
use nnlsg::solitons::{initial_condition, TravelingSolitonParams, DEFAULT_OFFSET};
use nnlsg::solver::VertexTransparencyMonitor;
use nnlsg::{BondMap, Simulation, SolverConfig, StarGraph};

fn main() -> nnlsg::Result<()> {
    let m = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(601);
    let cases = [("transparent", BondMap::new(2.0, 6.0, 2.0, 6.0)), ("broken", BondMap::new(2.0, 2.0, 0.5, 1.0))];
    for (name, beta) in cases {
        let graph = StarGraph::new(15.0, m, beta)?;
        let ic = initial_condition(&graph, &TravelingSolitonParams::launch(), DEFAULT_OFFSET)?;
        let sim = Simulation::new(graph.clone(), SolverConfig::default(), ic)?;
        let mut monitor = VertexTransparencyMonitor::new(sim.dt());
        let tr = sim.run_with(|s| {
            monitor.observe(s.graph(), s.field());
        })?;
        let rule = check_transparency_sum_rule(&beta)?;
        let r = tr.records.last().and_then(|r| r.reflection).unwrap_or(f64::NAN);
        let w = monitor.worst;
        println!(
            "{name:12} rule residual {:.3}  R(2) = {r:.3e}\n  \
             principal part: weighted T0 {:.2e}  current {:.2e}\n  \
             full T0:        weighted T0 {:.2e}  current {:.2e}  (scale {:.2e})\n  \
             nu {:.1e}  V {:.1e}",
            rule.residual,
            w.weighted_principal,
            w.current_principal,
            w.weighted_t0,
            w.current,
            w.scale,
            w.nu,
            w.potential
        );
    }
    Ok(())
}
