use std::path::Path;

use nnlsg::graph::{check_integrability_sum_rule, check_transparency_sum_rule};
use nnlsg::observables::{mean_norm, norm_error};
use nnlsg::solitons::initial_condition;
use nnlsg::{solver, BondId, Simulation};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::output::{self, Summary};
use crate::scenario::Scenario;

/// Environment variable that overrides the thread count given on the command line.
pub const THREADS_ENV: &str = "NNLSG_THREADS";

/// Thread count from the environment, then `requested`, then the number of
/// available cores.
pub fn resolve_threads(requested: Option<usize>) -> Result<usize> {
    let n = match std::env::var(THREADS_ENV) {
        Ok(v) => {
            Some(v.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("{THREADS_ENV}={v:?} is not a count")))?)
        }
        Err(_) => requested,
    };
    match n {
        Some(0) => Err(Error::Invalid("thread count must be at least 1".into())),
        Some(n) => Ok(n),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub summary: Summary,
    pub records: Vec<nnlsg::ObservableRecord>,
}

fn create_dir(out: &Path) -> Result<()> {
    std::fs::create_dir_all(out).map_err(|source| Error::Io { path: out.into(), source })
}

/// Runs a single scenario and writes `timeseries.csv`, one snapshot per
/// requested time and `summary.txt` into `out`.
///
/// A run that leaves the finite range still writes its summary, with the
/// failure in the `status` line, and returns [`Error::Unstable`].
pub fn run_scenario(scenario: &Scenario, out: &Path) -> Result<RunOutcome> {
    let graph = scenario.graph_for(scenario.beta)?;
    let integ = check_integrability_sum_rule(&scenario.beta)?;
    let transp = check_transparency_sum_rule(&scenario.beta)?;
    let ic = initial_condition(&graph, &scenario.soliton, scenario.offset)?;
    create_dir(out)?;

    let sim = Simulation::new(graph.clone(), scenario.solver.clone(), ic)?;
    let mut summary = Summary {
        name: scenario.name.clone(),
        points: graph.points(),
        steps: sim.steps(),
        dt: sim.dt(),
        final_time: scenario.solver.final_time,
        norm_error: None,
        mean_norm: None,
        reflection: None,
        res_integrable: integ.residual,
        res_transparent: transp.residual,
        integrable: integ.holds,
        transparent: transp.holds,
        status: "ok".into(),
    };
    let traj = match sim.run() {
        Ok(t) => t,
        Err(e) => {
            summary.status = format!("unstable: {e}");
            summary.write(&out.join("summary.txt"))?;
            return Err(Error::Unstable(e));
        }
    };

    output::write_timeseries(&out.join("timeseries.csv"), &traj.records)?;
    for (t, snap) in scenario.solver.snapshot_times.iter().zip(&traj.snapshots) {
        output::write_snapshot(&out.join(output::snapshot_name(*t)), &graph, snap)?;
    }
    summary.norm_error = Some(norm_error(&traj.records)?);
    summary.mean_norm = Some(mean_norm(&traj.records)?);
    summary.reflection = traj.records.last().and_then(|r| r.reflection);
    summary.write(&out.join("summary.txt"))?;
    Ok(RunOutcome { summary, records: traj.records })
}

/// One row of a sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct CellResult {
    pub beta_m1: f64,
    pub beta_p1: f64,
    pub norm_error: Option<f64>,
    pub reflection: Option<f64>,
    pub res_integrable: f64,
    pub res_transparent: f64,
    /// `ok`, or the reason the cell failed.
    pub status: String,
}

/// Runs `scenario` with `β_{-1}` and `β_1` replaced. Failures are reported in
/// the `status` field.
pub fn run_cell(scenario: &Scenario, beta_m1: f64, beta_p1: f64) -> CellResult {
    let mut beta = scenario.beta;
    beta[BondId::M1] = beta_m1;
    beta[BondId::P1] = beta_p1;
    let mut cell = CellResult {
        beta_m1,
        beta_p1,
        norm_error: None,
        reflection: None,
        res_integrable: f64::NAN,
        res_transparent: f64::NAN,
        status: "ok".into(),
    };
    let result = (|| -> nnlsg::Result<()> {
        cell.res_integrable = check_integrability_sum_rule(&beta)?.residual;
        cell.res_transparent = check_transparency_sum_rule(&beta)?.residual;
        let graph = scenario.graph_for(beta)?;
        let ic = initial_condition(&graph, &scenario.soliton, scenario.offset)?;
        let mut cfg = scenario.solver.clone();
        cfg.snapshot_times.clear();
        let traj = solver::run(&graph, &cfg, ic)?;
        cell.norm_error = Some(norm_error(&traj.records)?);
        cell.reflection = traj.records.last().and_then(|r| r.reflection);
        Ok(())
    })();
    if let Err(e) = result {
        cell.status = format!("failed: {e}");
    }
    cell
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    /// Row-major: `β_{-1}` outer, `β_1` inner.
    pub cells: Vec<CellResult>,
    pub rows: usize,
    pub cols: usize,
}

impl SweepOutcome {
    pub fn cell(&self, row: usize, col: usize) -> &CellResult {
        &self.cells[row * self.cols + col]
    }
}

/// Runs every cell of the sweep grid on `threads` workers and writes
/// `sweep.csv` into `out`. Rows come out in grid order whatever the thread
/// count.
pub fn run_sweep(scenario: &Scenario, out: &Path, threads: usize) -> Result<SweepOutcome> {
    let grid =
        scenario.sweep.ok_or_else(|| Error::Invalid(format!("scenario {:?} has no [sweep] table", scenario.name)))?;
    let (rows, cols) = (grid.beta_m1.values(), grid.beta_p1.values());
    let pairs: Vec<(f64, f64)> = rows.iter().flat_map(|&a| cols.iter().map(move |&b| (a, b))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build()?;
    let cells: Vec<CellResult> = pool.install(|| pairs.par_iter().map(|&(a, b)| run_cell(scenario, a, b)).collect());
    create_dir(out)?;
    output::write_sweep(&out.join("sweep.csv"), &cells)?;
    Ok(SweepOutcome { cells, rows: rows.len(), cols: cols.len() })
}
