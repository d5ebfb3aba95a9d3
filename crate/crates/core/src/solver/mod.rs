//! Classical RK4 time stepping of the coupled bond equations
//!
//! ```text
//! i ∂_t q_b + ∂_x² q_b + √(β_b β_{-b}) q_b² q*_{-b}(-x) = 0
//! ```
//!
//! with second-order central differences on interior points. The vertex value
//! and the outer end value of each bond are algebraic: they are reset by the
//! boundary closures on every stage input.

mod line;
mod outer;
mod vertex;

pub use line::{line_rhs, LineBc, LineConfig, LineSolver};
pub use outer::{OuterBc, TbcEnd};
pub use vertex::{
    apply_vertex_bc, potential, potential_slope_at_vertex, vertex_residual, TransparencyResidual, VertexResidual,
    VertexTransparencyMonitor,
};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fracops::Stage;
use crate::graph::{BondId, BondMap, StarGraph};
use crate::observables::{self, ObservableRecord};
use crate::C64;

/// Largest admissible `dt / h²`.
pub const MAX_C_DT: f64 = 0.7;

/// Default `dt / h²`.
pub const DEFAULT_C_DT: f64 = 0.5;

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// `dt = c_dt h²`, rounded down so that an integer number of steps reaches
    /// `final_time`.
    pub c_dt: f64,
    pub final_time: f64,
    pub outer_bc: OuterBc,
    /// Observables are recorded every `record_every` steps and at the last one.
    pub record_every: usize,
    pub snapshot_times: Vec<f64>,
    /// Drops the nonlinear term when false.
    pub nonlinear: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            c_dt: DEFAULT_C_DT,
            final_time: 2.0,
            outer_bc: OuterBc::Dirichlet0,
            record_every: 10,
            snapshot_times: Vec::new(),
            nonlinear: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_dt > 0.0 && self.c_dt <= MAX_C_DT) {
            return Err(Error::InvalidParameter(format!("c_dt must lie in (0, {MAX_C_DT}], got {}", self.c_dt)));
        }
        if !(self.final_time >= 0.0 && self.final_time.is_finite()) {
            return Err(Error::InvalidParameter(format!("final time must be non-negative, got {}", self.final_time)));
        }
        if self.record_every == 0 {
            return Err(Error::InvalidParameter("record_every must be at least 1".into()));
        }
        if let Some(t) = self.snapshot_times.iter().find(|&&t| !(0.0..=self.final_time).contains(&t)) {
            return Err(Error::InvalidParameter(format!("snapshot time {t} outside [0, {}]", self.final_time)));
        }
        Ok(())
    }

    /// Step count and step size on a grid of spacing `h`.
    pub fn time_grid(&self, h: f64) -> (usize, f64) {
        let target = self.c_dt * h * h;
        let n = (self.final_time / target).ceil() as usize;
        if n == 0 {
            (0, target)
        } else {
            (n, self.final_time / n as f64)
        }
    }
}

/// Field plus the per-bond outer-end histories.
#[derive(Clone, Debug)]
pub struct SimState {
    pub field: Field,
    pub step: usize,
    pub ends: Option<BondMap<TbcEnd>>,
}

/// Time derivative `i (∂_x² q_b + √(β_b β_{-b}) q_b² q*_{-b}(-x))` on interior
/// points; vertex and outer end entries are zero.
pub fn rhs(graph: &StarGraph, field: &Field, nonlinear: bool) -> Field {
    let mut out = Field::zeros(field.points());
    out.t = field.t;
    rhs_into(graph, field, nonlinear, &mut out);
    out
}

fn rhs_into(graph: &StarGraph, field: &Field, nonlinear: bool, out: &mut Field) {
    let m = field.points();
    let ih2 = 1.0 / (graph.spacing() * graph.spacing());
    let i = C64::i();
    for b in BondId::ALL {
        let q = field.bond(b);
        let r = field.bond(b.mirror());
        let c = if nonlinear { graph.coupling(b) } else { 0.0 };
        let d = out.bond_mut(b);
        d[0] = C64::new(0.0, 0.0);
        d[m - 1] = C64::new(0.0, 0.0);
        for k in 1..m - 1 {
            let lap = (q[k + 1] - 2.0 * q[k] + q[k - 1]) * ih2;
            d[k] = i * (lap + c * q[k] * q[k] * r[k].conj());
        }
    }
}

/// Everything a run produces.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub records: Vec<ObservableRecord>,
    pub snapshots: Vec<Field>,
    pub final_field: Field,
    pub dt: f64,
    pub steps: usize,
}

/// One simulation on a star graph.
#[derive(Clone, Debug)]
pub struct Simulation {
    graph: StarGraph,
    config: SolverConfig,
    dt: f64,
    steps: usize,
    state: SimState,
    k: [Field; 4],
    stage: Field,
}

impl Simulation {
    /// Imposes the vertex and outer conditions on `initial` and prepares the
    /// boundary histories.
    pub fn new(graph: StarGraph, config: SolverConfig, initial: Field) -> Result<Self> {
        config.validate()?;
        if initial.points() != graph.points() {
            return Err(Error::InvalidParameter(format!(
                "initial field has {} points per bond, graph has {}",
                initial.points(),
                graph.points()
            )));
        }
        if let Some((bond, index)) = initial.first_non_finite() {
            return Err(Error::NonFinite { bond, index, t: initial.t });
        }
        let (steps, dt) = config.time_grid(graph.spacing());
        let mut field = initial;
        field.t = 0.0;
        let m = graph.points();
        apply_vertex_bc(&graph, &mut field);
        let ends = match config.outer_bc {
            OuterBc::Dirichlet0 => {
                for b in BondId::ALL {
                    field.bond_mut(b)[m - 1] = C64::new(0.0, 0.0);
                }
                None
            }
            OuterBc::Tbc => Some(BondMap::from_fn(|b| {
                let (v, dv) = end_potential(&graph, &field, b, config.nonlinear);
                TbcEnd::new(dt, field.bond(b)[m - 1], v, dv)
            })),
        };
        let zeros = Field::zeros(m);
        Ok(Simulation {
            graph,
            config,
            dt,
            steps,
            state: SimState { field, step: 0, ends },
            k: [zeros.clone(), zeros.clone(), zeros.clone(), zeros.clone()],
            stage: zeros,
        })
    }

    pub fn graph(&self) -> &StarGraph {
        &self.graph
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Total number of steps to `final_time`.
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    pub fn field(&self) -> &Field {
        &self.state.field
    }

    pub fn is_finished(&self) -> bool {
        self.state.step >= self.steps
    }

    fn close(&self, field: &mut Field, stage: Stage) {
        apply_vertex_bc(&self.graph, field);
        let m = self.graph.points();
        match &self.state.ends {
            None => {
                for b in BondId::ALL {
                    field.bond_mut(b)[m - 1] = C64::new(0.0, 0.0);
                }
            }
            Some(ends) => {
                let h = self.graph.spacing();
                for b in BondId::ALL {
                    let q = field.bond_mut(b);
                    q[m - 1] = ends[b].boundary_value(q[m - 2], q[m - 3], h, stage);
                }
            }
        }
    }

    /// Advances one RK4 step.
    pub fn step(&mut self) -> Result<()> {
        let dt = self.dt;
        let nl = self.config.nonlinear;
        let t0 = self.state.field.t;
        let mut k = std::mem::replace(&mut self.k, std::array::from_fn(|_| Field::zeros(0)));
        let mut y = std::mem::replace(&mut self.stage, Field::zeros(0));

        rhs_into(&self.graph, &self.state.field, nl, &mut k[0]);
        for (s, (a, stage)) in [(0.5, Stage::Half), (0.5, Stage::Half), (1.0, Stage::Full)].into_iter().enumerate() {
            combine(&mut y, &self.state.field, &[(a * dt, &k[s])]);
            y.t = t0 + a * dt;
            self.close(&mut y, stage);
            rhs_into(&self.graph, &y, nl, &mut k[s + 1]);
        }
        let w = dt / 6.0;
        combine(&mut y, &self.state.field, &[(w, &k[0]), (2.0 * w, &k[1]), (2.0 * w, &k[2]), (w, &k[3])]);
        self.close(&mut y, Stage::Full);
        self.state.step += 1;
        y.t = self.state.step as f64 * dt;
        std::mem::swap(&mut self.state.field, &mut y);
        self.k = k;
        self.stage = y;

        if let Some((bond, index)) = self.state.field.first_non_finite() {
            return Err(Error::NonFinite { bond, index, t: self.state.field.t });
        }
        let SimState { field, ends, .. } = &mut self.state;
        if let Some(ends) = ends {
            let m = self.graph.points();
            for b in BondId::ALL {
                let (v, dv) = end_potential(&self.graph, field, b, nl);
                ends[b].commit(field.bond(b)[m - 1], v, dv);
            }
        }
        Ok(())
    }

    /// Runs to `final_time`, calling `observer` on the initial state and after
    /// every step.
    pub fn run_with<F: FnMut(&Simulation)>(mut self, mut observer: F) -> Result<Trajectory> {
        let snap_steps: Vec<usize> =
            self.config.snapshot_times.iter().map(|&t| ((t / self.dt).round() as usize).min(self.steps)).collect();
        let mut records = Vec::new();
        let mut snapshots = vec![None; snap_steps.len()];
        loop {
            let n = self.state.step;
            observer(&self);
            if n % self.config.record_every == 0 || n == self.steps {
                records.push(observables::record(&self.graph, &self.state.field));
            }
            for (slot, &s) in snapshots.iter_mut().zip(&snap_steps) {
                if s == n {
                    *slot = Some(self.state.field.clone());
                }
            }
            if self.is_finished() {
                break;
            }
            self.step()?;
        }
        Ok(Trajectory {
            records,
            snapshots: snapshots.into_iter().map(|s| s.expect("every snapshot step is visited")).collect(),
            final_field: self.state.field,
            dt: self.dt,
            steps: self.steps,
        })
    }

    pub fn run(self) -> Result<Trajectory> {
        self.run_with(|_| {})
    }
}

/// Convenience wrapper around [`Simulation::new`] and [`Simulation::run`].
pub fn run(graph: &StarGraph, config: &SolverConfig, initial: Field) -> Result<Trajectory> {
    Simulation::new(graph.clone(), config.clone(), initial)?.run()
}

fn combine(out: &mut Field, base: &Field, terms: &[(f64, &Field)]) {
    if out.points() != base.points() {
        *out = base.clone();
    }
    for b in BondId::ALL {
        let o = out.bond_mut(b);
        o.copy_from_slice(base.bond(b));
        for (c, f) in terms {
            for (o, k) in o.iter_mut().zip(f.bond(b)) {
                *o += *c * k;
            }
        }
    }
}

/// `V_b` and `∂_x V_b` at the outer end of bond `b`.
fn end_potential(graph: &StarGraph, field: &Field, b: BondId, nonlinear: bool) -> (C64, C64) {
    if !nonlinear {
        return (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    }
    let m = graph.points();
    let v = |i| potential(graph, field, b, i);
    let slope = b.orientation() * outer::end_slope(v(m - 3), v(m - 2), v(m - 1), graph.spacing());
    (v(m - 1), slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solitons::{initial_condition, TravelingSolitonParams, DEFAULT_OFFSET};

    fn fig2(points: usize) -> StarGraph {
        StarGraph::new(15.0, points, BondMap::new(6.0, 6.0, 2.0, 2.0)).unwrap()
    }

    #[test]
    fn config_validation() {
        let bad = SolverConfig { c_dt: 0.8, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = SolverConfig { snapshot_times: vec![2.5], ..Default::default() };
        assert!(bad.validate().is_err());
        assert!(SolverConfig::default().validate().is_ok());
    }

    #[test]
    fn time_grid_hits_final_time() {
        let c = SolverConfig { final_time: 1.0, ..Default::default() };
        let (n, dt) = c.time_grid(0.1);
        assert_eq!(n, 200);
        assert!((n as f64 * dt - 1.0).abs() < 1e-14);
        assert!(dt <= 0.5 * 0.01);
    }

    #[test]
    fn zero_rhs() {
        let g = fig2(21);
        let d = rhs(&g, &Field::zeros(21), true);
        assert_eq!(d.max_abs(), 0.0);
    }

    #[test]
    fn zero_field_is_fixed_point() {
        for outer_bc in [OuterBc::Dirichlet0, OuterBc::Tbc] {
            let g = fig2(41);
            let cfg = SolverConfig { final_time: 0.05, outer_bc, ..Default::default() };
            let tr = run(&g, &cfg, Field::zeros(41)).unwrap();
            assert_eq!(tr.final_field.max_abs(), 0.0);
        }
    }

    #[test]
    fn zero_final_time_gives_initial_record() {
        let g = fig2(101);
        let ic = initial_condition(&g, &TravelingSolitonParams::launch(), DEFAULT_OFFSET).unwrap();
        let cfg = SolverConfig { final_time: 0.0, snapshot_times: vec![0.0], ..Default::default() };
        let tr = run(&g, &cfg, ic).unwrap();
        assert_eq!(tr.records.len(), 1);
        assert_eq!(tr.steps, 0);
        assert_eq!(tr.snapshots.len(), 1);
    }

    #[test]
    fn vertex_conditions_hold_every_step() {
        let g = StarGraph::new(15.0, 151, BondMap::new(2.0, 2.0, 0.5, 1.0)).unwrap();
        let ic = initial_condition(&g, &TravelingSolitonParams::launch(), DEFAULT_OFFSET).unwrap();
        let cfg = SolverConfig { final_time: 0.2, ..Default::default() };
        let mut sim = Simulation::new(g.clone(), cfg, ic).unwrap();
        while !sim.is_finished() {
            sim.step().unwrap();
            let r = vertex_residual(&g, sim.field());
            assert!(r.continuity < 1e-14 && r.flux < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn instability_reports_location() {
        let g = fig2(21);
        let mut ic = Field::zeros(21);
        ic.bond_mut(BondId::P2)[7] = C64::new(1e300, 0.0);
        let cfg = SolverConfig { final_time: 0.5, ..Default::default() };
        let err = run(&g, &cfg, ic).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }), "{err:?}");
    }

    #[test]
    fn snapshot_times_are_honoured() {
        let g = fig2(61);
        let ic = initial_condition(&g, &TravelingSolitonParams::launch(), DEFAULT_OFFSET).unwrap();
        let cfg = SolverConfig { final_time: 0.2, snapshot_times: vec![0.0, 0.1, 0.2], ..Default::default() };
        let tr = run(&g, &cfg, ic).unwrap();
        let ts: Vec<f64> = tr.snapshots.iter().map(|f| f.t).collect();
        for (t, want) in ts.iter().zip([0.0, 0.1, 0.2]) {
            assert!((t - want).abs() <= tr.dt);
        }
        assert!((tr.records.last().unwrap().t - 0.2).abs() < 1e-12);
    }
}
