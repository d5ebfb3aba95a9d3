//! Scenario files.
//!
//! A scenario is a TOML document with the tables `[graph]`, `[solver]`,
//! `[soliton]` and, for sweeps, `[sweep]`. Complex constants are written as
//! `"a+bi"` strings. Every key except `name` and `graph.beta` has a default.

use std::path::Path;
use std::str::FromStr;

use nnlsg::graph::{DEFAULT_LENGTH, DEFAULT_POINTS};
use nnlsg::solitons::{TravelingSolitonParams, DEFAULT_OFFSET};
use nnlsg::solver::{OuterBc, DEFAULT_C_DT};
use nnlsg::{BondMap, SolverConfig, C64};
use serde::Deserialize;

use crate::error::{Error, Result};

/// Name and file contents of every built-in scenario.
pub const BUILTINS: [(&str, &str); 5] = [
    ("fig2", include_str!("../scenarios/fig2.toml")),
    ("fig3", include_str!("../scenarios/fig3.toml")),
    ("fig4", include_str!("../scenarios/fig4.toml")),
    ("fig5", include_str!("../scenarios/fig5.toml")),
    ("fig6", include_str!("../scenarios/fig6.toml")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: String,
    graph: RawGraph,
    #[serde(default)]
    solver: RawSolver,
    #[serde(default)]
    soliton: RawSoliton,
    sweep: Option<RawSweep>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    #[serde(default = "default_length")]
    length: f64,
    #[serde(default = "default_points")]
    points: usize,
    beta: RawBeta,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBeta {
    m1: f64,
    p1: f64,
    m2: f64,
    p2: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSolver {
    c_dt: f64,
    final_time: f64,
    outer_bc: String,
    record_every: usize,
    snapshot_times: Vec<f64>,
}

impl Default for RawSolver {
    fn default() -> Self {
        let d = SolverConfig::default();
        RawSolver {
            c_dt: DEFAULT_C_DT,
            final_time: d.final_time,
            outer_bc: d.outer_bc.label().into(),
            record_every: d.record_every,
            snapshot_times: vec![],
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawSoliton {
    alpha: String,
    beta: String,
    k: String,
    kbar: String,
    offset: f64,
}

impl Default for RawSoliton {
    fn default() -> Self {
        RawSoliton {
            alpha: "1.13+1.13i".into(),
            beta: "1.13-1.13i".into(),
            k: "2.5+1.5i".into(),
            kbar: "-2.5+1.5i".into(),
            offset: DEFAULT_OFFSET,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    beta_m1: Axis,
    beta_p1: Axis,
}

/// Evenly spaced values `min, ..., max`.
#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 }).collect()
    }
}

/// Sweep axes for `β_{-1}` (rows) and `β_1` (columns).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepGrid {
    pub beta_m1: Axis,
    pub beta_p1: Axis,
}

impl SweepGrid {
    pub fn cells(&self) -> usize {
        self.beta_m1.count * self.beta_p1.count
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub length: f64,
    pub points: usize,
    pub beta: BondMap<f64>,
    pub solver: SolverConfig,
    pub soliton: TravelingSolitonParams,
    pub offset: f64,
    pub sweep: Option<SweepGrid>,
}

fn default_length() -> f64 {
    DEFAULT_LENGTH
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

fn complex(key: &str, s: &str) -> Result<C64> {
    C64::from_str(&s.replace(' ', "")).map_err(|_| Error::Invalid(format!("soliton.{key}: cannot parse {s:?} as a+bi")))
}

impl Scenario {
    /// Parses scenario text. `origin` names the source in error messages.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let raw: RawScenario =
            toml::from_str(text).map_err(|e| Error::Parse { origin: origin.into(), message: e.to_string() })?;
        let invalid = |m: String| Error::Parse { origin: origin.into(), message: m };

        let outer_bc = OuterBc::from_label(&raw.solver.outer_bc).ok_or_else(|| {
            invalid(format!("solver.outer_bc: expected \"dirichlet0\" or \"tbc\", got {:?}", raw.solver.outer_bc))
        })?;
        let solver = SolverConfig {
            c_dt: raw.solver.c_dt,
            final_time: raw.solver.final_time,
            outer_bc,
            record_every: raw.solver.record_every,
            snapshot_times: raw.solver.snapshot_times,
            nonlinear: true,
        };
        solver.validate().map_err(|e| invalid(format!("[solver]: {e}")))?;

        let s = &raw.soliton;
        let soliton = TravelingSolitonParams::new(
            complex("alpha", &s.alpha)?,
            complex("beta", &s.beta)?,
            complex("k", &s.k)?,
            complex("kbar", &s.kbar)?,
        )
        .map_err(|e| invalid(format!("[soliton]: {e}")))?;
        if !(s.offset > 0.0) {
            return Err(invalid(format!("soliton.offset must be positive, got {}", s.offset)));
        }

        let b = &raw.graph.beta;
        let beta = BondMap::new(b.m1, b.p1, b.m2, b.p2);
        let sweep = match raw.sweep {
            None => None,
            Some(w) => {
                for (key, axis) in [("beta_m1", w.beta_m1), ("beta_p1", w.beta_p1)] {
                    if axis.count < 2 {
                        return Err(invalid(format!("sweep.{key}.count must be at least 2, got {}", axis.count)));
                    }
                    if !(axis.min > 0.0 && axis.max > axis.min) {
                        return Err(invalid(format!(
                            "sweep.{key}: need 0 < min < max, got [{}, {}]",
                            axis.min, axis.max
                        )));
                    }
                }
                Some(SweepGrid { beta_m1: w.beta_m1, beta_p1: w.beta_p1 })
            }
        };
        let scenario = Scenario {
            name: raw.name,
            length: raw.graph.length,
            points: raw.graph.points,
            beta,
            solver,
            soliton,
            offset: s.offset,
            sweep,
        };
        scenario.graph_for(beta).map_err(|e| invalid(format!("[graph]: {e}")))?;
        Ok(scenario)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn builtin(name: &str) -> Option<Self> {
        let (_, text) = BUILTINS.iter().find(|(n, _)| *n == name)?;
        Some(Self::parse(text, name).expect("built-in scenarios parse"))
    }

    /// A file path if one exists, otherwise a built-in name.
    pub fn load(source: &str) -> Result<Self> {
        let path = Path::new(source);
        if path.exists() {
            return Self::from_path(path);
        }
        Self::builtin(source)
            .ok_or_else(|| Error::Invalid(format!("{source:?} is neither a file nor a built-in scenario")))
    }

    pub fn with_points(mut self, points: usize) -> Result<Self> {
        self.points = points;
        self.graph_for(self.beta)?;
        Ok(self)
    }

    pub fn graph_for(&self, beta: BondMap<f64>) -> nnlsg::Result<nnlsg::StarGraph> {
        nnlsg::StarGraph::new(self.length, self.points, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_parse() {
        for (name, _) in BUILTINS {
            let s = Scenario::builtin(name).unwrap();
            assert_eq!(s.name, name);
            assert_eq!(s.soliton, TravelingSolitonParams::launch());
        }
        assert_eq!(Scenario::builtin("fig2").unwrap().beta, BondMap::new(6.0, 6.0, 2.0, 2.0));
        let sweep = Scenario::builtin("fig6").unwrap().sweep.unwrap();
        assert_eq!(sweep.cells(), 441);
        assert_eq!(sweep.beta_m1.values()[20], 4.0);
    }

    #[test]
    fn defaults_fill_missing_tables() {
        let s =
            Scenario::parse("name = \"x\"\n[graph]\nbeta = { m1 = 1.0, p1 = 1.0, m2 = 1.0, p2 = 1.0 }\n", "t").unwrap();
        assert_eq!((s.length, s.points, s.offset), (DEFAULT_LENGTH, DEFAULT_POINTS, DEFAULT_OFFSET));
        assert_eq!(s.solver, SolverConfig::default());
        assert!(s.sweep.is_none());
    }

    fn err(text: &str) -> String {
        Scenario::parse(text, "case.toml").unwrap_err().to_string()
    }

    #[test]
    fn diagnostics_name_the_key() {
        let base = "name = \"x\"\n[graph]\nbeta = { m1 = 1.0, p1 = 1.0, m2 = 1.0, p2 = 1.0 }\n";
        let e = err(&format!("{base}[solver]\nsnapshot_times = [3.0]\n"));
        assert!(e.contains("case.toml") && e.contains("snapshot time 3"), "{e}");
        let e = err(&format!("{base}[sweep]\nbeta_m1 = {{ min = 1.0, max = 2.0, count = 1 }}\nbeta_p1 = {{ min = 1.0, max = 2.0, count = 3 }}\n"));
        assert!(e.contains("sweep.beta_m1.count"), "{e}");
        let e = err(&format!("{base}[soliton]\nalpha = \"1+\"\n"));
        assert!(e.contains("soliton.alpha"), "{e}");
        let e = err(&format!("{base}[solver]\nouter_bc = \"open\"\n"));
        assert!(e.contains("solver.outer_bc"), "{e}");
        let e = err("name = \"x\"\n[graph]\nbeta = { m1 = 1.0, p1 = 1.0, m2 = 1.0 }\n");
        assert!(e.contains("p2") && e.contains("line 3"), "{e}");
        let e = err(&format!("{base}typo = 1\n"));
        assert!(e.contains("typo"), "{e}");
        let e = err("name = \"x\"\n[graph]\nbeta = { m1 = -1.0, p1 = 1.0, m2 = 1.0, p2 = 1.0 }\n");
        assert!(e.contains("[graph]"), "{e}");
    }

    #[test]
    fn axis_endpoints_are_exact() {
        let a = Axis { min: 0.5, max: 4.0, count: 21 };
        let v = a.values();
        assert_eq!((v[0], v[20], v.len()), (0.5, 4.0, 21));
        assert!((v[10] - 2.25).abs() < 1e-15);
    }
}
