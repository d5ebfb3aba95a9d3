//! Scenario files, single runs, weight sweeps and their CSV outputs.
//!
//! ```no_run
//! use nnlsg_experiments::{run_scenario, Scenario};
//!
//! let scenario = Scenario::builtin("fig4").unwrap();
//! let outcome = run_scenario(&scenario, "out/fig4".as_ref()).unwrap();
//! println!("R(T) = {:?}", outcome.summary.reflection);
//! ```

mod error;
pub mod output;
mod run;
pub mod scenario;

pub use error::{Error, Result};
pub use run::{resolve_threads, run_cell, run_scenario, run_sweep, CellResult, RunOutcome, SweepOutcome, THREADS_ENV};
pub use scenario::{Axis, Scenario, SweepGrid, BUILTINS};
