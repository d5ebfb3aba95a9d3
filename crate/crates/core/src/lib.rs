//! Simulation of the PT-symmetric nonlocal nonlinear Schrödinger (NNLS) equation
//! on the symmetric four-bond star graph.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: bond labels, the discretised star graph and the two sum rules
//!   on the nonlinearity weights.
//! * [`field`]: per-bond complex grid functions.
//! * [`solitons`]: closed-form standing and traveling solitons, their graph
//!   scaling and a finite-difference residual of the NNLS equation.
//! * [`fracops`]: convolution quadrature for the half-order time derivative,
//!   running time integrals, gauge phases and the `T0` boundary operator.
//! * [`solver`]: RK4 time stepping on the graph (and on a plain line) with
//!   weighted-Kirchhoff vertex conditions and Dirichlet or transparent outer ends.
//! * [`observables`]: bond quasi-norms, energies, the norm deviation metric and
//!   the reflection coefficient.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod error;
pub mod field;
pub mod fracops;
pub mod graph;
pub mod observables;
pub mod solitons;
pub mod solver;

pub use num_complex::Complex64 as C64;

pub use error::{Error, Result};
pub use field::Field;
pub use graph::{BondId, BondMap, StarGraph};
pub use observables::ObservableRecord;
pub use solver::{OuterBc, Simulation, SolverConfig};
