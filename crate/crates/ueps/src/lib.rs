//! Stochastic global optimization built around an underdamped particle swarm
//! (UEPS) and a classical PSO baseline.
//!
//! The crate bundles:
//!
//! * [`ueps`] — the underdamped swarm optimizer, whose decaying oscillation
//!   term lets particles overshoot the incumbent best and escape local optima;
//! * [`pso`] — textbook global-best PSO for head-to-head comparisons;
//! * [`objectives`] — a registry of benchmark functions and constrained
//!   engineering problems with their search bounds, plus additive and static
//!   penalty transforms for constraint handling;
//! * [`damping`] — closed-form damped-oscillator solutions (the physical
//!   model behind the optimizer's decay schedule);
//! * [`harness`] — multi-seed batch experiments, aggregation, algorithm
//!   comparison, and JSON/CSV/Markdown reports.
//!
//! Runs are reproducible: every run owns one ChaCha8 stream seeded from a run
//! parameter, and random draws are consumed in a documented canonical order.
//!
//! ```
//! use ueps::harness::{run_single, AlgorithmConfig, PenaltyMode};
//! use ueps::ueps::UepsParams;
//!
//! let algorithm = AlgorithmConfig::Ueps(UepsParams::default());
//! let report = run_single("sphere", &algorithm, &PenaltyMode::None, 42).unwrap();
//! assert!(report.result.best_val < 1e-6);
//! ```

pub mod core;
pub mod damping;
mod error;
pub mod harness;
pub mod objectives;
pub mod pso;
mod runner;
pub mod ueps;

pub use error::{Error, Result};
