//! Time-domain simulation of compiled (S, L, H) models: Lindblad master
//! equation and Monte-Carlo wavefunction trajectories.

pub mod config;
pub mod csv;
pub mod error;
pub mod master;
pub mod mcwf;
pub mod model;
pub mod sequence;
pub mod state;
pub mod trace;

pub use config::{Method, SimulationConfig};
pub use error::{DynamicsError, Result};
pub use master::{integrate_master, liouvillian_apply, MasterRun};
pub use mcwf::{mcwf_ensemble, mcwf_trajectory, trajectory_rng};
pub use model::{Model, Observable};
pub use sequence::{run_input_sequence, Segment};
pub use state::{fock_index, QuantumState};
pub use trace::{ExpectationTrace, Jump, SegmentMark};
