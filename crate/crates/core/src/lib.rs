//! Simulation toolkit for incoherent-sector ("superseparable") interference.
//!
//! The crate is organised by subsystem:
//!
//! - [`optics`]: closed-form Fraunhofer amplitudes and intensities for
//!   N-slit systems, screen sampling and extremum search.
//! - [`combine`]: coherent and incoherent combination of displaced slit
//!   systems (the 2+1-slit layout) plus pattern comparison tools.
//! - [`reeh`]: Aharonov-Bohm flux parameter, exponentiated commutator phase
//!   and the resulting Weyl-group classification.
//! - [`schmudgen`]: exact grid realisation of a pair of unitary groups that
//!   violates the Weyl relations on a rectangle.
//! - [`sector`]: direct-sum sector states, operator classes and exact
//!   box-length comparisons.
//! - [`planner`]: experiment geometry and de Broglie wavelength estimates.

pub mod combine;
pub mod error;
pub mod optics;
pub mod planner;
pub mod reeh;
pub mod schmudgen;
pub mod sector;

pub use error::{Error, Result};
