#![allow(clippy::needless_range_loop)]

//! Dissipative dynamics of two coupled qubits in X-shaped states, and the
//! entanglement, discord-like and coherence measures evaluated along it.

pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod model;
pub mod states;

pub use error::{Error, Result};
