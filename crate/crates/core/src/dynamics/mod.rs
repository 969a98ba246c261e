//! Time evolution under the master equation, its closed-form solutions and
//! sudden-death analysis.

pub mod analytic;
pub mod esd;
pub mod lindblad;

pub use analytic::*;
pub use esd::*;
pub use lindblad::*;
