use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M - M†| = {deviation:.3e} exceeds 1e-10")]
    NotHermitian { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:.3e})")]
    ConvergenceFailure { sweeps: usize, off_diagonal: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -1e-10")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.17} (|tr - 1| exceeds 1e-10)")]
    TraceNotOne { trace: f64 },

    #[error("state is not X-shaped: off-pattern entry of magnitude {magnitude:.3e}")]
    NotXShaped { magnitude: f64 },

    #[error("{name} = {value} is outside {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("degenerate parameters: {0}")]
    DegenerateParams(&'static str),

    #[error("integration step rejected at t = {time}: {reason}")]
    StepRejected { time: f64, reason: Box<Error> },

    #[error("concurrence does not vanish within the search horizon γt = {horizon}")]
    NoDeath { horizon: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            domain,
        }
    }
}
