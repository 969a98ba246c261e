//! Physical parameters, single-qubit ladder operators and the anisotropic XY
//! Hamiltonian.
//!
//! Units: ħ = 1 and every rate or coupling is expressed in units of the field
//! strength ω. The single-qubit basis is `{|0⟩, |1⟩}` with `|0⟩` the excited
//! level, so `S₋|0⟩ = |1⟩` and relaxation accumulates population in `|11⟩`.

use std::sync::atomic::{AtomicBool, Ordering};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{Matrix2, Matrix4};

/// Couplings beyond this fraction of ω leave the regime where equal,
/// independent relaxation of the two qubits is physically justified.
pub const WEAK_COUPLING_LIMIT: f64 = 0.5;

static WARNED: AtomicBool = AtomicBool::new(false);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    j: f64,
    delta: f64,
    omega: f64,
    gamma: f64,
    nbar: f64,
}

impl ModelParams {
    pub fn new(j: f64, delta: f64, omega: f64, gamma: f64, nbar: f64) -> Result<Self> {
        for (name, v) in [
            ("J", j),
            ("delta", delta),
            ("omega", omega),
            ("gamma", gamma),
            ("nbar", nbar),
        ] {
            if !v.is_finite() {
                return Err(Error::domain(name, v, "finite reals"));
            }
        }
        if omega <= 0.0 {
            return Err(Error::domain("omega", omega, "(0, inf)"));
        }
        if gamma < 0.0 {
            return Err(Error::domain("gamma", gamma, "[0, inf)"));
        }
        if nbar < 0.0 {
            return Err(Error::domain("nbar", nbar, "[0, inf)"));
        }
        let p = ModelParams {
            j,
            delta,
            omega,
            gamma,
            nbar,
        };
        // sweeps build many parameter sets; one warning per process is enough
        if p.outside_weak_coupling() && !WARNED.swap(true, Ordering::Relaxed) {
            log::warn!(
                "J/ω = {:.3}, Δ/ω = {:.3}: beyond the weak-coupling regime (limit {WEAK_COUPLING_LIMIT})",
                j / omega,
                delta / omega
            );
        }
        Ok(p)
    }

    /// Zero-temperature parameters with ω = 1.
    pub fn zero_temperature(j: f64, delta: f64, gamma: f64) -> Result<Self> {
        Self::new(j, delta, 1.0, gamma, 0.0)
    }

    pub fn j(&self) -> f64 {
        self.j
    }
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn omega(&self) -> f64 {
        self.omega
    }
    pub fn gamma(&self) -> f64 {
        self.gamma
    }
    pub fn nbar(&self) -> f64 {
        self.nbar
    }

    /// `Ω = √(Δ² + ω²)`
    pub fn big_omega(&self) -> f64 {
        self.delta.hypot(self.omega)
    }

    pub fn with_j(self, j: f64) -> Result<Self> {
        Self::new(j, self.delta, self.omega, self.gamma, self.nbar)
    }
    pub fn with_delta(self, delta: f64) -> Result<Self> {
        Self::new(self.j, delta, self.omega, self.gamma, self.nbar)
    }
    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(self.j, self.delta, self.omega, gamma, self.nbar)
    }
    pub fn with_nbar(self, nbar: f64) -> Result<Self> {
        Self::new(self.j, self.delta, self.omega, self.gamma, nbar)
    }

    pub fn outside_weak_coupling(&self) -> bool {
        (self.j / self.omega).abs() > WEAK_COUPLING_LIMIT
            || (self.delta / self.omega).abs() > WEAK_COUPLING_LIMIT
    }
}

impl Default for ModelParams {
    /// ω = 1, J = 0.1, Δ = 0.5, γ = 0.1, n̄ = 0.
    fn default() -> Self {
        ModelParams {
            j: 0.1,
            delta: 0.5,
            omega: 1.0,
            gamma: 0.1,
            nbar: 0.0,
        }
    }
}

/// Which of the two qubits an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    First,
    Second,
}

impl Qubit {
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Qubit::First),
            2 => Ok(Qubit::Second),
            _ => Err(Error::domain("qubit_index", i as f64, "{1, 2}")),
        }
    }
}

/// Single-qubit `S₋ = |1⟩⟨0|`.
pub fn lowering() -> Matrix2 {
    Matrix2::from_real([[0.0, 0.0], [1.0, 0.0]])
}

/// Single-qubit `S₊ = |0⟩⟨1|`.
pub fn raising() -> Matrix2 {
    Matrix2::from_real([[0.0, 1.0], [0.0, 0.0]])
}

/// Single-qubit `S_z = diag(½, -½)`.
pub fn spin_z() -> Matrix2 {
    Matrix2::from_diag([0.5, -0.5])
}

fn on_qubit(op: Matrix2, q: Qubit) -> Matrix4 {
    match q {
        Qubit::First => op.kron(&Matrix2::identity()),
        Qubit::Second => Matrix2::identity().kron(&op),
    }
}

/// `S₋ ⊗ 1` or `1 ⊗ S₋`.
pub fn spin_lowering(q: Qubit) -> Matrix4 {
    on_qubit(lowering(), q)
}

/// `S₊ ⊗ 1` or `1 ⊗ S₊`.
pub fn spin_raising(q: Qubit) -> Matrix4 {
    on_qubit(raising(), q)
}

/// `H = J(S₊S₋ + S₋S₊) + Δ(S₊S₊ + S₋S₋) + ω(S_z ⊗ 1 + 1 ⊗ S_z)`.
///
/// In the `{|00⟩, |01⟩, |10⟩, |11⟩}` basis this is `ω` on `diag(1, 0, 0, -1)`,
/// `J` between `|01⟩` and `|10⟩`, and `Δ` between `|00⟩` and `|11⟩`. The
/// matrix is assembled entrywise so that it is exactly Hermitian.
pub fn hamiltonian(p: &ModelParams) -> Matrix4 {
    let mut h = Matrix4::from_diag([p.omega, 0.0, 0.0, -p.omega]);
    let j = C64::new(p.j, 0.0);
    let d = C64::new(p.delta, 0.0);
    h[(1, 2)] = j;
    h[(2, 1)] = j;
    h[(0, 3)] = d;
    h[(3, 0)] = d;
    h
}

/// The same Hamiltonian built from Kronecker products of spin operators.
pub fn hamiltonian_from_spins(p: &ModelParams) -> Matrix4 {
    let (sp, sm, sz) = (raising(), lowering(), spin_z());
    let id = Matrix2::identity();
    (sp.kron(&sm) + sm.kron(&sp)).scale(p.j)
        + (sp.kron(&sp) + sm.kron(&sm)).scale(p.delta)
        + (sz.kron(&id) + id.kron(&sz)).scale(p.omega)
}
