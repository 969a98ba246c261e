//! Numerical integration of the thermal master equation.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::Matrix4;
use crate::measures::{correlations, CorrelationSet};
use crate::model::{hamiltonian, spin_lowering, spin_raising, ModelParams, Qubit};
use crate::states::{x_shape_deviation, DensityMatrix};

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_STRIDE: usize = 100;
pub const DEFAULT_T_MAX: f64 = 100.0;

/// `‖dρ/dt‖max` at or below which a sample counts as stationary.
pub const STEADY_RHS_TOL: f64 = 1e-12;

/// Off-pattern magnitude tolerated along a trajectory that starts X-shaped.
pub const TRAJECTORY_X_TOL: f64 = 1e-8;

/// `𝒟[A]ρ = AρA† - {A†A, ρ}/2`
pub fn dissipator(a: &Matrix4, rho: &Matrix4) -> Matrix4 {
    let ad = a.adjoint();
    *a * *rho * ad - (ad * *a).anticommutator(rho).scale(0.5)
}

/// `-i[H, ρ] + γ(n̄+1) Σ 𝒟[S₋]ρ + γn̄ Σ 𝒟[S₊]ρ` for an arbitrary matrix.
pub fn lindblad_rhs_matrix(rho: &Matrix4, p: &ModelParams) -> Matrix4 {
    let h = hamiltonian(p);
    let mut out = h.commutator(rho).scale_c(C64::new(0.0, -1.0));
    let down = p.gamma() * (p.nbar() + 1.0);
    let up = p.gamma() * p.nbar();
    for q in [Qubit::First, Qubit::Second] {
        if down != 0.0 {
            out += dissipator(&spin_lowering(q), rho).scale(down);
        }
        if up != 0.0 {
            out += dissipator(&spin_raising(q), rho).scale(up);
        }
    }
    out
}

pub fn lindblad_rhs(rho: &DensityMatrix, p: &ModelParams) -> Matrix4 {
    lindblad_rhs_matrix(rho.matrix(), p)
}

/// Sparse linear map on row-major vectorised 4x4 matrices.
#[derive(Clone, Debug)]
struct SparseMap {
    entries: Vec<(usize, usize, C64)>,
}

impl SparseMap {
    fn from_dense(m: &[[C64; 16]; 16]) -> Self {
        let mut entries = Vec::new();
        for (i, row) in m.iter().enumerate() {
            for (j, &z) in row.iter().enumerate() {
                if z != C64::new(0.0, 0.0) {
                    entries.push((i, j, z));
                }
            }
        }
        SparseMap { entries }
    }

    fn apply(&self, rho: &Matrix4) -> Matrix4 {
        let mut out = Matrix4::zeros();
        for &(i, j, z) in &self.entries {
            out.0[i / 4][i % 4] += z * rho.0[j / 4][j % 4];
        }
        out
    }
}

fn dense_mul(a: &[[C64; 16]; 16], b: &[[C64; 16]; 16]) -> [[C64; 16]; 16] {
    let mut m = [[C64::new(0.0, 0.0); 16]; 16];
    for i in 0..16 {
        for k in 0..16 {
            let x = a[i][k];
            if x == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..16 {
                m[i][j] += x * b[k][j];
            }
        }
    }
    m
}

/// The 16x16 superoperator `ℒ` with `dρ/dt = ℒρ`.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    dense: [[C64; 16]; 16],
    sparse: SparseMap,
}

impl Liouvillian {
    pub fn new(p: &ModelParams) -> Self {
        let mut dense = [[C64::new(0.0, 0.0); 16]; 16];
        for col in 0..16 {
            let mut e = Matrix4::zeros();
            e.0[col / 4][col % 4] = C64::new(1.0, 0.0);
            let image = lindblad_rhs_matrix(&e, p);
            for row in 0..16 {
                dense[row][col] = image.0[row / 4][row % 4];
            }
        }
        let sparse = SparseMap::from_dense(&dense);
        Liouvillian { dense, sparse }
    }

    pub fn apply(&self, rho: &Matrix4) -> Matrix4 {
        self.sparse.apply(rho)
    }

    /// `Σ_{k≤4} (hℒ)^k / k!`: one classical Runge-Kutta step of a linear
    /// system, collapsed into a single matrix.
    pub fn rk4_propagator(&self, h: f64) -> Propagator {
        let mut total = [[C64::new(0.0, 0.0); 16]; 16];
        let mut term = [[C64::new(0.0, 0.0); 16]; 16];
        for (i, row) in term.iter_mut().enumerate() {
            row[i] = C64::new(1.0, 0.0);
        }
        for k in 0..=4 {
            if k > 0 {
                term = dense_mul(&self.dense, &term);
                let s = h / k as f64;
                for row in term.iter_mut() {
                    for z in row.iter_mut() {
                        *z *= s;
                    }
                }
            }
            for i in 0..16 {
                for j in 0..16 {
                    total[i][j] += term[i][j];
                }
            }
        }
        Propagator {
            map: SparseMap::from_dense(&total),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Propagator {
    map: SparseMap,
}

impl Propagator {
    pub fn apply(&self, rho: &Matrix4) -> Matrix4 {
        self.map.apply(rho)
    }
}

/// One classical fourth-order Runge-Kutta step, stage by stage.
pub fn rk4_step(rho: &Matrix4, l: &Liouvillian, h: f64) -> Matrix4 {
    let k1 = l.apply(rho);
    let k2 = l.apply(&(*rho + k1.scale(h / 2.0)));
    let k3 = l.apply(&(*rho + k2.scale(h / 2.0)));
    let k4 = l.apply(&(*rho + k3.scale(h)));
    *rho + (k1 + k2.scale(2.0) + k3.scale(2.0) + k4).scale(h / 6.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolveConfig {
    pub t_max: f64,
    pub dt: f64,
    /// Record every `stride`-th step; the final time is always recorded.
    pub stride: usize,
}

impl Default for EvolveConfig {
    fn default() -> Self {
        EvolveConfig {
            t_max: DEFAULT_T_MAX,
            dt: DEFAULT_DT,
            stride: DEFAULT_STRIDE,
        }
    }
}

impl EvolveConfig {
    pub fn new(t_max: f64, dt: f64, stride: usize) -> Result<Self> {
        let c = EvolveConfig { t_max, dt, stride };
        c.check()?;
        Ok(c)
    }

    fn check(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::domain("dt", self.dt, "(0, inf)"));
        }
        if !(self.t_max.is_finite() && self.t_max >= 0.0) {
            return Err(Error::domain("t_max", self.t_max, "[0, inf)"));
        }
        if self.stride == 0 {
            return Err(Error::domain("stride", 0.0, "[1, inf)"));
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `t_max`.
    pub fn steps(&self) -> usize {
        let n = (self.t_max / self.dt).ceil();
        // guard against t_max/dt landing a hair above an integer
        if (n - 1.0) * self.dt >= self.t_max * (1.0 - 1e-12) && n > 0.0 {
            n as usize - 1
        } else {
            n as usize
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<DensityMatrix>,
    pub correlations: Vec<CorrelationSet>,
    pub params: ModelParams,
    pub config: EvolveConfig,
    /// First sampled time with `‖dρ/dt‖max ≤ 1e-12`, if any.
    pub steady_time: Option<f64>,
    liouvillian: Liouvillian,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix {
        self.states.last().expect("trajectory has at least one sample")
    }

    /// State at an arbitrary `t ∈ [0, t_max]`, re-integrated from the
    /// nearest earlier sample with the trajectory's step size.
    pub fn state_at(&self, t: f64) -> Result<DensityMatrix> {
        if !(0.0..=self.config.t_max).contains(&t) {
            return Err(Error::domain("t", t, "[0, t_max]"));
        }
        let i = self.times.partition_point(|&s| s <= t).saturating_sub(1);
        let mut rho = *self.states[i].matrix();
        let mut now = self.times[i];
        let h = self.config.dt;
        let prop = self.liouvillian.rk4_propagator(h);
        while t - now > h {
            rho = prop.apply(&rho);
            now += h;
        }
        if t > now {
            rho = rk4_step(&rho, &self.liouvillian, t - now);
        }
        DensityMatrix::new(rho).map_err(|e| Error::StepRejected {
            time: t,
            reason: Box::new(e),
        })
    }
}

/// Integrates with the default stride.
pub fn evolve(rho0: &DensityMatrix, params: &ModelParams, t_max: f64, dt: f64) -> Result<Trajectory> {
    evolve_with(
        rho0,
        params,
        &EvolveConfig {
            t_max,
            dt,
            stride: DEFAULT_STRIDE,
        },
    )
}

/// Fixed-step RK4 from `rho0` to `t_max`. Every recorded state is validated
/// and must stay X-shaped when `rho0` is.
pub fn evolve_with(rho0: &DensityMatrix, params: &ModelParams, cfg: &EvolveConfig) -> Result<Trajectory> {
    cfg.check()?;
    let l = Liouvillian::new(params);
    let prop = l.rk4_propagator(cfg.dt);
    let n = cfg.steps();
    let track_x = x_shape_deviation(rho0.matrix()) <= TRAJECTORY_X_TOL;

    let mut traj = Trajectory {
        times: Vec::with_capacity(n / cfg.stride + 2),
        states: Vec::with_capacity(n / cfg.stride + 2),
        correlations: Vec::with_capacity(n / cfg.stride + 2),
        params: *params,
        config: *cfg,
        steady_time: None,
        liouvillian: l,
    };

    let mut rho = *rho0.matrix();
    record(&mut traj, 0.0, rho, track_x)?;
    for k in 1..=n {
        let t = if k == n { cfg.t_max } else { k as f64 * cfg.dt };
        if k == n {
            let h = cfg.t_max - (k - 1) as f64 * cfg.dt;
            rho = rk4_step(&rho, &traj.liouvillian, h);
        } else {
            rho = prop.apply(&rho);
        }
        if k % cfg.stride == 0 || k == n {
            record(&mut traj, t, rho, track_x)?;
        }
    }
    Ok(traj)
}

fn record(traj: &mut Trajectory, t: f64, rho: Matrix4, track_x: bool) -> Result<()> {
    let reject = |e: Error| Error::StepRejected {
        time: t,
        reason: Box::new(e),
    };
    if track_x {
        let dev = x_shape_deviation(&rho);
        if dev > TRAJECTORY_X_TOL {
            return Err(reject(Error::NotXShaped { magnitude: dev }));
        }
    }
    let state = DensityMatrix::new(rho).map_err(reject)?;
    let corr = correlations(&state).map_err(reject)?;
    if traj.steady_time.is_none() && traj.liouvillian.apply(&rho).max_abs() <= STEADY_RHS_TOL {
        traj.steady_time = Some(t);
    }
    traj.times.push(t);
    traj.states.push(state);
    traj.correlations.push(corr);
    Ok(())
}
