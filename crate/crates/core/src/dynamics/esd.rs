//! Entanglement sudden death: closed-form and root-found death times, and
//! dark/revival intervals along integrated trajectories.

use std::fmt;

use crate::error::{Error, Result};
use crate::measures::{correlations, Measure};

use super::lindblad::Trajectory;

/// A sample is dark when the tracked measure is at or below this value.
pub const DARK_TOL: f64 = 1e-12;

/// A dark interval ends only once the measure exceeds this value.
pub const REVIVAL_TOL: f64 = 1e-9;

/// Width to which interval endpoints are bisected, in units of 1/ω.
pub const ENDPOINT_TOL: f64 = 1e-6;

/// Width to which the thermal death time is bisected, in units of 1/γ.
pub const ESD_ROOT_TOL: f64 = 1e-10;

/// Dimensionless death time `γτ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeathTime {
    Finite(f64),
    Infinite,
}

impl DeathTime {
    pub fn value(self) -> f64 {
        match self {
            DeathTime::Finite(x) => x,
            DeathTime::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for DeathTime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeathTime::Finite(x) => write!(f, "{x:.16e}"),
            DeathTime::Infinite => f.write_str("inf"),
        }
    }
}

/// A maximal stretch of vanishing measure. `end` is `None` when the measure
/// never revives within the trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DarkInterval {
    pub start: f64,
    pub end: Option<f64>,
}

impl DarkInterval {
    pub fn length(&self) -> Option<f64> {
        self.end.map(|e| e - self.start)
    }
}

/// Death time and dark intervals, all in units of `1/γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EsdResult {
    pub death_time: DeathTime,
    pub revivals: Vec<DarkInterval>,
}

fn check_w(w: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::domain("w", w, "[0, 1]"));
    }
    Ok(())
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(Error::domain("gamma", gamma, "(0, inf)"));
    }
    Ok(())
}

fn check_nbar(nbar: f64) -> Result<()> {
    if !(nbar.is_finite() && nbar >= 0.0) {
        return Err(Error::domain("nbar", nbar, "[0, inf)"));
    }
    Ok(())
}

/// `γτ = ln((1 + √(1 - 2w(1-w)))/(2w))` for independent decay at zero
/// temperature; infinite at `w = 0`.
pub fn esd_time_zero_t(w: f64, gamma: f64) -> Result<EsdResult> {
    check_w(w)?;
    check_gamma(gamma)?;
    let death_time = if w == 0.0 {
        DeathTime::Infinite
    } else {
        DeathTime::Finite(((1.0 + (1.0 - 2.0 * w * (1.0 - w)).sqrt()) / (2.0 * w)).ln())
    };
    Ok(EsdResult {
        death_time,
        revivals: Vec::new(),
    })
}

/// `(a0, a1, a2)` of `f = a0 + a1 w + a2 w²` at `x = (2n̄+1)γt`.
fn f_coefficients(x: f64, nbar: f64) -> (f64, f64, f64) {
    let m = 2.0 * nbar + 1.0;
    let m2 = m * m;
    let sh = (x / 2.0).sinh();
    let br = 1.0 + 4.0 * nbar * (nbar + 1.0) * (x / 2.0).exp() * (x / 2.0).cosh();
    let a0 = 4.0 * (-3.0 * x).exp() * sh * sh * br * br;
    let a1 = 4.0 * m2 * (-3.5 * x).exp() * sh * br;
    let a2 = -2.0 * m2 * m2 * (-3.0 * x).exp() * x.sinh();
    (a0, a1, a2)
}

fn f_value(x: f64, w: f64, nbar: f64) -> f64 {
    let (a0, a1, a2) = f_coefficients(x, nbar);
    a0 + a1 * w + a2 * w * w
}

/// Concurrence for `J = Δ = 0` in a thermal bath, starting from
/// `w|01⟩⟨01| + (1-w)|Φ+⟩⟨Φ+|`.
pub fn concurrence_thermal_independent(t: f64, w: f64, gamma: f64, nbar: f64) -> Result<f64> {
    check_w(w)?;
    check_gamma(gamma)?;
    check_nbar(nbar)?;
    let m = 2.0 * nbar + 1.0;
    let x = m * gamma * t;
    let f = f_value(x, w, nbar).max(0.0);
    Ok(((1.0 - w) * (-x).exp() - f.sqrt() / (m * m)).max(0.0))
}

/// Default search horizon in `γt`: `100/(2n̄+1)`.
pub fn default_esd_horizon(nbar: f64) -> f64 {
    100.0 / (2.0 * nbar + 1.0)
}

pub fn esd_time_thermal(w: f64, gamma: f64, nbar: f64) -> Result<EsdResult> {
    esd_time_thermal_within(w, gamma, nbar, default_esd_horizon(nbar))
}

/// First root in `γt ∈ (0, horizon]` of `e^{2(2n̄+1)γt} f = (2n̄+1)⁴(1-w)²`,
/// bracketed on a uniform grid and bisected to 1e-10.
pub fn esd_time_thermal_within(w: f64, gamma: f64, nbar: f64, horizon: f64) -> Result<EsdResult> {
    check_w(w)?;
    check_gamma(gamma)?;
    check_nbar(nbar)?;
    if !(horizon.is_finite() && horizon > 0.0) {
        return Err(Error::domain("horizon", horizon, "(0, inf)"));
    }
    let finite = |x: f64| {
        Ok(EsdResult {
            death_time: DeathTime::Finite(x),
            revivals: Vec::new(),
        })
    };
    if w == 1.0 {
        return finite(0.0);
    }
    let m = 2.0 * nbar + 1.0;
    let target = m.powi(4) * (1.0 - w) * (1.0 - w);
    // the margin keeps round-off in `1 - 2e^{-x} + ...` from faking a root
    // once the concurrence is below machine precision
    let margin = 1e-12 * target;
    let g = |s: f64| {
        let x = m * s;
        (2.0 * x).exp() * f_value(x, w, nbar) - target - margin
    };
    const GRID: usize = 20_000;
    let step = horizon / GRID as f64;
    let mut lo = 0.0;
    for k in 1..=GRID {
        let hi = k as f64 * step;
        if g(hi) >= 0.0 {
            let mut hi = hi;
            while hi - lo > ESD_ROOT_TOL {
                let mid = 0.5 * (lo + hi);
                if g(mid) >= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return finite(0.5 * (lo + hi));
        }
        lo = hi;
    }
    Err(Error::NoDeath { horizon })
}

fn measure_at(traj: &Trajectory, t: f64, m: Measure) -> Result<f64> {
    Ok(correlations(&traj.state_at(t)?)?.get(m))
}

/// Bisects between a time where `m` is above [`DARK_TOL`] and one where it
/// is not, in either order, down to [`ENDPOINT_TOL`].
fn refine(traj: &Trajectory, m: Measure, mut lit: f64, mut dark: f64) -> Result<f64> {
    while (dark - lit).abs() > ENDPOINT_TOL {
        let mid = 0.5 * (lit + dark);
        if measure_at(traj, mid, m)? <= DARK_TOL {
            dark = mid;
        } else {
            lit = mid;
        }
    }
    Ok(0.5 * (lit + dark))
}

/// Maximal intervals where `m` is at most [`DARK_TOL`]. An interval closes
/// only once `m` exceeds [`REVIVAL_TOL`]; endpoints are refined by
/// re-integrating from the bracketing samples.
pub fn find_dark_intervals(traj: &Trajectory, m: Measure) -> Result<Vec<DarkInterval>> {
    let vals: Vec<f64> = traj.correlations.iter().map(|c| c.get(m)).collect();
    let t = &traj.times;
    let mut out = Vec::new();
    let mut open: Option<f64> = None;
    for k in 0..vals.len() {
        match open {
            None if vals[k] <= DARK_TOL => {
                let start = if k == 0 {
                    t[0]
                } else {
                    refine(traj, m, t[k - 1], t[k])?
                };
                open = Some(start);
            }
            Some(start) if vals[k] > REVIVAL_TOL => {
                // the last dark sample before the revival brackets the end
                let last_dark = (0..k).rev().find(|&i| vals[i] <= DARK_TOL).unwrap_or(0);
                let end = refine(traj, m, t[k], t[last_dark].max(start))?;
                out.push(DarkInterval {
                    start,
                    end: Some(end),
                });
                open = None;
            }
            _ => {}
        }
    }
    if let Some(start) = open {
        out.push(DarkInterval { start, end: None });
    }
    Ok(out)
}

/// Concurrence death time and dark intervals of an integrated trajectory,
/// rescaled to units of `1/γ`.
pub fn esd_from_trajectory(traj: &Trajectory) -> Result<EsdResult> {
    let g = traj.params.gamma();
    if g == 0.0 {
        return Err(Error::DegenerateParams("gamma = 0 sets no ESD time scale"));
    }
    let intervals = find_dark_intervals(traj, Measure::Concurrence)?;
    let death_time = intervals
        .first()
        .map_or(DeathTime::Infinite, |iv| DeathTime::Finite(g * iv.start));
    let revivals = intervals
        .into_iter()
        .map(|iv| DarkInterval {
            start: g * iv.start,
            end: iv.end.map(|e| g * e),
        })
        .collect();
    Ok(EsdResult {
        death_time,
        revivals,
    })
}
