use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use xdyn_core::dynamics::{
    esd_time_thermal_within, esd_time_zero_t, evolve_with, default_esd_horizon,
    steady_correlations_thermal, DeathTime, EvolveConfig,
};
use xdyn_core::measures::CorrelationSet;
use xdyn_core::model::ModelParams;
use xdyn_core::states::{make_mixture, make_werner, parse_matrix, purity, DensityMatrix};
use xdyn_core::Error;

use crate::args::{EsdArgs, EsdMode, EvolveArgs, Initial, ModelArgs, SteadyArgs};
use crate::CliError;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn params(m: &ModelArgs) -> Result<ModelParams, CliError> {
    ModelParams::new(m.j, m.delta, m.omega, m.gamma, m.nbar).map_err(CliError::Domain)
}

fn initial_state(init: &Initial) -> Result<DensityMatrix, CliError> {
    match init {
        Initial::Mixture(w) => Ok(make_mixture(*w).map_err(CliError::Domain)?.to_density()),
        Initial::Werner(p) => Ok(make_werner(*p).map_err(CliError::Domain)?.to_density()),
        Initial::Custom(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            let m = parse_matrix(&text).map_err(CliError::Domain)?;
            DensityMatrix::new(m).map_err(CliError::Domain)
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}"))),
    }
}

fn check_row(row: usize, c: &CorrelationSet) -> Result<(), CliError> {
    c.check_ranges()
        .map_err(|v| CliError::Range(format!("row {row}: {v}")))
}

pub const EVOLVE_HEADER: &str =
    "t,gamma_t,concurrence,negativity,log_negativity,lqu,min,ccc,l1_coherence,purity";

pub fn evolve(a: &EvolveArgs) -> Result<(), CliError> {
    if a.sweep.is_some() {
        return Err(CliError::Config("evolve does not take --sweep".into()));
    }
    let p = params(&a.model)?;
    let cfg = EvolveConfig::new(a.t_max, a.dt, a.stride).map_err(CliError::Domain)?;
    let rho0 = initial_state(&a.initial)?;
    let traj = evolve_with(&rho0, &p, &cfg).map_err(CliError::Integration)?;
    if let Some(ts) = traj.steady_time {
        eprintln!("steady state reached at t = {}", num(ts));
    }
    let mut csv = String::with_capacity(200 * traj.len());
    csv.push_str(EVOLVE_HEADER);
    csv.push('\n');
    for (row, ((t, state), c)) in traj
        .times
        .iter()
        .zip(&traj.states)
        .zip(&traj.correlations)
        .enumerate()
    {
        check_row(row + 1, c)?;
        let fields = [
            *t,
            p.gamma() * t,
            c.concurrence,
            c.negativity,
            c.log_negativity,
            c.lqu,
            c.min_trace,
            c.correlated_coherence,
            c.l1_coherence,
            purity(state),
        ];
        csv.push_str(&fields.map(num).join(","));
        csv.push('\n');
    }
    write_output(a.out.as_deref(), &csv)
}

fn esd_one(w: f64, gamma: f64, nbar: f64, mode: EsdMode, horizon: Option<f64>) -> Result<DeathTime, CliError> {
    match mode {
        EsdMode::Closed => {
            if nbar != 0.0 {
                return Err(CliError::Config(
                    "the closed form holds only at nbar = 0; use --mode numeric".into(),
                ));
            }
            Ok(esd_time_zero_t(w, gamma).map_err(CliError::Domain)?.death_time)
        }
        EsdMode::Numeric => {
            let h = horizon.unwrap_or_else(|| default_esd_horizon(nbar));
            match esd_time_thermal_within(w, gamma, nbar, h) {
                Ok(r) => Ok(r.death_time),
                Err(Error::NoDeath { horizon }) => {
                    log::warn!("w = {w}, nbar = {nbar}: no death within γt = {horizon}");
                    Ok(DeathTime::Infinite)
                }
                Err(e) => Err(CliError::Domain(e)),
            }
        }
    }
}

pub fn esd(a: &EsdArgs) -> Result<(), CliError> {
    let Some(sweep) = &a.sweep else {
        let mode = a.mode.unwrap_or(if a.nbar == 0.0 { EsdMode::Closed } else { EsdMode::Numeric });
        let t = esd_one(a.w, a.gamma, a.nbar, mode, a.horizon)?;
        return write_output(a.out.as_deref(), &format!("gamma_tau = {t}\n"));
    };
    sweep.expect_name(&["w", "nbar"])?;
    let values = sweep.values();
    let rows: Vec<Result<DeathTime, CliError>> = values
        .par_iter()
        .map(|&v| {
            let (w, nbar) = if sweep.name == "w" { (v, a.nbar) } else { (a.w, v) };
            let mode = a.mode.unwrap_or(if nbar == 0.0 { EsdMode::Closed } else { EsdMode::Numeric });
            esd_one(w, a.gamma, nbar, mode, a.horizon)
        })
        .collect();
    let mut csv = format!("{},gamma_tau\n", sweep.name);
    for (v, r) in values.iter().zip(rows) {
        csv.push_str(&format!("{},{}\n", num(*v), r?));
    }
    write_output(a.out.as_deref(), &csv)
}

pub fn steady(a: &SteadyArgs) -> Result<(), CliError> {
    let base = params(&a.model)?;
    let (name, values) = match &a.sweep {
        Some(s) => {
            s.expect_name(&["nbar", "delta"])?;
            (s.name.as_str(), s.values())
        }
        None => ("nbar", vec![base.nbar()]),
    };
    let rows: Vec<Result<CorrelationSet, CliError>> = values
        .par_iter()
        .map(|&v| {
            let p = if name == "nbar" { base.with_nbar(v) } else { base.with_delta(v) };
            let p = p.map_err(CliError::Domain)?;
            steady_correlations_thermal(&p).map_err(CliError::Domain)
        })
        .collect();
    let mut csv = format!("{name},concurrence,log_negativity,lqu,min,ccc\n");
    for (row, (v, r)) in values.iter().zip(rows).enumerate() {
        let c = r?;
        check_row(row + 1, &c)?;
        let fields = [*v, c.concurrence, c.log_negativity, c.lqu, c.min_trace, c.correlated_coherence];
        csv.push_str(&fields.map(num).join(","));
        csv.push('\n');
    }
    write_output(a.out.as_deref(), &csv)
}
