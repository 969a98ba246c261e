use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "xdyn", version, about = "Two-qubit X-state dissipative dynamics and correlation measures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrate the master equation and write every measure per sample as CSV
    Evolve(EvolveArgs),
    /// Entanglement sudden-death time γτ for independent decay (J = Δ = 0)
    Esd(EsdArgs),
    /// Closed-form steady-state correlations, optionally swept over n̄ or Δ
    Steady(SteadyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    /// Relaxation rate γ
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Anisotropic coupling Δ
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub delta: f64,
    /// Isotropic coupling J
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub j: f64,
    /// Field strength ω
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Mean excitation of the thermal bath
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nbar: f64,
}

#[derive(Args, Debug)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Initial state: mixture:W, werner:P or custom@FILE
    #[arg(long, default_value = "mixture:0.5")]
    pub initial: Initial,
    #[arg(long, default_value_t = 100.0, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1e-3, allow_negative_numbers = true)]
    pub dt: f64,
    /// Write every STRIDE-th step
    #[arg(long, default_value_t = 100)]
    pub stride: usize,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Not supported for evolve; present so that passing it is reported
    #[arg(long, hide = true)]
    pub sweep: Option<Sweep>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum EsdMode {
    /// γτ = ln((1 + √(1 - 2w(1-w)))/(2w)); zero temperature only
    Closed,
    /// Root of the thermal concurrence
    Numeric,
}

#[derive(Args, Debug)]
pub struct EsdArgs {
    /// Weight of |01⟩ in the initial mixture
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub w: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nbar: f64,
    /// Defaults to closed at n̄ = 0 and numeric otherwise
    #[arg(long, value_enum)]
    pub mode: Option<EsdMode>,
    /// Search horizon in γt for the numeric mode (default 100/(2n̄+1))
    #[arg(long)]
    pub horizon: Option<f64>,
    /// w:START:STOP:COUNT or nbar:START:STOP:COUNT
    #[arg(long)]
    pub sweep: Option<Sweep>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SteadyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// nbar:START:STOP:COUNT or delta:START:STOP:COUNT
    #[arg(long)]
    pub sweep: Option<Sweep>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Initial {
    Mixture(f64),
    Werner(f64),
    Custom(PathBuf),
}

impl FromStr for Initial {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(path) = s.strip_prefix("custom@") {
            if path.is_empty() {
                return Err("custom@ needs a file path".into());
            }
            return Ok(Initial::Custom(PathBuf::from(path)));
        }
        let (kind, value) = s
            .split_once(':')
            .ok_or_else(|| format!("expected mixture:W, werner:P or custom@FILE, got `{s}`"))?;
        let v: f64 = value
            .parse()
            .map_err(|_| format!("`{value}` is not a number"))?;
        match kind {
            "mixture" => Ok(Initial::Mixture(v)),
            "werner" => Ok(Initial::Werner(v)),
            _ => Err(format!("unknown initial state `{kind}`")),
        }
    }
}

/// `NAME:START:STOP:COUNT`, evenly spaced with both ends included.
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl FromStr for Sweep {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [name, start, stop, count] = parts[..] else {
            return Err(format!("expected NAME:START:STOP:COUNT, got `{s}`"));
        };
        let num = |x: &str| -> Result<f64, String> {
            let v: f64 = x.parse().map_err(|_| format!("`{x}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{x}` is not finite"))
            }
        };
        let count: usize = count
            .parse()
            .map_err(|_| format!("`{count}` is not a point count"))?;
        if count == 0 {
            return Err("sweep needs at least one point".into());
        }
        Ok(Sweep {
            name: name.to_string(),
            start: num(start)?,
            stop: num(stop)?,
            count,
        })
    }
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                if k == self.count - 1 {
                    self.stop
                } else {
                    self.start + k as f64 * step
                }
            })
            .collect()
    }

    pub fn expect_name(&self, allowed: &[&str]) -> Result<(), CliError> {
        if allowed.contains(&self.name.as_str()) {
            Ok(())
        } else {
            Err(CliError::Config(format!(
                "cannot sweep `{}` here; expected one of {}",
                self.name,
                allowed.join(", ")
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_initial() {
        assert_eq!("mixture:0.5".parse::<Initial>(), Ok(Initial::Mixture(0.5)));
        assert_eq!("werner:-0.25".parse::<Initial>(), Ok(Initial::Werner(-0.25)));
        assert_eq!(
            "custom@rho.txt".parse::<Initial>(),
            Ok(Initial::Custom(PathBuf::from("rho.txt")))
        );
        assert!("bell:1".parse::<Initial>().is_err());
        assert!("mixture".parse::<Initial>().is_err());
        assert!("werner:x".parse::<Initial>().is_err());
        assert!("custom@".parse::<Initial>().is_err());
    }

    #[test]
    fn parse_sweep() {
        let s: Sweep = "w:0.01:1:100".parse().unwrap();
        let v = s.values();
        assert_eq!(v.len(), 100);
        assert_eq!((v[0], v[99]), (0.01, 1.0));
        assert!(v.windows(2).all(|p| p[1] > p[0]));
        assert_eq!("nbar:0.3:9:1".parse::<Sweep>().unwrap().values(), vec![0.3]);
        assert!("nbar:0:1".parse::<Sweep>().is_err());
        assert!("nbar:0:1:0".parse::<Sweep>().is_err());
        assert!("nbar:0:inf:3".parse::<Sweep>().is_err());
        assert!("nbar:a:1:3".parse::<Sweep>().is_err());
    }
}
