use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;

use args::{Cli, Command};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Domain(xdyn_core::Error),
    #[error("integration failed: {0}")]
    Integration(xdyn_core::Error),
    #[error("range check failed at {0}")]
    Range(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Domain(_) => 2,
            CliError::Integration(_) | CliError::Range(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let res = match &cli.command {
        Command::Evolve(a) => commands::evolve(a),
        Command::Esd(a) => commands::esd(a),
        Command::Steady(a) => commands::steady(a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
