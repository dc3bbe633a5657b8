//! Command-line arguments and the resolved run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Parser)]
#[command(name = "eqec", version, about = "Verify and simulate error correction over real, complex and quaternionic qubits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the verification suite of one module, or all of them.
    Verify { target: Target },
    /// Run seeded encode / corrupt / correct trials on a code.
    Simulate { code: SimCode },
    /// Run a narrated demonstration.
    Demo { name: DemoName },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Quaternion,
    Linalg,
    Codes,
    Dirac,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimCode {
    R3,
    H3,
    Shor9,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    PhaseFailure,
    EffectiveCount,
    Hopf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Seed for every randomized check.
    #[arg(long, global = true, env = "EQEC_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Random trials per randomized check.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// Replace every check tolerance with this value.
    #[arg(long, global = true, value_parser = positive_float)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

fn positive_float(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("tolerance must be positive, got {v}"))
    }
}

/// Settings shared by every suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn new(seed: u64, trials: usize) -> Self {
        Self {
            seed,
            trials,
            tol: None,
        }
    }

    /// The override when one was given, else `default`.
    pub fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

impl From<&RunArgs> for RunConfig {
    fn from(a: &RunArgs) -> Self {
        Self {
            seed: a.seed,
            trials: a.trials as usize,
            tol: a.tol,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from(["eqec", "verify", "all"]).unwrap();
        let cfg = RunConfig::from(&cli.run);
        assert_eq!(cfg.trials, 1000);
        assert_eq!(cfg.tol, None);
        assert_eq!(cli.run.format, Format::Text);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(Cli::try_parse_from(["eqec", "verify", "all", "--trials", "0"]).is_err());
        assert!(Cli::try_parse_from(["eqec", "verify", "all", "--tol", "-1"]).is_err());
        assert!(Cli::try_parse_from(["eqec", "verify", "nothing"]).is_err());
    }

    #[test]
    fn structured_alias_and_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["eqec", "demo", "hopf", "--format", "structured", "--seed", "5"]).unwrap();
        assert_eq!(cli.run.format, Format::Json);
        assert_eq!(cli.run.seed, 5);
    }
}
