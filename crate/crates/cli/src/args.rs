use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// K3max without superposition over rotation axes on the sphere
    TtbMap,
    /// K3max over the planar (α, φ) family
    K3Surface,
    /// K3(ωt) and its correlators for several α
    K3Curves,
    /// Lifetime gain under the Bloch-equation model
    LifetimeBloch,
    /// Lifetime gain under the master-equation model
    LifetimeLindblad,
    /// Rotation angle f(t), speed g(t) and its non-linearity
    SoeProfiles,
    /// Pulse-sequence decompositions against their target gates
    VerifyCircuits,
    /// Randomized consistency checks across all modules
    Selftest,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::TtbMap => "ttb-map",
            Experiment::K3Surface => "k3-surface",
            Experiment::K3Curves => "k3-curves",
            Experiment::LifetimeBloch => "lifetime-bloch",
            Experiment::LifetimeLindblad => "lifetime-lindblad",
            Experiment::SoeProfiles => "soe-profiles",
            Experiment::VerifyCircuits => "verify-circuits",
            Experiment::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Superposed-unitary Leggett-Garg experiments.
///
/// `--grid` sets the main sweep density of each experiment: η and ξ points for
/// ttb-map, φ points for k3-surface, ωt points for k3-curves and soe-profiles,
/// α points for the lifetime experiments, and φ and ωt points for
/// verify-circuits.
#[derive(Debug, Clone, Parser)]
#[command(name = "lgsim", version)]
pub struct Cli {
    #[arg(value_enum)]
    pub experiment: Experiment,

    /// Superposition angle in radians; fixes α instead of sweeping it
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Angle between the rotation axes in degrees
    #[arg(long, value_name = "DEG")]
    pub phi: Option<f64>,

    /// Dephasing rate in 1/s
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Rotation frequency in rad/s
    #[arg(long)]
    pub omega: Option<f64>,

    /// Sweep density
    #[arg(long, value_name = "N")]
    pub grid: Option<usize>,

    /// Output file (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Seed for the randomized checks
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Worker threads
    #[arg(long, env = "LGSIM_THREADS")]
    pub threads: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_command_line() {
        let cli = Cli::try_parse_from([
            "lgsim", "k3-surface", "--alpha", "0.5", "--phi", "135", "--grid", "7", "--format", "json",
            "--seed", "3", "--threads", "2",
        ])
        .unwrap();
        assert_eq!(cli.experiment, Experiment::K3Surface);
        assert_eq!(cli.alpha, Some(0.5));
        assert_eq!(cli.phi, Some(135.0));
        assert_eq!(cli.grid, Some(7));
        assert_eq!(cli.format, Format::Json);
        assert_eq!(cli.threads, Some(2));
    }

    #[test]
    fn experiment_names_are_kebab_case() {
        for exp in Experiment::value_variants() {
            assert_eq!(exp.to_possible_value().unwrap().get_name(), exp.name());
        }
        assert!(Cli::try_parse_from(["lgsim", "nope"]).is_err());
    }
}
