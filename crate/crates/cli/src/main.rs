mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ConfigError, ExperimentConfig};
use report::Outcome;

#[derive(Parser, Debug)]
#[command(name = "ffheight", version, about = "Heights of elliptic curves over Q(T1, ..., Tn)")]
struct Cli {
    /// Experiment configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Directory for report files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides `settings.max_level`.
    #[arg(long, global = true)]
    max_level: Option<u32>,
    /// Overrides `settings.tol` and `settings.target_error`.
    #[arg(long, global = true)]
    tol: Option<String>,
    /// Overrides `settings.seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weil and canonical height of configured points.
    Height {
        #[arg(long)]
        point: Option<String>,
    },
    /// Degree identities under reduction, one row per point, hypersurface and level.
    TheoremA {
        #[arg(long)]
        point: Option<String>,
        /// Overrides `settings.levels`.
        #[arg(long)]
        levels: Option<u32>,
    },
    /// Specialization survey along the configured line.
    TheoremB,
    /// Reduced curve and point modulo a hypersurface.
    Reduce {
        #[arg(long)]
        point: String,
        #[arg(long)]
        gamma: String,
    },
    /// Fiber and point at a rational point `t`.
    Specialize {
        #[arg(long)]
        point: String,
        /// Projective coordinates, e.g. `1:2:3`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Which case occurs at an indeterminacy point on `H∞`.
    ClassifyInfinity {
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Least multiple with nonsingular reduction at every configured divisor.
    NonsingularMultiple {
        #[arg(long)]
        point: String,
    },
}

fn load(cli: &Cli) -> Result<ExperimentConfig, Outcome> {
    let path = cli.config.as_ref().ok_or_else(|| Outcome::Validation("--config is required".into()))?;
    let mut cfg = ExperimentConfig::load(path).map_err(|ConfigError(e)| Outcome::Validation(e))?;
    let s = &mut cfg.settings;
    if let Some(m) = cli.max_level {
        s.max_level = m;
    }
    if let Some(t) = &cli.tol {
        let r = config::positive_rational(t, "--tol").map_err(|ConfigError(e)| Outcome::Validation(e))?;
        s.tol = ffheight::algebra::rational::to_f64(&r);
        s.target_error = r;
    }
    if let Some(seed) = cli.seed {
        s.seed = seed;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<(), Outcome> {
    let cfg = load(cli)?;
    let out = report::Output::new(cli.out.clone(), command_name(&cli.command), cli.config.as_deref())?;
    match &cli.command {
        Command::Height { point } => report::height(&cfg, point.as_deref(), &out),
        Command::TheoremA { point, levels } => report::theorem_a(&cfg, point.as_deref(), *levels, &out),
        Command::TheoremB => report::theorem_b(&cfg, &out),
        Command::Reduce { point, gamma } => report::reduce(&cfg, point, gamma, &out),
        Command::Specialize { point, at } => report::specialize(&cfg, point, at, &out),
        Command::ClassifyInfinity { point, at } => report::classify_infinity(&cfg, point, at, &out),
        Command::NonsingularMultiple { point } => report::nonsingular_multiple(&cfg, point, &out),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Height { .. } => "height",
        Command::TheoremA { .. } => "theorem-a",
        Command::TheoremB => "theorem-b",
        Command::Reduce { .. } => "reduce",
        Command::Specialize { .. } => "specialize",
        Command::ClassifyInfinity { .. } => "classify-infinity",
        Command::NonsingularMultiple { .. } => "nonsingular-multiple",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(outcome) => {
            eprintln!("error: {outcome}");
            ExitCode::from(outcome.code())
        }
    }
}
