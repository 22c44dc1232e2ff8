//! Command-line surface: parse a game setting, run solvers or analysis,
//! and emit deterministic JSON or CSV.
//!
//! Exit codes: `0` success, `2` usage or validation failure, `3` a scan
//! exceeded its enumeration budget. The environment variable
//! `MEDIUM_SELECT_BUDGET` overrides the brute-force budget.

pub mod render;
pub mod sweep;

use clap::{Args, Parser, Subcommand, ValueEnum};
use medium_select::analysis::{
    asymptotic_prediction, equilibrium_bound, price_of_anarchy, tight_instance,
};
use medium_select::schema::SettingDoc;
use medium_select::solvers::{
    best_response_dynamics, brute_force_equilibria_with_budget, enumerate_equilibria,
    order_learning, scaling_descent, sd_max, DEFAULT_ENUMERATION_BUDGET,
};
use medium_select::value::parse_rational;
use medium_select::{Backend, Error, GameSetting, LoadVector, Rational};
use std::io::Write;
use std::path::PathBuf;

/// A failed run: what to print on stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

pub type CliResult<T> = Result<T, Failure>;

pub fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        let code = match error {
            Error::EnumerationBudget { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: error.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "medium-select",
    version,
    about = "Equilibria, welfare and parameter sweeps for the social-medium selection game"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute one equilibrium load vector and its potential
    Solve {
        #[command(flatten)]
        input: SettingInput,
        /// Algorithm: arrival learning, bounded steepest descent, scaling
        /// descent, exhaustive scan, or best-response dynamics
        #[arg(long, value_enum, default_value_t)]
        algo: Algo,
        /// Start load for --algo br, comma-separated counts summing to K
        /// (defaults to all seeds on medium 1)
        #[arg(long)]
        start: Option<String>,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// List the complete set of equilibrium load vectors
    Enumerate {
        #[command(flatten)]
        input: SettingInput,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Run the arrival learning process and print its full trace
    Learn {
        #[command(flatten)]
        input: SettingInput,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Worst-equilibrium welfare, social optimum and price of anarchy
    Welfare {
        #[command(flatten)]
        input: SettingInput,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Large-K prediction: minimal-cost group, plateaus, market shares
    Predict {
        #[command(flatten)]
        input: SettingInput,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Evaluate equilibria along a parameter grid, one row per point
    Sweep {
        #[command(flatten)]
        input: SettingInput,
        /// What to vary: K, N<j> or gamma<j> with a one-based medium index
        #[arg(long)]
        var: String,
        /// First grid value (integer, or p/q / decimal for gamma)
        #[arg(long)]
        from: String,
        /// Last grid value, inclusive
        #[arg(long)]
        to: String,
        /// Grid step, default 1
        #[arg(long)]
        step: Option<String>,
        /// Keep exact arithmetic even when K exceeds 100000
        #[arg(long)]
        exact: bool,
        #[command(flatten)]
        output: OutputOptions,
    },
    /// Generate the symmetric setting attaining the equilibrium-count
    /// bound and verify it
    Tight {
        /// Number of media J (at least 2); the setting gets floor(J/2) seeds
        #[arg(long)]
        media: usize,
        /// Shared subscriber count
        #[arg(long, default_value_t = 5)]
        subscribers: u64,
        /// Shared cost (integer, p/q or decimal)
        #[arg(long, default_value = "1")]
        gamma: String,
        #[command(flatten)]
        output: OutputOptions,
    },
}

#[derive(Args)]
pub struct SettingInput {
    /// Path to a JSON setting file: {"K":3,"media":[{"N":100,"gamma":2},...]}
    pub path: Option<PathBuf>,
    /// Inline JSON setting instead of a file
    #[arg(long, conflicts_with = "path")]
    pub inline: Option<String>,
    /// Admit media with N = 0 subscribers (boundary studies)
    #[arg(long)]
    pub allow_zero_subscribers: bool,
}

impl SettingInput {
    pub fn load(&self) -> CliResult<GameSetting> {
        let text = match (&self.path, &self.inline) {
            (Some(path), None) => std::fs::read_to_string(path).map_err(|e| Failure {
                code: 2,
                message: format!("cannot read {}: {e}", path.display()),
            })?,
            (None, Some(inline)) => inline.clone(),
            _ => return Err(usage("provide a setting file path or --inline JSON")),
        };
        let doc = SettingDoc::parse(&text)?;
        Ok(doc.into_setting(self.allow_zero_subscribers)?)
    }
}

#[derive(Args)]
pub struct OutputOptions {
    /// Output format
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Default, PartialEq, Eq)]
pub enum Algo {
    /// Arrival learning (O(KJ))
    #[default]
    Order,
    /// Bounded steepest descent (O(KJ^2))
    Sd,
    /// Scaling steepest descent (O(J^3 log(K/J)))
    Scaling,
    /// Exhaustive domain scan, bounded by the enumeration budget
    Brute,
    /// Best-response dynamics from --start
    Br,
}

impl Algo {
    fn label(self) -> &'static str {
        match self {
            Algo::Order => "order",
            Algo::Sd => "sd",
            Algo::Scaling => "scaling",
            Algo::Brute => "brute",
            Algo::Br => "br",
        }
    }
}

/// The brute-force budget, overridable through `MEDIUM_SELECT_BUDGET`.
pub fn enumeration_budget() -> CliResult<u128> {
    match std::env::var("MEDIUM_SELECT_BUDGET") {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| usage(format!("MEDIUM_SELECT_BUDGET must be an integer, got `{text}`"))),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ENUMERATION_BUDGET),
        Err(e) => Err(usage(format!("MEDIUM_SELECT_BUDGET: {e}"))),
    }
}

/// Parses a grid or cost literal: integer, `p/q`, or decimal.
pub fn parse_number(text: &str) -> CliResult<Rational> {
    let trimmed = text.trim();
    if let Some(value) = parse_rational(trimmed) {
        return Ok(value);
    }
    if let Some((whole, fraction)) = trimmed.split_once('.') {
        let digits = format!("{whole}{fraction}");
        if let Some(scaled) = parse_rational(&digits) {
            let denom = medium_select::value::int(10).pow(fraction.len() as i32);
            return Ok(scaled / denom);
        }
    }
    Err(usage(format!("`{text}` is not a number (use an integer, p/q or a decimal)")))
}

fn parse_start(text: &str, setting: &GameSetting) -> CliResult<LoadVector> {
    let loads: Result<Vec<u64>, _> = text.split(',').map(|part| part.trim().parse()).collect();
    let loads =
        loads.map_err(|_| usage(format!("--start `{text}` must be comma-separated counts")))?;
    let load = LoadVector::new(loads);
    setting.check_load(&load)?;
    Ok(load)
}

pub fn run(cli: Cli, out: &mut impl Write) -> CliResult<()> {
    match cli.command {
        Command::Solve {
            input,
            algo,
            start,
            output,
        } => {
            let setting = input.load()?;
            if start.is_some() && algo != Algo::Br {
                return Err(usage("--start applies to --algo br only"));
            }
            let load = match algo {
                Algo::Order => order_learning(&setting, Backend::Exact).final_load,
                Algo::Sd => sd_max(&setting),
                Algo::Scaling => scaling_descent(&setting)?,
                Algo::Brute => {
                    let set = brute_force_equilibria_with_budget(&setting, enumeration_budget()?)?;
                    set.members()[0].clone()
                }
                Algo::Br => {
                    let from = match &start {
                        Some(text) => parse_start(text, &setting)?,
                        None => {
                            let mut loads = vec![0u64; setting.media_count()];
                            loads[0] = setting.seeds();
                            LoadVector::new(loads)
                        }
                    };
                    best_response_dynamics(&setting, &from)?
                }
            };
            let potential = setting.potential_exact(&load)?;
            render::solve(out, output.format, algo.label(), &load, &potential)
        }
        Command::Enumerate { input, output } => {
            let setting = input.load()?;
            let set = enumerate_equilibria(&setting);
            render::enumerate(out, output.format, &set)
        }
        Command::Learn { input, output } => {
            let setting = input.load()?;
            let trace = order_learning(&setting, Backend::Exact);
            render::learn(out, output.format, &trace)
        }
        Command::Welfare { input, output } => {
            let setting = input.load()?;
            let report = price_of_anarchy(&setting)?;
            render::welfare(out, output.format, &report)
        }
        Command::Predict { input, output } => {
            let setting = input.load()?;
            let prediction = asymptotic_prediction(&setting)?;
            render::predict(out, output.format, setting.media_count(), &prediction)
        }
        Command::Sweep {
            input,
            var,
            from,
            to,
            step,
            exact,
            output,
        } => {
            let setting = input.load()?;
            let variable = sweep::parse_variable(&var, setting.media_count())?;
            let grid = sweep::build_grid(&variable, &from, &to, step.as_deref())?;
            let rows = sweep::run_sweep(
                &setting,
                &variable,
                &grid,
                sweep::SweepOptions {
                    force_exact: exact,
                    allow_zero_subscribers: input.allow_zero_subscribers,
                },
            )?;
            render::sweep(out, output.format, setting.media_count(), &rows)
        }
        Command::Tight {
            media,
            subscribers,
            gamma,
            output,
        } => {
            let cost = parse_number(&gamma)?;
            let setting = tight_instance(media, subscribers, cost)?;
            let set = enumerate_equilibria(&setting);
            let bound = equilibrium_bound(media);
            let verified = set.len() as u128 == bound
                && set.members().iter().all(|load| load.iter().all(|&l| l <= 1));
            render::tight(
                out,
                output.format,
                &SettingDoc::from_setting(&setting),
                bound,
                &set,
                verified,
            )
        }
    }
}
