//! Parameter sweeps: seed-count sweeps ride a single incremental learning
//! run (each prefix of the arrival process is already an equilibrium of
//! the prefix game), while per-medium sweeps evaluate grid points
//! independently, in parallel when the `parallel` feature is enabled.
//! Rows always come out in grid order.

use crate::{parse_number, usage, CliResult};
use medium_select::analysis::{social_optimum, social_welfare_exact};
use medium_select::model::MediumParams;
use medium_select::solvers::SeedArrivals;
use medium_select::value::int;
use medium_select::{Backend, GameSetting, Rational};
use num_traits::Signed;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Above this seed count sweeps switch to the float backend unless
/// `--exact` is passed.
const EXACT_SWEEP_MAX_SEEDS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepVariable {
    /// Vary the number of seeds.
    Seeds,
    /// Vary the subscriber count of one (zero-based) medium.
    Subscribers(usize),
    /// Vary the cost of one (zero-based) medium.
    Cost(usize),
}

/// One grid coordinate.
#[derive(Clone, Debug)]
pub enum GridPoint {
    Count(u64),
    Cost(Rational),
}

#[derive(Clone, Debug)]
pub enum Grid {
    Counts(Vec<u64>),
    Costs(Vec<Rational>),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    pub force_exact: bool,
    pub allow_zero_subscribers: bool,
}

#[derive(Clone, Debug)]
pub struct SweepRow {
    pub varied: GridPoint,
    pub loads: Vec<u64>,
    pub welfare_nash: Rational,
    pub welfare_opt: Rational,
    pub poa: Option<Rational>,
}

/// Parses `K`, `N<j>` or `gamma<j>` with a one-based medium index.
pub fn parse_variable(text: &str, media: usize) -> CliResult<SweepVariable> {
    let text = text.trim();
    if text == "K" {
        return Ok(SweepVariable::Seeds);
    }
    let (kind, index): (_, fn(usize) -> SweepVariable) = if let Some(rest) = text.strip_prefix("gamma") {
        (rest, SweepVariable::Cost)
    } else if let Some(rest) = text.strip_prefix('N') {
        (rest, SweepVariable::Subscribers)
    } else {
        return Err(usage(format!(
            "--var `{text}` is not K, N<j> or gamma<j>"
        )));
    };
    let medium: usize = kind
        .parse()
        .map_err(|_| usage(format!("--var `{text}` needs a medium index, e.g. N2")))?;
    if medium == 0 || medium > media {
        return Err(usage(format!(
            "--var `{text}`: medium index must lie in 1..={media}"
        )));
    }
    Ok(index(medium - 1))
}

/// Builds the inclusive ascending grid for the variable.
pub fn build_grid(
    variable: &SweepVariable,
    from: &str,
    to: &str,
    step: Option<&str>,
) -> CliResult<Grid> {
    match variable {
        SweepVariable::Seeds | SweepVariable::Subscribers(_) => {
            let from: u64 = from
                .trim()
                .parse()
                .map_err(|_| usage(format!("--from `{from}` must be a nonnegative integer")))?;
            let to: u64 = to
                .trim()
                .parse()
                .map_err(|_| usage(format!("--to `{to}` must be a nonnegative integer")))?;
            let step: u64 = match step {
                Some(text) => text
                    .trim()
                    .parse()
                    .map_err(|_| usage(format!("--step `{text}` must be a positive integer")))?,
                None => 1,
            };
            if step == 0 {
                return Err(usage("--step must be positive"));
            }
            if from > to {
                return Err(usage("--from must not exceed --to"));
            }
            Ok(Grid::Counts((from..=to).step_by(step as usize).collect()))
        }
        SweepVariable::Cost(_) => {
            let from = parse_number(from)?;
            let to = parse_number(to)?;
            let step = match step {
                Some(text) => parse_number(text)?,
                None => int(1),
            };
            if !step.is_positive() {
                return Err(usage("--step must be positive"));
            }
            if from > to {
                return Err(usage("--from must not exceed --to"));
            }
            let mut values = Vec::new();
            let mut current = from;
            while current <= to {
                values.push(current.clone());
                current += &step;
            }
            Ok(Grid::Costs(values))
        }
    }
}

pub fn run_sweep(
    setting: &GameSetting,
    variable: &SweepVariable,
    grid: &Grid,
    options: SweepOptions,
) -> CliResult<Vec<SweepRow>> {
    match (variable, grid) {
        (SweepVariable::Seeds, Grid::Counts(counts)) => seed_sweep(setting, counts, options),
        (SweepVariable::Subscribers(medium), Grid::Counts(counts)) => {
            let points: CliResult<Vec<(GridPoint, GameSetting)>> = counts
                .iter()
                .map(|&n| {
                    let params = if n == 0 {
                        if !options.allow_zero_subscribers {
                            return Err(usage(
                                "the grid reaches N = 0; pass --allow-zero-subscribers",
                            ));
                        }
                        MediumParams::zero_subscribers(
                            setting.media()[*medium].cost().clone(),
                        )?
                    } else {
                        MediumParams::new(n, setting.media()[*medium].cost().clone())?
                    };
                    Ok((GridPoint::Count(n), setting.with_medium(*medium, params)?))
                })
                .collect();
            point_sweep(points?, options)
        }
        (SweepVariable::Cost(medium), Grid::Costs(costs)) => {
            let points: CliResult<Vec<(GridPoint, GameSetting)>> = costs
                .iter()
                .map(|cost| {
                    let subscribers = setting.media()[*medium].subscribers();
                    let params = if subscribers == 0 {
                        MediumParams::zero_subscribers(cost.clone())?
                    } else {
                        MediumParams::new(subscribers, cost.clone())?
                    };
                    Ok((GridPoint::Cost(cost.clone()), setting.with_medium(*medium, params)?))
                })
                .collect();
            point_sweep(points?, options)
        }
        _ => unreachable!("grid kind always matches the variable"),
    }
}

/// One incremental learning pass emits every row of a seed-count sweep.
fn seed_sweep(
    setting: &GameSetting,
    counts: &[u64],
    options: SweepOptions,
) -> CliResult<Vec<SweepRow>> {
    let Some(&max) = counts.last() else {
        return Ok(Vec::new());
    };
    let backend = backend_for(max, options);
    let horizon = setting.with_seeds(max);
    let mut arrivals = SeedArrivals::new(&horizon, backend);
    let mut rows = Vec::with_capacity(counts.len());
    let mut pending = counts.iter().peekable();
    for seeds in 0..=max {
        if seeds > 0 {
            arrivals.step();
        }
        while pending.next_if(|&&k| k == seeds).is_some() {
            rows.push(make_row(
                &setting.with_seeds(seeds),
                GridPoint::Count(seeds),
                arrivals.loads().to_vec(),
            )?);
        }
    }
    Ok(rows)
}

fn point_sweep(
    points: Vec<(GridPoint, GameSetting)>,
    options: SweepOptions,
) -> CliResult<Vec<SweepRow>> {
    let evaluate = |(varied, game): &(GridPoint, GameSetting)| -> CliResult<SweepRow> {
        let backend = backend_for(game.seeds(), options);
        let mut arrivals = SeedArrivals::new(game, backend);
        for _ in 0..game.seeds() {
            arrivals.step();
        }
        make_row(game, varied.clone(), arrivals.loads().to_vec())
    };

    #[cfg(feature = "parallel")]
    {
        points.par_iter().map(evaluate).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(evaluate).collect()
    }
}

fn backend_for(seeds: u64, options: SweepOptions) -> Backend {
    if !options.force_exact && seeds > EXACT_SWEEP_MAX_SEEDS {
        Backend::Float
    } else {
        Backend::Exact
    }
}

fn make_row(setting: &GameSetting, varied: GridPoint, loads: Vec<u64>) -> CliResult<SweepRow> {
    let welfare_nash = social_welfare_exact(setting, &loads);
    let (_, optimum) = social_optimum(setting)?;
    let welfare_opt = optimum.as_exact().expect("social optimum is exact").clone();
    let same_sign = (welfare_nash.is_positive() && welfare_opt.is_positive())
        || (welfare_nash.is_negative() && welfare_opt.is_negative());
    let poa = same_sign.then(|| &welfare_opt / &welfare_nash);
    Ok(SweepRow {
        varied,
        loads,
        welfare_nash,
        welfare_opt,
        poa,
    })
}
