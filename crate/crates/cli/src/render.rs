//! Deterministic output rendering. JSON uses exact `p/q` strings for
//! rationals; CSV renders them as decimals with twelve significant digits.
//! Identical inputs always produce byte-identical output.

use crate::sweep::{GridPoint, SweepRow};
use crate::{CliResult, Failure, Format};
use medium_select::analysis::{AsymptoticPrediction, WelfareReport};
use medium_select::schema::SettingDoc;
use medium_select::solvers::{EquilibriumSet, LearningTrace};
use medium_select::value::{rational_to_f64, Rational, Value};
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Twelve significant digits in plain decimal notation.
pub fn dec12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    // The exponent from scientific notation is exact where log10 can land
    // a hair under an integer.
    let scientific = format!("{:e}", x.abs());
    let exponent: i32 = scientific
        .split('e')
        .nth(1)
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    let decimals = (11 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn rational_csv(value: &Rational) -> String {
    dec12(rational_to_f64(value))
}

pub fn value_csv(value: &Value) -> String {
    dec12(value.to_f64())
}

fn write_all(out: &mut impl Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| Failure {
        code: 2,
        message: format!("cannot write output: {e}"),
    })
}

fn json_line<T: Serialize>(out: &mut impl Write, doc: &T) -> CliResult<()> {
    let text = serde_json::to_string(doc).expect("output documents always serialize");
    write_all(out, &text)?;
    write_all(out, "\n")
}

fn load_headers(media: usize) -> String {
    (1..=media)
        .map(|j| format!("ell_{j}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn load_fields(loads: &[u64]) -> String {
    loads
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Serialize)]
struct SolveDoc<'a> {
    algo: &'a str,
    loads: &'a [u64],
    potential: String,
}

pub fn solve(
    out: &mut impl Write,
    format: Format,
    algo: &str,
    load: &medium_select::LoadVector,
    potential: &Rational,
) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &SolveDoc {
                algo,
                loads: load,
                potential: potential.to_string(),
            },
        ),
        Format::Csv => {
            let mut text = format!("algo,{},potential\n", load_headers(load.len()));
            text.push_str(&format!(
                "{algo},{},{}\n",
                load_fields(load),
                rational_csv(potential)
            ));
            write_all(out, &text)
        }
    }
}

#[derive(Serialize)]
struct EnumerateDoc {
    count: usize,
    potential: String,
    equilibria: Vec<Vec<u64>>,
}

pub fn enumerate(out: &mut impl Write, format: Format, set: &EquilibriumSet) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &EnumerateDoc {
                count: set.len(),
                potential: set.potential().to_string(),
                equilibria: set.members().iter().map(|l| l.to_vec()).collect(),
            },
        ),
        Format::Csv => {
            let media = set.members()[0].len();
            let mut text = format!("{},potential\n", load_headers(media));
            for member in set.members() {
                text.push_str(&format!(
                    "{},{}\n",
                    load_fields(member),
                    value_csv(set.potential())
                ));
            }
            write_all(out, &text)
        }
    }
}

#[derive(Serialize)]
struct LearnDoc {
    chosen: Vec<usize>,
    marginals: Vec<String>,
    #[serde(rename = "final")]
    final_load: Vec<u64>,
}

pub fn learn(out: &mut impl Write, format: Format, trace: &LearningTrace) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &LearnDoc {
                chosen: trace.chosen.iter().map(|&j| j + 1).collect(),
                marginals: trace.marginals.iter().map(Value::to_string).collect(),
                final_load: trace.final_load.to_vec(),
            },
        ),
        Format::Csv => {
            let mut text = "step,chosen,marginal\n".to_string();
            for (step, (choice, marginal)) in
                trace.chosen.iter().zip(&trace.marginals).enumerate()
            {
                text.push_str(&format!(
                    "{},{},{}\n",
                    step + 1,
                    choice + 1,
                    value_csv(marginal)
                ));
            }
            write_all(out, &text)
        }
    }
}

#[derive(Serialize)]
struct WelfareDoc {
    nash_load: Vec<u64>,
    nash_welfare: String,
    optimum_load: Vec<u64>,
    optimum_welfare: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    poa: Option<String>,
}

pub fn welfare(out: &mut impl Write, format: Format, report: &WelfareReport) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &WelfareDoc {
                nash_load: report.nash_load.to_vec(),
                nash_welfare: report.nash_welfare.to_string(),
                optimum_load: report.optimum_load.to_vec(),
                optimum_welfare: report.optimum_welfare.to_string(),
                poa: report.poa.as_ref().map(Value::to_string),
            },
        ),
        Format::Csv => {
            let media = report.nash_load.len();
            let mut text = format!("{},welfare_nash,welfare_opt,poa\n", load_headers(media));
            text.push_str(&format!(
                "{},{},{},{}\n",
                load_fields(&report.nash_load),
                value_csv(&report.nash_welfare),
                value_csv(&report.optimum_welfare),
                report.poa.as_ref().map(value_csv).unwrap_or_default()
            ));
            write_all(out, &text)
        }
    }
}

#[derive(Serialize)]
struct PredictDoc {
    gamma_min: String,
    #[serde(rename = "G")]
    group: Vec<usize>,
    plateaus: BTreeMap<u32, u64>,
    shares: BTreeMap<u32, String>,
}

pub fn predict(
    out: &mut impl Write,
    format: Format,
    media: usize,
    prediction: &AsymptoticPrediction,
) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &PredictDoc {
                gamma_min: prediction.gamma_min.to_string(),
                group: prediction.min_cost_group.iter().map(|&j| j + 1).collect(),
                plateaus: prediction
                    .plateaus
                    .iter()
                    .map(|(&j, &p)| (j as u32 + 1, p))
                    .collect(),
                shares: prediction
                    .shares
                    .iter()
                    .map(|(&j, share)| (j as u32 + 1, share.to_string()))
                    .collect(),
            },
        ),
        Format::Csv => {
            let mut text = "medium,min_cost_group,plateau,share\n".to_string();
            for j in 0..media {
                let in_group = prediction.min_cost_group.contains(&j);
                let plateau = prediction
                    .plateaus
                    .get(&j)
                    .map(|p| p.to_string())
                    .unwrap_or_default();
                let share = prediction
                    .shares
                    .get(&j)
                    .map(rational_csv)
                    .unwrap_or_default();
                text.push_str(&format!("{},{in_group},{plateau},{share}\n", j + 1));
            }
            write_all(out, &text)
        }
    }
}

#[derive(Serialize)]
struct TightDoc<'a> {
    setting: &'a SettingDoc,
    bound: u128,
    count: usize,
    equilibria: Vec<Vec<u64>>,
    verified: bool,
}

pub fn tight(
    out: &mut impl Write,
    format: Format,
    setting: &SettingDoc,
    bound: u128,
    set: &EquilibriumSet,
    verified: bool,
) -> CliResult<()> {
    match format {
        Format::Json => json_line(
            out,
            &TightDoc {
                setting,
                bound,
                count: set.len(),
                equilibria: set.members().iter().map(|l| l.to_vec()).collect(),
                verified,
            },
        ),
        Format::Csv => enumerate(out, Format::Csv, set),
    }
}

#[derive(Serialize)]
struct SweepRowDoc {
    varied: String,
    loads: Vec<u64>,
    welfare_nash: String,
    welfare_opt: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    poa: Option<String>,
}

pub fn sweep(
    out: &mut impl Write,
    format: Format,
    media: usize,
    rows: &[SweepRow],
) -> CliResult<()> {
    match format {
        Format::Json => {
            let docs: Vec<SweepRowDoc> = rows
                .iter()
                .map(|row| SweepRowDoc {
                    varied: row.varied.json_text(),
                    loads: row.loads.clone(),
                    welfare_nash: row.welfare_nash.to_string(),
                    welfare_opt: row.welfare_opt.to_string(),
                    poa: row.poa.as_ref().map(Rational::to_string),
                })
                .collect();
            json_line(out, &docs)
        }
        Format::Csv => {
            let mut text = format!("varied,{},welfare_nash,welfare_opt,poa\n", load_headers(media));
            for row in rows {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    row.varied.csv_text(),
                    load_fields(&row.loads),
                    rational_csv(&row.welfare_nash),
                    rational_csv(&row.welfare_opt),
                    row.poa.as_ref().map(rational_csv).unwrap_or_default()
                ));
            }
            write_all(out, &text)
        }
    }
}

impl GridPoint {
    pub fn json_text(&self) -> String {
        match self {
            GridPoint::Count(n) => n.to_string(),
            GridPoint::Cost(r) => r.to_string(),
        }
    }

    pub fn csv_text(&self) -> String {
        match self {
            GridPoint::Count(n) => n.to_string(),
            GridPoint::Cost(r) => rational_csv(r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use medium_select::value::ratio;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(dec12(0.0), "0");
        assert_eq!(dec12(-9954.0), "-9954.00000000");
        assert_eq!(dec12(5.0 / 9.0), "0.555555555556");
        assert_eq!(dec12(1000.0), "1000.00000000");
        assert_eq!(dec12(6.0), "6.00000000000");
    }

    #[test]
    fn dec12_round_trips_through_parsing() {
        for text in ["-9954.00000000", "0.555555555556", "0", "177.333333333"] {
            let parsed: f64 = text.parse().unwrap();
            assert_eq!(dec12(parsed), text, "`{text}`");
        }
    }

    #[test]
    fn rationals_render_as_decimals_in_csv() {
        assert_eq!(rational_csv(&ratio(5, 9)), "0.555555555556");
        assert_eq!(rational_csv(&ratio(-9954, 1)), "-9954.00000000");
    }
}
