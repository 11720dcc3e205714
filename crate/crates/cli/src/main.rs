use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use egl::datasets::{self, ColumnSelector, Dataset};
use egl::estimation::{self, FitOptions, InformationKind};
use egl::gof::{self, GofReport};
use egl::{Egl, Error, Family, SampleMethod};

mod report;

use report::{DatasetInfo, Envelope, EvalRow};

#[derive(Debug, Parser)]
#[command(
    name = "egl",
    version,
    about = "Extended Generalized Lindley distribution toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit one family by maximum likelihood.
    Fit(FitArgs),
    /// Fit several families and rank them by AIC.
    Compare(CompareArgs),
    /// Tabulate pdf, cdf, survival, hazard, quantile or mean residual life.
    Eval(EvalArgs),
    /// Draw variates, one per line.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Which {
    Pdf,
    Cdf,
    Survival,
    Hazard,
    Quantile,
    Mrl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Inverse,
    Transform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Information {
    Observed,
    Expected,
}

#[derive(Debug, Clone, Args, Serialize)]
#[group(required = true, multiple = false, id = "source")]
struct DataSource {
    /// Embedded dataset.
    #[arg(long, value_parser = ["bladder", "bank"])]
    dataset: Option<String>,
    /// CSV file with one observation per row.
    #[arg(long)]
    data: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct Common {
    /// Master seed; recorded in every report.
    #[arg(long, env = "EGL_SEED", default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize)]
struct FitArgs {
    #[command(flatten)]
    source: DataSource,
    /// CSV column (index or header name).
    #[arg(long, default_value = "0")]
    column: String,
    #[arg(long, default_value = "egl")]
    family: String,
    /// Confidence level of the Wald intervals.
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[arg(long, value_enum, default_value_t = Information::Observed)]
    information: Information,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
struct CompareArgs {
    #[command(flatten)]
    source: DataSource,
    #[arg(long, default_value = "0")]
    column: String,
    /// Comma-separated family tags.
    #[arg(long, default_value = "egl,le,pl,ngld,lindley,exponential")]
    family: String,
    #[arg(long, default_value_t = 0.95)]
    level: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
struct EvalArgs {
    /// EGL parameters `lambda,theta,alpha`.
    #[arg(long)]
    params: String,
    #[arg(long, value_enum, default_value_t = Which::Pdf)]
    which: Which,
    /// Evaluation grid `start:stop:count` (probability levels for quantile).
    #[arg(long)]
    grid: String,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
struct SampleArgs {
    /// EGL parameters `lambda,theta,alpha`.
    #[arg(long)]
    params: String,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Method::Inverse)]
    method: Method,
    #[command(flatten)]
    common: Common,
}

/// Failure with its process exit status.
struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (kind, code) = match &e {
            Error::Domain(_) => ("domain", 2),
            Error::UnknownFamily(_) => ("usage", 2),
            Error::InvalidData(_) | Error::InvalidDataAt { .. } => ("invalid_data", 3),
            Error::Parse { .. } => ("parse", 3),
            Error::UnknownDataset(_) => ("unknown_dataset", 3),
            Error::Io(_) => ("io", 3),
            Error::NonConvergence { .. } => ("non_convergence", 4),
            Error::SingularMatrix => ("singular_matrix", 4),
        };
        Failure {
            kind,
            message: e.to_string(),
            code,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        kind: "usage",
        message: message.into(),
        code: 2,
    }
}

fn emit_error(f: &Failure) {
    let obj = serde_json::json!({
        "error": { "kind": f.kind, "message": f.message, "exit_code": f.code }
    });
    eprintln!("{obj}");
}

fn load(source: &DataSource, column: &str) -> Result<Dataset, Failure> {
    match (&source.dataset, &source.data) {
        (Some(name), None) => Ok(datasets::builtin(name)?),
        (None, Some(path)) => {
            let sel: ColumnSelector = column.parse()?;
            Ok(datasets::load_csv(path, &sel)?)
        }
        _ => Err(usage("exactly one of --dataset or --data is required")),
    }
}

fn parse_params(s: &str) -> Result<Egl, Failure> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "--params expects three comma-separated numbers, got `{s}`"
            ))
        })?;
    if v.len() != 3 {
        return Err(usage(format!(
            "--params expects lambda,theta,alpha, got {} value(s)",
            v.len()
        )));
    }
    Ok(Egl::new(v[0], v[1], v[2])?)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || usage(format!("--grid expects start:stop:count, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !stop.is_finite() || stop < start {
        return Err(usage(format!(
            "--grid needs finite start ≤ stop and count ≥ 1, got `{s}`"
        )));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let step = (stop - start) / (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                stop
            } else {
                start + step * i as f64
            }
        })
        .collect())
}

fn parse_families(s: &str) -> Result<Vec<Family>, Failure> {
    let tags: Vec<&str> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    if tags.is_empty() {
        return Err(usage("--family list is empty"));
    }
    Ok(tags.iter().map(|t| t.parse()).collect::<Result<_, _>>()?)
}

fn write_output(common: &Common, text: &str) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::from(Error::Io(format!("{}: {e}", path.display())))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::from(Error::Io(e.to_string())))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn fit_options(seed: u64, level: f64, information: Information) -> FitOptions {
    FitOptions {
        seed,
        level,
        information: match information {
            Information::Observed => InformationKind::Observed,
            Information::Expected => InformationKind::Expected,
        },
        ..FitOptions::default()
    }
}

fn cmd_fit(args: &FitArgs) -> Result<(), Failure> {
    let family: Family = args.family.parse()?;
    let data = load(&args.source, &args.column)?;
    let options = fit_options(args.common.seed, args.level, args.information);
    let fit = estimation::fit(family, data.values(), &options)?;
    let gof = GofReport::evaluate(&fit.model, data.values())?;
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&Envelope::new(
            "fit",
            args.common.seed,
            args,
            Some(DatasetInfo::from(&data)),
            report::FitReport {
                fit: &fit,
                gof: &gof,
            },
        )),
        Format::Csv => report::gof_csv(&[(&gof, fit.converged)]),
    };
    write_output(&args.common, &text)?;
    if !fit.converged {
        return Err(Failure {
            kind: "non_convergence",
            message: format!(
                "no stationary point certified for {}; best value reported (score norm {:e})",
                family.label(),
                fit.score_norm
            ),
            code: 4,
        });
    }
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<(), Failure> {
    let families = parse_families(&args.family)?;
    let data = load(&args.source, &args.column)?;
    let options = fit_options(args.common.seed, args.level, Information::Observed);
    let rows = gof::compare(&families, data.values(), &options)?;
    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&Envelope::new(
            "compare",
            args.common.seed,
            args,
            Some(DatasetInfo::from(&data)),
            &rows,
        )),
        Format::Csv => {
            let ok: Vec<(&GofReport, bool)> = rows
                .iter()
                .filter_map(|r| Some((r.report.as_ref()?, r.fit.as_ref()?.converged)))
                .collect();
            report::gof_csv(&ok)
        }
    };
    write_output(&args.common, &text)
}

fn cmd_eval(args: &EvalArgs) -> Result<(), Failure> {
    let d = parse_params(&args.params)?;
    let grid = parse_grid(&args.grid)?;
    let rows = grid
        .iter()
        .map(|&x| {
            let value = match args.which {
                Which::Pdf => d.pdf(x),
                Which::Cdf => d.cdf(x),
                Which::Survival => d.survival(x),
                Which::Hazard => d.hazard(x),
                Which::Quantile => d.quantile(x),
                Which::Mrl => d.mean_residual_life(x),
            }?;
            Ok(EvalRow { x, value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let text = match args.common.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&Envelope::new("eval", args.common.seed, args, None, &rows)),
        Format::Csv => report::eval_csv(
            args.which
                .to_possible_value()
                .expect("no skipped variants")
                .get_name(),
            &rows,
        ),
    };
    write_output(&args.common, &text)
}

fn cmd_sample(args: &SampleArgs) -> Result<(), Failure> {
    let d = parse_params(&args.params)?;
    let method = match args.method {
        Method::Inverse => SampleMethod::InverseTransform,
        Method::Transform => SampleMethod::LindleyTransform,
    };
    let values = d.sample(args.n, args.common.seed, method)?;
    let text = match args.common.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&Envelope::new(
            "sample",
            args.common.seed,
            args,
            None,
            &values,
        )),
        Format::Csv => values.iter().map(|v| format!("{v}\n")).collect(),
    };
    write_output(&args.common, &text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit_error(&usage(e.to_string().trim_end()));
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Fit(a) => cmd_fit(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            emit_error(&f);
            ExitCode::from(f.code)
        }
    }
}
