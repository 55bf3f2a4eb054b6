//! The `lomax-eb` command line.
//!
//! Exit codes: 0 success, 1 output I/O failure, 2 usage error, 3 data
//! error, 4 numeric domain error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::dataset::{Dataset, DatasetError};
use crate::estimators::{EstimateReport, HyperBound, LossKind, SufficientStat};
use crate::gof::{ks_test, ks_test_fitted, FitMethod, KsResult};
use crate::lomax::{LomaxParams, Sample};
use crate::manifest::RunManifest;
use crate::report;
use crate::simulation::{
    run_table, SimCellResult, DEFAULT_C_VALUES, DEFAULT_N_VALUES, DEFAULT_REPS, TABLE_DESIGNS,
};

/// Hyperprior bounds used for the real-data table.
pub const DEFAULT_ESTIMATE_C: [f64; 5] = [0.25, 0.5, 0.75, 1.0, 1.25];
pub const DEFAULT_LAMBDA: f64 = 3.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Data(#[from] DatasetError),

    #[error(transparent)]
    Numeric(#[from] crate::Error),

    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// True when stdout was closed by the reader, e.g. `| head`.
    pub fn is_broken_pipe(&self) -> bool {
        matches!(self, CliError::Output { source, .. } if source.kind() == std::io::ErrorKind::BrokenPipe)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Output { .. } => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lomax-eb",
    version,
    about = "E-Bayesian estimation of the Lomax shape parameter"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// MLE, E-Bayes estimates and E-MSE for a dataset over a grid of c.
    Estimate(EstimateArgs),
    /// Monte Carlo tables of E-Bayes estimates and E-MSE.
    Simulate(SimulateArgs),
    /// Kolmogorov–Smirnov test of a dataset against a fitted Lomax model.
    Gof(GofArgs),
    /// x,y series for plotting densities and c-sweeps.
    PlotData(PlotDataArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Observation file: one positive number per line, `#` comments.
    #[arg(long, value_name = "PATH", conflicts_with = "embedded")]
    pub data: Option<PathBuf>,

    /// Use the embedded 21-point mobility dataset (the default).
    #[arg(long)]
    pub embedded: bool,
}

impl DataArgs {
    pub fn load(&self) -> Result<Dataset, DatasetError> {
        match &self.data {
            Some(path) => Dataset::from_file(path),
            None => Ok(Dataset::embedded()),
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub data: DataArgs,

    /// Known scale parameter.
    #[arg(long, default_value_t = DEFAULT_LAMBDA, value_parser = positive_f64)]
    pub lambda: f64,

    /// Hyperprior bound; repeat for several rows. Defaults to 0.25..1.25.
    ///
    /// Smaller c keeps the prior on b heavier-tailed and the estimate more
    /// robust; c ≥ T is permitted.
    #[arg(long = "c", value_parser = positive_f64)]
    pub c: Vec<f64>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Write to this file (plus a `.manifest.json` sidecar) instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    /// True shape; repeatable. Defaults to 2.5.
    #[arg(long, value_parser = positive_f64)]
    pub alpha: Vec<f64>,

    /// Known scale; repeatable. Defaults to 1.
    #[arg(long, value_parser = positive_f64)]
    pub lambda: Vec<f64>,

    /// Use the (α, λ) design of published table 1–6; repeatable. Overrides
    /// --alpha/--lambda.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
    pub table: Vec<u8>,

    /// Hyperprior bound; repeatable. Defaults to 0.5, 1, 1.5.
    #[arg(long = "c", value_parser = positive_f64)]
    pub c: Vec<f64>,

    /// Sample size; repeatable. Defaults to 20, 40, 60, 80, 100.
    #[arg(long = "n", value_parser = positive_usize)]
    pub n: Vec<usize>,

    #[arg(long, default_value_t = DEFAULT_REPS, value_parser = positive_usize)]
    pub reps: usize,

    #[arg(long, default_value_t = 1)]
    pub seed: u64,

    /// Worker threads (results do not depend on this).
    #[arg(long, value_parser = positive_usize)]
    pub threads: Option<usize>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    /// Output directory; one file per (α, λ) pairing. Stdout if omitted.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GofArgs {
    #[command(flatten)]
    pub data: DataArgs,

    #[arg(long, default_value_t = DEFAULT_LAMBDA, value_parser = positive_f64)]
    pub lambda: f64,

    /// Shape of the hypothesised model; fitted from the data if omitted.
    #[arg(long, value_parser = positive_f64, conflicts_with = "fit")]
    pub alpha: Option<f64>,

    /// How to fit α when --alpha is omitted.
    #[arg(long, default_value = "mle", value_parser = parse_fit)]
    pub fit: FitMethod,

    /// Significance level for the accept/reject statement.
    #[arg(long, default_value_t = 0.05)]
    pub level: f64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlotKind {
    PdfFamily,
    CSweepEstimates,
    CSweepEmse,
}

#[derive(Debug, Clone, Args)]
pub struct PlotDataArgs {
    #[arg(value_enum)]
    pub kind: PlotKind,

    #[command(flatten)]
    pub data: DataArgs,

    /// Shapes for pdf-family; repeatable. Defaults to 8, 10, 12.
    #[arg(long, value_parser = positive_f64)]
    pub alpha: Vec<f64>,

    /// Scales; repeatable for pdf-family. Defaults to 1 (pdf-family) or 3.
    #[arg(long, value_parser = positive_f64)]
    pub lambda: Vec<f64>,

    #[arg(long, default_value_t = 2.0, value_parser = positive_f64)]
    pub x_max: f64,

    #[arg(long, default_value_t = 0.01, value_parser = positive_f64)]
    pub x_step: f64,

    /// Explicit c values for the sweeps; overrides the range flags.
    #[arg(long = "c", value_parser = positive_f64)]
    pub c: Vec<f64>,

    #[arg(long, default_value_t = 0.25, value_parser = positive_f64)]
    pub c_min: f64,

    #[arg(long, default_value_t = 1.25, value_parser = positive_f64)]
    pub c_max: f64,

    #[arg(long, default_value_t = 0.01, value_parser = positive_f64)]
    pub c_step: f64,

    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("`{s}` must be a finite number greater than 0"))
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    let v: usize = s
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))?;
    if v >= 1 {
        Ok(v)
    } else {
        Err("must be at least 1".to_string())
    }
}

fn parse_fit(s: &str) -> Result<FitMethod, String> {
    s.parse()
}

/// Inclusive grid `start, start + step, …, ≤ stop`, computed by index.
pub fn linear_grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=count).map(|i| start + i as f64 * step).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateOutput {
    pub dataset: String,
    pub lambda: f64,
    pub n: usize,
    pub t_stat: f64,
    pub mle: f64,
    pub rows: Vec<EstimateReport>,
}

pub fn cmd_estimate(
    data: &Dataset,
    lambda: f64,
    c_values: &[f64],
) -> Result<EstimateOutput, CliError> {
    if c_values.is_empty() {
        return Err(CliError::Usage("at least one --c value is required".into()));
    }
    let sample = Sample::new(data.values.clone(), lambda)?;
    let stat = SufficientStat::from(&sample);
    let rows = c_values
        .iter()
        .map(|&c| Ok(EstimateReport::compute(stat, HyperBound::new(c)?)))
        .collect::<Result<Vec<_>, crate::Error>>()?;
    Ok(EstimateOutput {
        dataset: data.name.clone(),
        lambda,
        n: stat.n(),
        t_stat: stat.t(),
        mle: crate::estimators::mle(stat),
        rows,
    })
}

pub fn cmd_simulate(
    alpha: f64,
    lambda: f64,
    c_values: &[f64],
    n_values: &[usize],
    reps: usize,
    seed: u64,
) -> Result<Vec<SimCellResult>, CliError> {
    Ok(run_table(alpha, lambda, c_values, n_values, reps, seed)?)
}

pub fn cmd_gof(
    data: &Dataset,
    lambda: f64,
    alpha: Option<f64>,
    fit: FitMethod,
) -> Result<KsResult, CliError> {
    Ok(match alpha {
        Some(alpha) => ks_test(&data.values, LomaxParams::new(alpha, lambda)?)?,
        None => ks_test_fitted(&data.values, lambda, fit)?,
    })
}

/// Renders the requested series as CSV.
pub fn cmd_plot_data(args: &PlotDataArgs) -> Result<String, CliError> {
    match args.kind {
        PlotKind::PdfFamily => {
            let alphas = non_empty_or(&args.alpha, &[8.0, 10.0, 12.0]);
            let lambdas = non_empty_or(&args.lambda, &[1.0]);
            let xs = linear_grid(0.0, args.x_max, args.x_step);
            let mut rows = Vec::new();
            for &lambda in &lambdas {
                for &alpha in &alphas {
                    let params = LomaxParams::new(alpha, lambda)?;
                    for &x in &xs {
                        let y = params.pdf(x)?;
                        rows.push(vec![
                            alpha.to_string(),
                            lambda.to_string(),
                            x.to_string(),
                            y.to_string(),
                        ]);
                    }
                }
            }
            Ok(report::series_csv(&["alpha", "lambda", "x", "y"], rows))
        }
        PlotKind::CSweepEstimates | PlotKind::CSweepEmse => {
            if args.lambda.len() > 1 {
                return Err(CliError::Usage(
                    "c-sweeps take a single --lambda".to_string(),
                ));
            }
            let lambda = args.lambda.first().copied().unwrap_or(DEFAULT_LAMBDA);
            let data = args.data.load()?;
            let cs = if args.c.is_empty() {
                if args.c_max < args.c_min {
                    return Err(CliError::Usage("--c-max must be ≥ --c-min".to_string()));
                }
                linear_grid(args.c_min, args.c_max, args.c_step)
            } else {
                args.c.clone()
            };
            let out = cmd_estimate(&data, lambda, &cs)?;
            let mut rows = Vec::new();
            for loss in LossKind::ALL {
                for r in &out.rows {
                    let y = match args.kind {
                        PlotKind::CSweepEstimates => r.eb[loss],
                        _ => r.emse[loss],
                    };
                    rows.push(vec![loss.to_string(), r.c.to_string(), y.to_string()]);
                }
            }
            Ok(report::series_csv(&["loss", "x", "y"], rows))
        }
    }
}

fn non_empty_or<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

fn write_output(out: Option<&Path>, body: &str, manifest: &RunManifest) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let err = |source| CliError::Output {
                path: path.to_path_buf(),
                source,
            };
            std::fs::write(path, body).map_err(err)?;
            manifest.write_sidecar(path).map_err(err)?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|source| CliError::Output {
                    path: PathBuf::from("<stdout>"),
                    source,
                })?;
        }
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialise") + "\n"
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Estimate(args) => run_estimate(&args),
        Command::Simulate(args) => run_simulate(&args),
        Command::Gof(args) => run_gof(&args),
        Command::PlotData(args) => {
            let body = cmd_plot_data(&args)?;
            let manifest = RunManifest::new("plot-data")
                .param("kind", args.kind)
                .param("alpha", &args.alpha)
                .param("lambda", &args.lambda)
                .param("x_max", args.x_max)
                .param("x_step", args.x_step)
                .param("c", &args.c)
                .param("c_min", args.c_min)
                .param("c_max", args.c_max)
                .param("c_step", args.c_step)
                .param("data", &args.data.data);
            write_output(args.out.as_deref(), &body, &manifest)
        }
    }
}

fn run_estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let data = args.data.load()?;
    let c_values = non_empty_or(&args.c, &DEFAULT_ESTIMATE_C);
    let out = cmd_estimate(&data, args.lambda, &c_values)?;
    eprintln!(
        "# dataset={} n={} lambda={} T={:.6} mle={:.6}",
        out.dataset, out.n, out.lambda, out.t_stat, out.mle
    );
    let body = match args.format {
        OutputFormat::Csv => report::estimate_csv(&out.rows),
        OutputFormat::Json => to_json(&out),
    };
    let manifest = RunManifest::new("estimate")
        .param("dataset", &data)
        .param("lambda", args.lambda)
        .param("c", &c_values);
    write_output(args.out.as_deref(), &body, &manifest)
}

fn run_simulate(args: &SimulateArgs) -> Result<(), CliError> {
    let designs: Vec<(f64, f64)> = if args.table.is_empty() {
        let alphas = non_empty_or(&args.alpha, &[2.5]);
        let lambdas = non_empty_or(&args.lambda, &[1.0]);
        alphas
            .iter()
            .flat_map(|&a| lambdas.iter().map(move |&l| (a, l)))
            .collect()
    } else {
        args.table
            .iter()
            .map(|&t| TABLE_DESIGNS[t as usize - 1])
            .collect()
    };
    let c_values = non_empty_or(&args.c, &DEFAULT_C_VALUES);
    let n_values = non_empty_or(&args.n, &DEFAULT_N_VALUES);

    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(threads) = args.threads {
            builder = builder.num_threads(threads);
        }
        builder
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start thread pool: {e}")))?
    };

    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Output {
            path: dir.clone(),
            source,
        })?;
    }

    for &(alpha, lambda) in &designs {
        let cells = pool
            .install(|| cmd_simulate(alpha, lambda, &c_values, &n_values, args.reps, args.seed))?;
        let body = match args.format {
            OutputFormat::Csv => report::simulation_csv(&cells),
            OutputFormat::Json => to_json(&cells),
        };
        let manifest = RunManifest::new("simulate")
            .param("alpha", alpha)
            .param("lambda", lambda)
            .param("c", &c_values)
            .param("n", &n_values)
            .param("reps", args.reps)
            .param("threads", args.threads)
            .with_seed(args.seed);
        match &args.out {
            Some(dir) => {
                let ext = match args.format {
                    OutputFormat::Csv => "csv",
                    OutputFormat::Json => "json",
                };
                let path = dir.join(simulation_file_name(alpha, lambda, ext));
                write_output(Some(&path), &body, &manifest)?;
                eprintln!("wrote {}", path.display());
            }
            None => {
                let body = if designs.len() > 1 {
                    format!("# alpha={alpha} lambda={lambda}\n{body}")
                } else {
                    body
                };
                write_output(None, &body, &manifest)?;
            }
        }
    }
    Ok(())
}

/// `sim_alpha-<α>_lambda-<λ>.<ext>`.
pub fn simulation_file_name(alpha: f64, lambda: f64, ext: &str) -> String {
    format!("sim_alpha-{alpha}_lambda-{lambda}.{ext}")
}

fn run_gof(args: &GofArgs) -> Result<(), CliError> {
    if !(args.level > 0.0 && args.level < 1.0) {
        return Err(CliError::Usage("--level must lie in (0, 1)".to_string()));
    }
    let data = args.data.load()?;
    let result = cmd_gof(&data, args.lambda, args.alpha, args.fit)?;
    let fit = match args.alpha {
        Some(_) => "given".to_string(),
        None => args.fit.to_string(),
    };
    let verdict = if result.rejects_at(args.level) {
        format!("reject H0 (Lomax fit) at level {}", args.level)
    } else {
        format!("cannot reject H0 (Lomax fit) at level {}", args.level)
    };
    let body = match args.format {
        OutputFormat::Csv => report::series_csv(
            &[
                "n", "alpha", "lambda", "fit", "d_stat", "p_value", "decision",
            ],
            [vec![
                result.n.to_string(),
                result.fitted.alpha().to_string(),
                result.fitted.lambda().to_string(),
                fit.clone(),
                result.d_stat.to_string(),
                result.p_value.to_string(),
                verdict.clone(),
            ]],
        ),
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct GofOutput<'a> {
                dataset: &'a str,
                fit: &'a str,
                level: f64,
                decision: &'a str,
                #[serde(flatten)]
                result: &'a KsResult,
            }
            to_json(&GofOutput {
                dataset: &data.name,
                fit: &fit,
                level: args.level,
                decision: &verdict,
                result: &result,
            })
        }
    };
    eprintln!(
        "# D={:.4} p={:.4} alpha={:.6} lambda={} ({fit}): {verdict}",
        result.d_stat,
        result.p_value,
        result.fitted.alpha(),
        result.fitted.lambda()
    );
    let manifest = RunManifest::new("gof")
        .param("dataset", &data)
        .param("lambda", args.lambda)
        .param("alpha", args.alpha)
        .param("fit", args.fit)
        .param("level", args.level);
    write_output(args.out.as_deref(), &body, &manifest)
}
