use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use bellvol::models::{ModelDocument, PiecewiseNode};
use bellvol::{
    default_samples, estimate_volume, find_crossover, lambda_box_model, lambda_range, linspace, pr_box_model,
    search_max_violation, singlet_model, sweep_lambda, validate_model, CorrelationModel, Error, Scenario, ScenarioName,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::record::RunRecord;
use crate::spec::ModelSpec;
use crate::table;

#[derive(Debug, Parser)]
#[command(name = "bellvol", version, about = "Volume of violation of CHSH and 3322 Bell inequalities")]
pub struct Cli {
    /// Worker threads for the estimator (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Read angle arguments (lambda, --lambda-min/max, --tol) in degrees; records stay in radians.
    #[arg(long, global = true)]
    pub degrees: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    Chsh,
    #[value(name = "3322")]
    I3322,
}

impl ScenarioArg {
    fn scenario(self) -> Scenario {
        match self {
            Self::Chsh => Scenario::chsh(),
            Self::I3322 => Scenario::i3322(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReferenceArg {
    Singlet,
    Pr,
}

#[derive(Debug, Args)]
pub struct Sampling {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    /// Monte Carlo samples (default 10^6 for chsh, 10^7 for 3322).
    #[arg(long)]
    pub samples: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Relative volume of violation of one model.
    Estimate {
        /// singlet | pr | lambda:<angle> | file:<path>
        #[arg(long)]
        model: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Lambda-box volume over a lambda grid (common random numbers), written as CSV.
    Sweep {
        /// Default pi/6 (30 degrees).
        #[arg(long)]
        lambda_min: Option<f64>,
        /// Default 4pi/9 (80 degrees).
        #[arg(long)]
        lambda_max: Option<f64>,
        #[arg(long, default_value_t = 45)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Lambda at which the lambda-box volume crosses a reference model's.
    Crossover {
        #[arg(long, value_enum)]
        reference: ReferenceArg,
        /// Bracket width at which bisection stops (default 0.01 rad).
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        lambda_min: Option<f64>,
        #[arg(long)]
        lambda_max: Option<f64>,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Largest functional value by multi-start hill climbing.
    Maxviol {
        #[arg(long)]
        model: String,
        #[arg(long, value_enum)]
        scenario: ScenarioArg,
        #[arg(long, default_value_t = 50)]
        restarts: u64,
        #[arg(long, default_value_t = 2000)]
        iterations: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Structural checks on a model file.
    Validate { path: PathBuf },
}

/// Failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    /// Record to print despite the failure (validation reports).
    pub record: Option<RunRecord>,
}

impl CliError {
    pub const VALIDATION: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const RUNTIME: u8 = 3;

    fn usage(message: impl Into<String>) -> Self {
        Self { code: Self::USAGE, message: message.into(), record: None }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self { code: Self::RUNTIME, message: message.into(), record: None }
    }
}

/// Maps core errors on user input to exit 2, numerical failures to exit 3.
fn classify(err: Error) -> CliError {
    match err {
        Error::Parameter(_) | Error::Domain { .. } | Error::Parse(_) | Error::Validation(_) | Error::Io(_) => {
            CliError::usage(err.to_string())
        }
        Error::Bracketing { .. } => CliError::runtime(err.to_string()),
    }
}

fn model_from_arg(spec: &str, degrees: bool) -> Result<CorrelationModel, CliError> {
    let spec = ModelSpec::parse(spec, degrees).map_err(CliError::usage)?;
    spec.build().map_err(classify)
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

fn lambda_bounds(min: Option<f64>, max: Option<f64>, degrees: bool) -> Result<(f64, f64), CliError> {
    let (lo, hi) = lambda_range::<f64>();
    let min = min.map_or(lo, |x| angle(x, degrees));
    let max = max.map_or(hi, |x| angle(x, degrees));
    let slack = 1e-12;
    if !(min >= lo - slack && max <= hi + slack && min < max) {
        return Err(CliError::usage(format!(
            "lambda range [{min}, {max}] must satisfy pi/6 <= min < max <= 4pi/9 ([{lo}, {hi}])"
        )));
    }
    Ok((min.max(lo), max.min(hi)))
}

fn samples_for(sampling: &Sampling, scenario: &Scenario) -> Result<u64, CliError> {
    let n = sampling.samples.unwrap_or_else(|| default_samples(scenario));
    if n == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    Ok(n)
}

fn params(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
}

fn reference_model(r: ReferenceArg) -> CorrelationModel {
    match r {
        ReferenceArg::Singlet => singlet_model(),
        ReferenceArg::Pr => pr_box_model(),
    }
}

fn scenario_label(s: ScenarioArg) -> String {
    match s {
        ScenarioArg::Chsh => ScenarioName::Chsh.to_string(),
        ScenarioArg::I3322 => ScenarioName::I3322.to_string(),
    }
}

/// Executes a parsed command line and returns its record.
pub fn run(cli: &Cli) -> Result<RunRecord, CliError> {
    let start = Instant::now();
    let degrees = cli.degrees;
    let threads = cli.threads.map_or(Value::Null, |t| json!(t));
    let (command, parameters, result) = match &cli.command {
        Command::Estimate { model, sampling } => {
            let m = model_from_arg(model, degrees)?;
            let scenario = sampling.scenario.scenario();
            let samples = samples_for(sampling, &scenario)?;
            let est = estimate_volume(&m, &scenario, samples, sampling.seed).map_err(|e| CliError::runtime(e.to_string()))?;
            let mut result = serde_json::to_value(&est).expect("serializes");
            result["total_volume"] = json!(scenario.total_volume());
            result["volume"] = json!(est.volume());
            let parameters = params([
                ("model", json!(model)),
                ("model_label", json!(m.label())),
                ("scenario", json!(scenario_label(sampling.scenario))),
                ("samples", json!(samples)),
                ("seed", json!(sampling.seed)),
                ("threads", threads),
                ("degrees", json!(degrees)),
            ]);
            ("estimate", parameters, result)
        }
        Command::Sweep { lambda_min, lambda_max, steps, out, sampling } => {
            if *steps < 2 {
                return Err(CliError::usage(format!("--steps must be at least 2, got {steps}")));
            }
            let (lo, hi) = lambda_bounds(*lambda_min, *lambda_max, degrees)?;
            let scenario = sampling.scenario.scenario();
            let samples = samples_for(sampling, &scenario)?;
            let grid = linspace(lo, hi, *steps);
            let points = sweep_lambda(&grid, &scenario, samples, sampling.seed, true).map_err(classify)?;
            std::fs::write(out, table::render(&points))
                .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", out.display())))?;
            let parameters = params([
                ("lambda_min", json!(lo)),
                ("lambda_max", json!(hi)),
                ("steps", json!(steps)),
                ("scenario", json!(scenario_label(sampling.scenario))),
                ("samples", json!(samples)),
                ("seed", json!(sampling.seed)),
                ("common_random_numbers", json!(true)),
                ("out", json!(out.display().to_string())),
                ("threads", threads),
                ("degrees", json!(degrees)),
            ]);
            ("sweep", parameters, json!({ "points": points, "table": out.display().to_string() }))
        }
        Command::Crossover { reference, tol, lambda_min, lambda_max, sampling } => {
            let tol = tol.map_or(0.01, |t| angle(t, degrees));
            if !(tol > 0.0) {
                return Err(CliError::usage(format!("--tol must be positive, got {tol}")));
            }
            let (lo, hi) = lambda_bounds(*lambda_min, *lambda_max, degrees)?;
            let scenario = sampling.scenario.scenario();
            let samples = samples_for(sampling, &scenario)?;
            let reference_model = reference_model(*reference);
            let r = find_crossover(lambda_box_model, &reference_model, &scenario, (lo, hi), samples, sampling.seed, tol)
                .map_err(classify)?;
            let mut result = serde_json::to_value(&r).expect("serializes");
            result["lambda_star_degrees"] = json!(r.lambda_star.to_degrees());
            let parameters = params([
                ("reference", json!(reference_model.label())),
                ("family", json!("lambda-box")),
                ("tol", json!(tol)),
                ("lambda_min", json!(lo)),
                ("lambda_max", json!(hi)),
                ("scenario", json!(scenario_label(sampling.scenario))),
                ("samples", json!(samples)),
                ("seed", json!(sampling.seed)),
                ("threads", threads),
                ("degrees", json!(degrees)),
            ]);
            ("crossover", parameters, result)
        }
        Command::Maxviol { model, scenario, restarts, iterations, seed } => {
            let m = model_from_arg(model, degrees)?;
            let sc = scenario.scenario();
            let r = search_max_violation(&m, &sc, *restarts, *iterations, *seed).map_err(classify)?;
            let angles: BTreeMap<&str, f64> = r.config.pair_angles().into_iter().collect();
            let mut result = serde_json::to_value(&r).expect("serializes");
            result["pair_angles"] = json!(angles);
            let parameters = params([
                ("model", json!(model)),
                ("model_label", json!(m.label())),
                ("scenario", json!(scenario_label(*scenario))),
                ("restarts", json!(restarts)),
                ("iterations", json!(iterations)),
                ("seed", json!(seed)),
                ("threads", threads),
                ("degrees", json!(degrees)),
            ]);
            ("maxviol", parameters, result)
        }
        Command::Validate { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let parameters = params([("path", json!(path.display().to_string()))]);
            let report = match serde_json::from_str::<ModelDocument>(&text) {
                Ok(doc) => {
                    let nodes = doc.nodes.iter().map(|&[t, v]| PiecewiseNode::new(t, v)).collect();
                    validate_model(&CorrelationModel::piecewise_unchecked(doc.label, nodes))
                }
                Err(e) => {
                    let record = RunRecord {
                        command: "validate".into(),
                        parameters,
                        result: json!({ "valid": false, "violations": [{ "kind": "parse", "message": e.to_string() }] }),
                        wall_time_seconds: start.elapsed().as_secs_f64(),
                    };
                    return Err(CliError { code: CliError::VALIDATION, message: format!("malformed model file: {e}"), record: Some(record) });
                }
            };
            let messages: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
            let result = json!({ "valid": report.is_valid(), "violations": report.violations, "messages": messages });
            if !report.is_valid() {
                let record = RunRecord {
                    command: "validate".into(),
                    parameters,
                    result,
                    wall_time_seconds: start.elapsed().as_secs_f64(),
                };
                return Err(CliError { code: CliError::VALIDATION, message: messages.join("\n"), record: Some(record) });
            }
            ("validate", parameters, result)
        }
    };
    Ok(RunRecord { command: command.into(), parameters, result, wall_time_seconds: start.elapsed().as_secs_f64() })
}
