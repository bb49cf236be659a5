use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use curvlab_cli::emit;
use curvlab_cli::runner::{model_battery, run_oracle, run_scenario};
use curvlab_cli::scenario::{CheckId, Kind, Payload, Scenario, DEFAULT_SAMPLES, DEFAULT_TOL};
use curvlab_core::{ModelName, ModelParams64};

/// Desk checks for 4-manifold curvature: model spaces, immersions and
/// arithmetic obstructions, reported as named lhs/rhs/margin rows.
///
/// Exit codes: 0 all checks pass (or attain equality), 1 at least one check
/// fails, 2 the input does not parse or names an unknown check.
#[derive(Parser)]
#[command(name = "curvlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file (JSON).
    Run {
        scenario: PathBuf,
        /// Verdict tolerance; overrides the scenario file.
        #[arg(long)]
        tol: Option<f64>,
        /// Grassmannian sample budget; overrides the scenario file.
        #[arg(long)]
        samples: Option<usize>,
        /// Random seed; overrides the scenario file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed-form minimum biorthogonal curvature against the
    /// brute-force Grassmannian minimum on the model catalog and random
    /// tensors (tolerance 1e-6).
    Oracle {
        /// Number of random curvature tensors.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the full check battery of a catalog model
    /// (s4, h4, flat, cp2, ch2, s2xs2, h2xh2).
    ModelReport {
        name: String,
        /// Euler characteristic for quotient models.
        #[arg(long)]
        chi: Option<i64>,
        /// Model parameter as key=value (radius, curvature, curvature2,
        /// holomorphic); repeatable.
        #[arg(long = "param", value_parser = parse_key_val)]
        params: Vec<(String, f64)>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_key_val(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|e| format!("value of `{key}` is not a number: {e}"))?;
    Ok((key.to_string(), value))
}

fn write_out(text: &str, out: Option<&Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| format!("cannot write report to {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail_input(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn run_command(command: Command) -> ExitCode {
    match command {
        Command::Run {
            scenario,
            tol,
            samples,
            seed,
            format,
            out,
        } => {
            let text = match std::fs::read_to_string(&scenario) {
                Ok(t) => t,
                Err(e) => return fail_input(format!("cannot read {}: {e}", scenario.display())),
            };
            let stem = scenario
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "scenario".into());
            let mut sc = match Scenario::from_json(&text, &stem) {
                Ok(sc) => sc,
                Err(e) => return fail_input(e),
            };
            if let Some(tol) = tol {
                if !(tol > 0.0) {
                    return fail_input("--tol must be positive");
                }
                sc.tol = tol;
            }
            if let Some(samples) = samples {
                if samples == 0 {
                    return fail_input("--samples must be at least 1");
                }
                sc.samples = samples;
            }
            if let Some(seed) = seed {
                sc.seed = seed;
            }
            let report = match run_scenario(&sc) {
                Ok(r) => r,
                Err(e) => return fail_input(e),
            };
            let rendered = match format {
                Format::Machine => emit::machine_report(&report),
                Format::Table => emit::table_report(&report),
            };
            if let Err(e) = write_out(&rendered, out.as_deref()) {
                return fail_input(e);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Oracle {
            count,
            samples,
            seed,
            format,
            out,
        } => {
            if count == 0 {
                return fail_input("--count must be at least 1");
            }
            if samples == 0 {
                return fail_input("--samples must be at least 1");
            }
            let report = run_oracle(count, samples, seed);
            let rendered = match format {
                Format::Machine => emit::machine_oracle(&report),
                Format::Table => emit::table_oracle(&report),
            };
            if let Err(e) = write_out(&rendered, out.as_deref()) {
                return fail_input(e);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::ModelReport {
            name,
            chi,
            params,
            tol,
            samples,
            seed,
            format,
            out,
        } => {
            let model_name: ModelName = match name.parse() {
                Ok(n) => n,
                Err(e) => return fail_input(e),
            };
            let mut model_params = ModelParams64 {
                chi,
                ..ModelParams64::default()
            };
            for (key, value) in &params {
                match key.as_str() {
                    "r" | "radius" => model_params.radius = Some(*value),
                    "kappa" | "kappa1" | "c1" | "curvature" => {
                        model_params.curvature = Some(*value)
                    }
                    "kappa2" | "c2" | "curvature2" => model_params.curvature2 = Some(*value),
                    "hol" | "holomorphic" => model_params.holomorphic = Some(*value),
                    other => return fail_input(format!("unknown model parameter `{other}`")),
                }
            }
            if !(tol > 0.0) {
                return fail_input("--tol must be positive");
            }
            if samples == 0 {
                return fail_input("--samples must be at least 1");
            }
            let checks: Vec<CheckId> = model_battery(model_name);
            let sc = Scenario {
                name: format!("model-report-{model_name}"),
                kind: Kind::Model,
                payload: Payload::Model {
                    name: model_name,
                    params: model_params,
                    half_conformally_flat: None,
                    beta_sq: None,
                },
                checks,
                tol,
                samples,
                seed,
            };
            let report = match run_scenario(&sc) {
                Ok(r) => r,
                Err(e) => return fail_input(e),
            };
            let rendered = match format {
                Format::Machine => emit::machine_report(&report),
                Format::Table => emit::table_report(&report),
            };
            if let Err(e) = write_out(&rendered, out.as_deref()) {
                return fail_input(e);
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn main() -> ExitCode {
    run_command(Cli::parse().command)
}
