//! `zyglab` — configuration-driven verification front end.
//!
//! Subcommands: `norm`, `check`, `grid`, `classify`. Exit codes: 0 on pass,
//! 1 when a check fails, 2 on configuration errors.

mod checks;
mod config;
mod report;

use clap::{Args, Parser, Subcommand};
use config::{
    ClassifyConfig, ConfigError, ConfigResult, GridConfig, NormConfig, OutputFormat,
    ScenarioConfig,
};
use report::{ClassifyReportDto, NormReportDto};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use zyglab_core::zygmund;
use zyglab_core::EvaluationSettings;

const EXIT_PASS: u8 = 0;
const EXIT_CHECK_FAILURE: u8 = 1;
const EXIT_CONFIG_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "zyglab", version, about = "Numerical operator laboratory for Zygmund spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Path to the JSON config for this subcommand.
    #[arg(long)]
    config: PathBuf,
    /// Override the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format; grids default to csv, everything else to json.
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
    /// Override a named tolerance, e.g. --tol isometry=1e-7 (repeatable).
    #[arg(long = "tol", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
}

fn parse_format(raw: &str) -> Result<OutputFormat, String> {
    match raw {
        "json" => Ok(OutputFormat::Json),
        "csv" => Ok(OutputFormat::Csv),
        other => Err(format!("unknown format {other:?}; expected json or csv")),
    }
}

fn parse_tolerance(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected <name>=<value>, got {raw:?}"))?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("tolerance value {value:?} is not a number"))?;
    Ok((name.to_string(), value))
}

#[derive(Subcommand)]
enum Command {
    /// Compute the norm report of one function spec.
    Norm(CommonArgs),
    /// Run the checks of a scenario config and emit the run report.
    Check(CommonArgs),
    /// Export the weighted-modulus surface as CSV rows r,theta,value.
    Grid(CommonArgs),
    /// Classify an automorphism (or a flow sample) by its fixed points.
    Classify(CommonArgs),
}

fn read_config(path: &Path) -> ConfigResult<Vec<u8>> {
    std::fs::read(path).map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> ConfigResult<T> {
    serde_json::from_slice(bytes).map_err(|e| ConfigError(format!("{what}: {e}")))
}

fn write_output(out: &Option<PathBuf>, payload: &str) -> ConfigResult<()> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| ConfigError(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{payload}") {
                Ok(()) => Ok(()),
                // reader hung up (e.g. piped into head); not an error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(ConfigError(format!("cannot write to stdout: {e}"))),
            }
        }
    }
}

fn require_json(format: Option<OutputFormat>, what: &str) -> ConfigResult<()> {
    if format == Some(OutputFormat::Csv) {
        return Err(ConfigError(format!("{what} output is json only")));
    }
    Ok(())
}

fn cmd_norm(args: &CommonArgs) -> ConfigResult<u8> {
    require_json(args.format, "norm")?;
    let bytes = read_config(&args.config)?;
    let cfg: NormConfig = parse_json(&bytes, "norm config")?;
    let settings = match &cfg.settings {
        Some(dto) => dto.build()?,
        None => EvaluationSettings::default(),
    };
    let seed = args.seed.or(cfg.seed).unwrap_or(0);
    let function = cfg.function.build(seed)?;
    let norm = zygmund::zygmund_norm(&function, &settings)?;
    let dto = NormReportDto::new(function.label(), &norm);
    let payload = serde_json::to_string_pretty(&dto).expect("serializable");
    write_output(&args.out, &payload)?;
    Ok(EXIT_PASS)
}

fn cmd_check(args: &CommonArgs) -> ConfigResult<u8> {
    let bytes = read_config(&args.config)?;
    let mut cfg: ScenarioConfig = parse_json(&bytes, "scenario config")?;
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    for (name, value) in &args.tolerances {
        cfg.tolerances.insert(name.clone(), *value);
    }
    let report = checks::run_scenario(&cfg, &bytes)?;
    let format = args
        .format
        .or(cfg.output.as_ref().and_then(|o| o.format))
        .unwrap_or(OutputFormat::Json);
    let payload = match format {
        OutputFormat::Json => serde_json::to_string_pretty(&report).expect("serializable"),
        OutputFormat::Csv => report.to_csv(),
    };
    let out = args
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().and_then(|o| o.path.clone().map(PathBuf::from)));
    write_output(&out, &payload)?;
    Ok(if report.passed() {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILURE
    })
}

fn cmd_grid(args: &CommonArgs) -> ConfigResult<u8> {
    if args.format == Some(OutputFormat::Json) {
        return Err(ConfigError("grid output is csv only".into()));
    }
    let bytes = read_config(&args.config)?;
    let cfg: GridConfig = parse_json(&bytes, "grid config")?;
    let payload = match cfg {
        GridConfig::Surface(cfg) => {
            let seed = args.seed.or(cfg.seed).unwrap_or(0);
            let function = cfg.function.build(seed)?;
            let grid = cfg.grid()?;
            let rows = zygmund::grid_values(&function, &EvaluationSettings::default(), &grid)?;
            let mut payload = String::from("r,theta,value\n");
            for (r, theta, value) in rows {
                payload.push_str(&format!("{r},{theta},{value}\n"));
            }
            payload
        }
        GridConfig::Trajectory(cfg) => {
            if cfg.times.is_empty() || cfg.n_points == 0 {
                return Err(ConfigError(
                    "trajectory export needs times and n_points >= 1".into(),
                ));
            }
            let family = cfg.flow.build()?;
            let seed = args.seed.or(cfg.seed).unwrap_or(0);
            let mut rng = zyglab_core::rng::SplitMix64::new(seed);
            let points: Vec<_> = (0..cfg.n_points).map(|_| rng.next_in_disc(0.95)).collect();
            let mut payload = String::from("t,z_re,z_im,w_re,w_im\n");
            for &t in &cfg.times {
                for &z in &points {
                    let w = family.eval(t, z)?;
                    payload.push_str(&format!("{t},{},{},{},{}\n", z.re, z.im, w.re, w.im));
                }
            }
            payload
        }
    };
    write_output(&args.out, payload.trim_end())?;
    Ok(EXIT_PASS)
}

fn cmd_classify(args: &CommonArgs) -> ConfigResult<u8> {
    require_json(args.format, "classify")?;
    let bytes = read_config(&args.config)?;
    let cfg: ClassifyConfig = parse_json(&bytes, "classify config")?;
    let sigma = cfg.build_automorphism()?;
    let report = sigma.fixed_points();
    let dto = ClassifyReportDto::new(sigma, &report);
    let payload = serde_json::to_string_pretty(&dto).expect("serializable");
    write_output(&args.out, &payload)?;
    Ok(EXIT_PASS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Norm(args) => cmd_norm(args),
        Command::Check(args) => cmd_check(args),
        Command::Grid(args) => cmd_grid(args),
        Command::Classify(args) => cmd_classify(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_CONFIG_ERROR)
        }
    }
}
