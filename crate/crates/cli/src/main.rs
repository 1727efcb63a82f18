use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use blockpec::bench::{
    fit_models, mean_gain_by_n, read_gain_csv, run_gain_experiment, write_experiment, write_gain_csv, ExperimentConfig,
};
use blockpec::circuit::{classify_circuit_with, parse_circuit, Circuit, Compat};
use blockpec::noise::{Inversion, NoiseSpec};
use blockpec::pec::{Mode, PecEngine};
use blockpec::sim::{pec_estimate_with, EstimateOptions, Observable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Block probabilistic error cancellation toolkit.
#[derive(Parser)]
#[command(name = "blockpec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sampling overhead of a circuit file.
    Gamma {
        file: PathBuf,
        #[arg(long, default_value = "hybrid")]
        mode: ModeArg,
        #[arg(long)]
        coeffs: bool,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Monte Carlo PEC estimate of an observable.
    Estimate {
        file: PathBuf,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Single-shot outcomes per sample instead of exact expectations.
        #[arg(long)]
        shots: Option<u32>,
        #[arg(long, default_value = "hybrid")]
        mode: ModeArg,
        /// `z:<q>`, `excited:<q>` or `zstring:<q,q,..>`.
        #[arg(long, default_value = "z:0")]
        observable: String,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Gain experiment from a JSON config; writes CSV and a metadata sidecar.
    Experiment {
        #[arg(long)]
        config: PathBuf,
    },
    /// Exponential and quadratic fits of mean gain per n from a gain CSV.
    Fit { csv: PathBuf },
    /// Per-gate compatibility flags and block segments.
    CheckCompat {
        file: PathBuf,
        #[arg(long, default_value = "strict")]
        compat: CompatArg,
    },
}

#[derive(Args)]
struct EngineArgs {
    /// Noise applied to every gate, as JSON.
    #[arg(long, default_value = r#"{"kind":"uncorrelated","p":0.001}"#)]
    noise: String,
    #[arg(long, default_value = "strict")]
    compat: CompatArg,
    #[arg(long, default_value = "exact")]
    inversion: InversionArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Std,
    Blk,
    Hybrid,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompatArg {
    Strict,
    Relaxed,
}

#[derive(Clone, Copy, ValueEnum)]
enum InversionArg {
    Exact,
    ClosedForm,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Std => Mode::Std,
            ModeArg::Blk => Mode::Blk,
            ModeArg::Hybrid => Mode::Hybrid,
        }
    }
}

impl From<CompatArg> for Compat {
    fn from(c: CompatArg) -> Self {
        match c {
            CompatArg::Strict => Compat::Strict,
            CompatArg::Relaxed => Compat::Relaxed,
        }
    }
}

impl EngineArgs {
    fn engine(&self) -> PecEngine {
        let inversion = match self.inversion {
            InversionArg::Exact => Inversion::Exact,
            InversionArg::ClosedForm => Inversion::ClosedForm,
        };
        PecEngine::new(self.compat.into(), inversion)
    }

    fn noise(&self) -> Result<NoiseSpec> {
        serde_json::from_str(&self.noise)
            .map_err(|e| blockpec::Error::parse(e.line(), format!("noise: {e}")))
            .context("invalid --noise")
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(blockpec::Error::from)
        .with_context(|| format!("reading {}", path.display()))
}

fn load_circuit(path: &Path, noise: NoiseSpec) -> Result<Circuit> {
    let c = parse_circuit(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    Ok(c.with_noise(noise))
}

fn parse_observable(spec: &str, n: usize) -> Result<Observable> {
    let bad = || blockpec::Error::InvalidArgument(format!("observable {spec:?}"));
    let (kind, arg) = spec.split_once(':').ok_or_else(bad)?;
    let qubits = arg
        .split(',')
        .map(|q| q.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match (kind, qubits.as_slice()) {
        ("z", [q]) => Observable::z(n, *q)?,
        ("excited", [q]) => Observable::excited(n, *q)?,
        ("zstring", qs) => Observable::ZString(blockpec::circuit::PauliZString::from_qubits(n, qs)?),
        _ => return Err(bad().into()),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gamma {
            file,
            mode,
            coeffs,
            engine,
        } => {
            let c = load_circuit(&file, engine.noise()?)?;
            let e = engine.engine();
            let plan = e.plan(&c, mode.into())?;
            let mut out = plan.to_json(coeffs);
            out["gamma_std"] = json!(e.gamma_std(&c)?);
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::Estimate {
            file,
            samples,
            seed,
            shots,
            mode,
            observable,
            engine,
        } => {
            let c = load_circuit(&file, engine.noise()?)?;
            let obs = parse_observable(&observable, c.n())?;
            let opts = EstimateOptions {
                shots,
                engine: engine.engine(),
                ..EstimateOptions::new(mode.into(), samples, seed)
            };
            let report = pec_estimate_with(&c, &obs, &opts)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Experiment { config } => {
            let cfg =
                ExperimentConfig::from_json(&read(&config)?).with_context(|| format!("config {}", config.display()))?;
            let rows = run_gain_experiment(&cfg)?;
            if cfg.output_path.as_os_str() == "-" {
                write_gain_csv(&rows, std::io::stdout().lock())?;
            } else {
                write_experiment(&cfg, &rows)?;
                eprintln!("wrote {} rows to {}", rows.len(), cfg.output_path.display());
            }
        }
        Command::Fit { csv } => {
            let rows = read_gain_csv(&read(&csv)?).with_context(|| format!("parsing {}", csv.display()))?;
            let points: Vec<(f64, f64)> = mean_gain_by_n(&rows).into_iter().map(|(n, g)| (n as f64, g)).collect();
            let (exponential, quadratic) = fit_models(&points)?;
            let out = json!({ "points": points, "exponential": exponential, "quadratic": quadratic });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Command::CheckCompat { file, compat } => {
            let c = load_circuit(&file, NoiseSpec::none())?;
            let report = classify_circuit_with(&c, compat.into());
            let ops: Vec<_> = c
                .ops()
                .iter()
                .zip(&report.flags)
                .map(|(g, f)| json!({ "op": g.to_string(), "flags": f }))
                .collect();
            let out = json!({
                "fully_compatible": report.fully_compatible(),
                "segments": report.segments.iter().map(|r| [r.start, r.end]).collect::<Vec<_>>(),
                "ops": ops,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> u8 {
    e.chain()
        .find_map(|c| c.downcast_ref::<blockpec::Error>())
        .map_or(1, |e| e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
