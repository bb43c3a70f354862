use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use plate_c0ip::config::{Experiment, RunConfig};
use plate_c0ip::experiments::{run_convergence, run_energy_check, run_example1, OutputDir};
use plate_c0ip::{Error, Result};

/// Drift tolerance for the uncoupled energy in `energy-check`.
const NEWMARK_DRIFT_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(name = "plate-c0ip", version, about = "Coupled plate solver: convergence studies, plate runs, energy checks")]
struct Cli {
    /// TOML configuration overriding the experiment preset.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Sign of the coupling coefficient in the manufactured studies.
    #[arg(long, global = true, value_parser = parse_gamma, allow_hyphen_values = true, value_name = "+1|-1")]
    gamma: Option<f64>,
    /// Append the extended mesh levels to the sweep.
    #[arg(long, global = true)]
    extended: bool,
    /// Write field snapshots every K steps.
    #[arg(long, global = true, value_name = "K")]
    snapshots: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mesh-refinement study against a manufactured solution.
    Convergence {
        #[arg(value_enum)]
        case: Option<ConvergenceCase>,
    },
    /// Plate under transverse load; cell-averaged time series.
    Example1 {
        #[arg(value_enum)]
        model: Option<PlateModel>,
    },
    /// Discrete energy growth and uncoupled energy conservation.
    EnergyCheck,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConvergenceCase {
    Smooth,
    Lshape,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PlateModel {
    Ted,
    Tpe,
}

fn parse_gamma(s: &str) -> std::result::Result<f64, String> {
    match s {
        "+1" | "1" | "1.0" | "+1.0" => Ok(1.0),
        "-1" | "-1.0" => Ok(-1.0),
        _ => Err(format!("expected +1 or -1, got `{s}`")),
    }
}

fn load_config(cli: &Cli, experiment: Option<Experiment>) -> Result<RunConfig> {
    let mut text = match &cli.config {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?,
        None => String::new(),
    };
    if let Some(e) = experiment {
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.to_string()))?;
        table.insert("experiment".into(), toml::Value::String(e.name().into()));
        text = toml::to_string(&table).map_err(|e| Error::Config(e.to_string()))?;
    }
    let mut cfg = RunConfig::from_toml_str(&text)?;
    if let Some(g) = cli.gamma {
        cfg.gamma = g;
    }
    if let Some(k) = cli.snapshots {
        cfg.output.snapshots = k;
    }
    if let Some(dir) = &cli.out {
        cfg.output.dir = dir.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool> {
    let version = env!("CARGO_PKG_VERSION").to_string();
    match &cli.command {
        Command::Convergence { case } => {
            let experiment = case.map(|c| match c {
                ConvergenceCase::Smooth => Experiment::Smooth,
                ConvergenceCase::Lshape => Experiment::Lshape,
                ConvergenceCase::Custom => Experiment::Custom,
            });
            let cfg = load_config(cli, experiment)?;
            if !cfg.experiment.is_convergence() {
                return Err(Error::Config(format!("`{}` is not a convergence experiment", cfg.experiment.name())));
            }
            let out = OutputDir::create(&cfg.output.dir)?;
            let levels = cfg.sweep_levels(cli.extended);
            let outcome = run_convergence(&cfg, &levels, Some(&out))?;
            let mut facts = vec![
                ("command".to_string(), "convergence".to_string()),
                ("version".to_string(), version),
                ("extended".to_string(), cli.extended.to_string()),
                ("levels".to_string(), format!("{levels:?}")),
            ];
            for r in &outcome.runs {
                facts.push((
                    format!("level n={}", r.n),
                    format!(
                        "h={:.6e} dt={:.6e} steps={} dofs={:?} seconds={:.2}",
                        r.errors.h, r.errors.dt, r.steps, r.dofs, r.seconds
                    ),
                ));
            }
            out.write_manifest(&cfg, &facts)?;
            print!("{}", outcome.report.to_table());
            println!("wrote {}", out.path("norms.csv").display());
            Ok(true)
        }
        Command::Example1 { model } => {
            let experiment = match model {
                Some(PlateModel::Ted) => Some(Experiment::Example1Ted),
                Some(PlateModel::Tpe) => Some(Experiment::Example1Tpe),
                None if cli.config.is_none() => Some(Experiment::Example1Ted),
                None => None,
            };
            let cfg = load_config(cli, experiment)?;
            let out = OutputDir::create(&cfg.output.dir)?;
            let outcome = run_example1(&cfg, Some(&out))?;
            let c = outcome.coefficients;
            let facts = vec![
                ("command".to_string(), "example1".to_string()),
                ("version".to_string(), version),
                ("coefficients".to_string(), format!("{:?}", c.as_array())),
                ("steps".to_string(), outcome.steps.to_string()),
                ("dofs".to_string(), format!("{:?}", outcome.dofs)),
                ("seconds".to_string(), format!("{:.2}", outcome.seconds)),
            ];
            out.write_manifest(&cfg, &facts)?;
            let s = &outcome.series;
            let last = s.t.len() - 1;
            println!("{} steps, t = {}: U_2D = {:.6e}, Theta_2D = {:.6e}, P_2D = {:.6e}", outcome.steps, s.t[last], s.u[last], s.theta[last], s.p[last]);
            println!("wrote {}", out.path("timeseries.csv").display());
            Ok(outcome.series.is_finite())
        }
        Command::EnergyCheck => {
            let cfg = load_config(cli, None)?;
            let out = OutputDir::create(&cfg.output.dir)?;
            let outcome = run_energy_check(&cfg, Some(&out))?;
            let passed = outcome.passed(NEWMARK_DRIFT_TOL);
            let facts = vec![
                ("command".to_string(), "energy-check".to_string()),
                ("version".to_string(), version),
                ("growth".to_string(), format!("{:.6e}", outcome.growth)),
                ("newmark_drift".to_string(), format!("{:.3e}", outcome.newmark_drift)),
                ("passed".to_string(), passed.to_string()),
            ];
            out.write_manifest(&cfg, &facts)?;
            println!(
                "max E_h / E_h(1) = {:.4} (bound {}), uncoupled energy drift = {:.3e} (tolerance {:.0e}): {}",
                outcome.growth,
                outcome.growth_bound,
                outcome.newmark_drift,
                NEWMARK_DRIFT_TOL,
                if passed { "PASS" } else { "FAIL" }
            );
            println!("wrote {}", out.path("energy.csv").display());
            Ok(passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(2)
        }
    }
}
