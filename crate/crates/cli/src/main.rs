use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stherm_cli::config::{load_config, parse_grid_arg, Spacing};
use stherm_cli::demon_check::{demon_check, first_failure};
use stherm_cli::emit::{emit, Format};
use stherm_cli::sweep::{compute_row, run_sweep};
use stherm_cli::CliError;
use stherm_core::analysis::build_report;
use stherm_core::thermal::Temperature;

#[derive(Parser)]
#[command(
    name = "stherm",
    version,
    about = "Symmetry-constrained thermalization: sweeps, reports and demon checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// JSON model config
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
struct PointArgs {
    /// Initial temperature
    #[arg(long)]
    t0: f64,
    /// Bath temperature
    #[arg(long)]
    t: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep a (T0, T) grid and write one row per point
    Sweep {
        #[command(flatten)]
        config: ConfigArg,
        /// t0_min:t0_max:n,t_min:t_max:n (overrides the config grid)
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "linear")]
        spacing: Spacing,
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads
        #[arg(long, env = "STHERM_JOBS")]
        jobs: Option<usize>,
    },
    /// Full bookkeeping for a single point
    Report {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        point: PointArgs,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Verify the demon circuit pathways at one point
    DemonCheck {
        #[command(flatten)]
        config: ConfigArg,
        #[command(flatten)]
        point: PointArgs,
    },
    /// Validate a config and print its summary
    Validate {
        #[command(flatten)]
        config: ConfigArg,
    },
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Sweep {
            config,
            grid,
            spacing,
            format,
            out,
            jobs,
        } => {
            let (cfg, config_grid) = load_config(&config.config)?;
            let model = cfg.to_model()?;
            let grid = match grid {
                Some(arg) => parse_grid_arg(&arg, spacing)?,
                None => config_grid,
            };
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from));
            let rows = run_sweep(&model, &grid, jobs);
            for row in &rows {
                if let Some(err) = &row.error {
                    eprintln!("point (t0={}, t={}): {err}", row.t0, row.t);
                }
            }
            let mut w = output(&out)?;
            emit(&rows, format, &mut w)?;
            w.flush()?;
        }
        Command::Report {
            config,
            point,
            format,
        } => {
            let (cfg, _) = load_config(&config.config)?;
            let model = cfg.to_model()?;
            if format == "json" {
                let row = compute_row(&model, point.t0, point.t);
                println!("{}", serde_json::to_string_pretty(&row)?);
                return Ok(());
            }
            let report = build_report(
                &model,
                Temperature::new(point.t0)?,
                Temperature::new(point.t)?,
            )?;
            let row = compute_row(&model, point.t0, point.t);
            print_report(&cfg.name, &report, &row);
        }
        Command::DemonCheck { config, point } => {
            let (cfg, _) = load_config(&config.config)?;
            let model = cfg.to_model()?;
            let checks = demon_check(&model, point.t0, point.t, io::stdout().lock())?;
            if let Some(name) = first_failure(&checks) {
                return Err(CliError::CheckFailed(name.to_string()));
            }
        }
        Command::Validate { config } => {
            let (cfg, grid) = load_config(&config.config)?;
            let model = cfg.to_model()?;
            println!(
                "{}: dim {}, {} sectors, grid {}x{} ({:?})",
                cfg.name,
                model.dim(),
                model.sectors().len(),
                grid.t0_values.len(),
                grid.t_values.len(),
                grid.spacing
            );
        }
    }
    Ok(())
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.12}"))
}

fn print_report(
    name: &str,
    r: &stherm_core::analysis::ThermoReport,
    row: &stherm_cli::sweep::ResultRow,
) {
    println!("model {name}  T0 = {}  T = {}", r.t0.value(), r.t.value());
    println!("  sector probabilities     {:?}", r.sector_probs);
    println!("  H(p)                     {:.12}", r.h_sectors);
    println!(
        "  E initial / SS / Gibbs   {:.12} / {:.12} / {:.12}",
        r.e_initial, r.e_ss, r.e_gibbs
    );
    println!(
        "  S initial / SS / Gibbs   {:.12} / {:.12} / {:.12}",
        r.s_initial, r.s_ss, r.s_gibbs
    );
    println!("  S(rho_SS || Gibbs)       {:.12}", r.rel_ent_ss_gibbs);
    println!("  energy gap direct        {:.12e}", r.energy_gap_direct);
    println!("  energy gap (entropies)   {:.12e}", r.energy_gap_info);
    println!("  energy gap (erasure)     {:.12e}", r.energy_gap_erasure);
    println!(
        "  dS_sys / dS_bath         {:.12} / {:.12}",
        r.delta_s_sys, r.delta_s_bath
    );
    println!("  erasure cost             {:.12}", r.erasure_cost);
    println!("  lambda                   {}", opt(r.lambda));
    println!(
        "  classification           {} (bath sign: {})",
        r.classification,
        r.bath_verdict()
    );
    println!("  ergotropy                {}", opt(row.ergotropy));
    println!(
        "  asymptotic ergotropy     {}",
        opt(row.asymptotic_ergotropy)
    );
    println!("  excess ergotropy         {}", opt(row.excess_ergotropy));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
