use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use cavity_sta_cli::{run, sweep_tau, RunConfig, RunOptions};
use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "cavity-sta", version, about = "Moving-mirror cavity runs and shortcut-to-adiabaticity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Fail when an effective mirror moves faster than light.
    #[arg(long, global = true)]
    strict: bool,

    /// Output directory (overrides `outputs.dir`).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,

    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario.
    Run { config: PathBuf },
    /// Sweep the motion duration over `sweep.taus`.
    Sweep { config: PathBuf },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn real_main() -> Result<bool> {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring worker threads")?;
    }
    let opts = RunOptions { strict: cli.strict, out_dir: cli.out };
    match cli.command {
        Command::Run { config } => {
            let cfg = RunConfig::load(&config)?;
            let report = run(&cfg, &opts).with_context(|| format!("running {}", config.display()))?;
            let r = &report.summary.results;
            println!("wrote {}", report.out_dir.display());
            for (t, (qr, qe)) in r.temperatures.iter().zip(r.q_ref_final.iter().zip(&r.q_eff_final)) {
                println!("T = {t}: Q_ref(final) = {qr:.6}, Q_eff(final) = {qe:.6}");
            }
            println!(
                "max effective speed: left {:.4}, right {:.4}{}",
                r.max_speed_left,
                r.max_speed_right,
                if r.realizable { "" } else { " (superluminal)" }
            );
            for c in report.failures() {
                eprintln!("check failed: {} = {:e} (limit {:e})", c.name, c.value, c.limit);
            }
            Ok(report.passed())
        }
        Command::Sweep { config } => {
            let cfg = RunConfig::load(&config)?;
            let taus = cfg.sweep_taus()?;
            let report = sweep_tau(&cfg, &taus, &opts).with_context(|| format!("sweeping {}", config.display()))?;
            println!("wrote {}", report.out_dir.display());
            for row in &report.rows {
                println!("tau = {}: residual {:.3e}, max speed {:.4}", row.tau, row.residual(), row.max_speed());
            }
            println!("residual slope: {:.4}", report.results.residual_slope);
            Ok(true)
        }
    }
}
