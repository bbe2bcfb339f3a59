use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use leadsim_core::experiments::{
    preset_e1_leadership, preset_e2_frequency, preset_e3_magnitude, DEFAULT_MAX_RUNS,
};
use leadsim_core::io::{
    oracle_fitness_dump, parse_axes, parse_config, write_series_csv, write_summary_csv,
    write_sweep_csv,
};
use leadsim_core::{run, sweep, RunConfig, SweepOptions};

/// Cultural evolution on a grid, with and without a broadcasting leader.
#[derive(Debug, Parser)]
#[command(name = "leadsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one run and write its per-iteration series.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Output CSV path, or `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a Cartesian parameter grid with replicates.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// `key=v1,v2[;key2=w1,w2]`
        #[arg(long)]
        axes: String,
        #[arg(long)]
        replicates: usize,
        #[arg(long)]
        seed0: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RUNS)]
        max_runs: usize,
    },
    /// Run one of the leadership experiments.
    Preset {
        #[arg(value_enum)]
        name: Preset,
        #[arg(long)]
        replicates: usize,
        #[arg(long)]
        seed0: u64,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_RUNS)]
        max_runs: usize,
    },
    /// Dump the fitness of all 729 actions.
    OracleFitness {
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Preset {
    /// leader present vs. absent
    E1,
    /// leader vs. follower invention frequency
    E2,
    /// leader invention magnitude
    E3,
}

impl Preset {
    fn name(self) -> &'static str {
        match self {
            Preset::E1 => "e1",
            Preset::E2 => "e2",
            Preset::E3 => "e3",
        }
    }
}

fn sim_threads() -> Result<Option<usize>> {
    match std::env::var("SIM_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => bail!("SIM_THREADS must be a positive integer, got {v:?}"),
        },
    }
}

fn read_config(path: &Path) -> Result<RunConfig> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_config(&text).with_context(|| format!("config {}", path.display()))
}

fn with_sink<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    if path.as_os_str() == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        return write(&mut lock).context("writing stdout");
    }
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut sink = BufWriter::new(file);
    write(&mut sink).with_context(|| format!("writing {}", path.display()))?;
    sink.flush()
        .with_context(|| format!("writing {}", path.display()))
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Run { config, seed, out } => {
            let mut cfg = read_config(&config)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let series = run(&cfg)?;
            with_sink(&out, |w| write_series_csv(&series, w))
        }
        Command::Sweep {
            config,
            axes,
            replicates,
            seed0,
            out,
            max_runs,
        } => {
            let base = read_config(&config)?;
            let axes = parse_axes(&axes)?;
            let options = SweepOptions {
                max_runs,
                threads: sim_threads()?,
            };
            let result = sweep(&base, &axes, replicates, seed0, &options)?;
            with_sink(&out, |w| write_sweep_csv(&result, w))
        }
        Command::Preset {
            name,
            replicates,
            seed0,
            out_dir,
            max_runs,
        } => {
            let options = SweepOptions {
                max_runs,
                threads: sim_threads()?,
            };
            let result = match name {
                Preset::E1 => preset_e1_leadership(replicates, seed0, &options),
                Preset::E2 => preset_e2_frequency(replicates, seed0, &options),
                Preset::E3 => preset_e3_magnitude(replicates, seed0, &options),
            }?;
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            let runs = out_dir.join(format!("{}.csv", name.name()));
            with_sink(&runs, |w| write_sweep_csv(&result, w))?;
            let summary = out_dir.join(format!("{}_summary.csv", name.name()));
            with_sink(&summary, |w| write_summary_csv(&result, w))
        }
        Command::OracleFitness { out } => with_sink(&out, |w| oracle_fitness_dump(w)),
    }
}

fn one_line(msg: &str) -> String {
    msg.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect::<Vec<_>>()
        .join("; ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or("invalid arguments")
                .trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", one_line(&format!("{e:#}")));
            ExitCode::from(1)
        }
    }
}
