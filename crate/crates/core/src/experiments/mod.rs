//! Runs, parameter sweeps and the three leadership experiment presets.

pub mod stats;

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, RunConfig, ValueError};
use crate::metrics::{collect, IterationStats};
use crate::model::{World, MAX_FITNESS};

/// Mean fitness at which a run counts as converged: 90% of the landscape maximum.
pub const CONVERGENCE_THRESHOLD: f64 = 0.9 * MAX_FITNESS;

/// Iteration at which the "early" fitness of the magnitude experiment is read.
pub const EARLY_CHECKPOINT: usize = 5;

/// Default ceiling on `cells × replicates` for one sweep.
pub const DEFAULT_MAX_RUNS: usize = 100_000;

/// Per-iteration record of one run, iteration 0 included.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSeries {
    pub config: RunConfig,
    pub stats: Vec<IterationStats>,
}

impl RunSeries {
    pub fn final_stats(&self) -> &IterationStats {
        self.stats.last().expect("a series always holds iteration 0")
    }

    /// First iteration whose mean fitness reaches [`CONVERGENCE_THRESHOLD`].
    pub fn convergence_iteration(&self) -> Option<usize> {
        self.stats
            .iter()
            .find(|s| s.mean_fitness >= CONVERGENCE_THRESHOLD)
            .map(|s| s.iteration)
    }
}

/// Simulates `config.iterations` steps from a fresh world.
pub fn run(config: &RunConfig) -> Result<RunSeries, ConfigError> {
    let mut world = World::new(config)?;
    let mut stats = Vec::with_capacity(config.iterations + 1);
    stats.push(collect(&world));
    for _ in 0..config.iterations {
        world.step();
        stats.push(collect(&world));
    }
    Ok(RunSeries {
        config: config.clone(),
        stats,
    })
}

/// One swept parameter and the literal values it takes.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub values: Vec<String>,
}

impl Axis {
    pub fn new<K: Into<String>, V: ToString>(key: K, values: &[V]) -> Self {
        Axis {
            key: key.into(),
            values: values.iter().map(ToString::to_string).collect(),
        }
    }
}

/// What a sweep keeps from each run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub final_mean_fitness: f64,
    pub final_diversity: usize,
    pub final_leader_share: f64,
    pub convergence_iteration: Option<usize>,
    /// Mean fitness at every iteration, index = iteration.
    pub mean_fitness: Vec<f64>,
}

impl RunSummary {
    fn from_series(series: &RunSeries) -> Self {
        let last = series.final_stats();
        RunSummary {
            seed: series.config.seed,
            final_mean_fitness: last.mean_fitness,
            final_diversity: last.diversity,
            final_leader_share: last.leader_action_share,
            convergence_iteration: series.convergence_iteration(),
            mean_fitness: series.stats.iter().map(|s| s.mean_fitness).collect(),
        }
    }

    pub fn fitness_at(&self, iteration: usize) -> f64 {
        self.mean_fitness[iteration]
    }
}

/// One point of the parameter grid with its replicates.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    /// Position along each axis.
    pub index: Vec<usize>,
    /// Literal axis values, parallel to `index`.
    pub values: Vec<String>,
    /// Base config with this cell's overrides applied (seed is the base seed).
    pub config: RunConfig,
    pub runs: Vec<RunSummary>,
}

impl Cell {
    pub fn final_fitness(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.final_mean_fitness).collect()
    }

    pub fn final_diversity(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.final_diversity as f64).collect()
    }

    pub fn final_leader_share(&self) -> Vec<f64> {
        self.runs.iter().map(|r| r.final_leader_share).collect()
    }

    pub fn fitness_at(&self, iteration: usize) -> Vec<f64> {
        self.runs.iter().map(|r| r.fitness_at(iteration)).collect()
    }

    /// Convergence iterations, with runs that never converged counted as
    /// `iterations + 1`.
    pub fn convergence(&self) -> Vec<f64> {
        let never = (self.config.iterations + 1) as f64;
        self.runs
            .iter()
            .map(|r| r.convergence_iteration.map_or(never, |i| i as f64))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub replicates: usize,
    pub seed0: u64,
    /// Cells in Cartesian order, first axis varying slowest.
    pub cells: Vec<Cell>,
}

impl SweepResult {
    /// The cell at the given axis positions.
    pub fn cell(&self, index: &[usize]) -> Option<&Cell> {
        self.cells.iter().find(|c| c.index == index)
    }

    pub fn total_runs(&self) -> usize {
        self.cells.iter().map(|c| c.runs.len()).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("replicates must be at least 1")]
    NoReplicates,
    #[error("sweep needs at least one axis")]
    NoAxes,
    #[error("axis `{0}` has no values")]
    EmptyAxis(String),
    #[error("axis `{0}` appears more than once")]
    DuplicateAxis(String),
    #[error("unknown axis key `{0}`")]
    UnknownKey(String),
    #[error("axis value rejected: {0}")]
    Value(ValueError),
    #[error("cell {cell:?}: {source}")]
    Config { cell: Vec<String>, source: ConfigError },
    #[error("sweep of {runs} runs exceeds the cap of {cap}; raise the cap or shrink the grid")]
    TooLarge { runs: usize, cap: usize },
    #[error("thread pool: {0}")]
    Threads(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    pub max_runs: usize,
    /// Worker threads for replicate runs; `None` uses the global rayon pool.
    pub threads: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            max_runs: DEFAULT_MAX_RUNS,
            threads: None,
        }
    }
}

fn cartesian(axes: &[Axis]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..axis.values.len()).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}

/// Runs every grid cell `replicates` times.
///
/// Cells are enumerated in Cartesian order with the first axis varying
/// slowest; cell `c`, replicate `r` runs with seed
/// `seed0 + c * replicates + r` (wrapping).
pub fn sweep(
    base: &RunConfig,
    axes: &[Axis],
    replicates: usize,
    seed0: u64,
    options: &SweepOptions,
) -> Result<SweepResult, SweepError> {
    if replicates == 0 {
        return Err(SweepError::NoReplicates);
    }
    if axes.is_empty() {
        return Err(SweepError::NoAxes);
    }
    for (i, axis) in axes.iter().enumerate() {
        if !RunConfig::is_key(&axis.key) || axis.key == "seed" {
            return Err(SweepError::UnknownKey(axis.key.clone()));
        }
        if axis.values.is_empty() {
            return Err(SweepError::EmptyAxis(axis.key.clone()));
        }
        if axes[..i].iter().any(|a| a.key == axis.key) {
            return Err(SweepError::DuplicateAxis(axis.key.clone()));
        }
    }
    let grid = cartesian(axes);
    let runs = grid.len().saturating_mul(replicates);
    if runs > options.max_runs {
        return Err(SweepError::TooLarge {
            runs,
            cap: options.max_runs,
        });
    }

    let mut cells = Vec::with_capacity(grid.len());
    for index in grid {
        let mut config = base.clone();
        let mut values = Vec::with_capacity(axes.len());
        for (axis, &i) in axes.iter().zip(&index) {
            let v = &axis.values[i];
            config.set(&axis.key, v).map_err(SweepError::Value)?;
            values.push(v.clone());
        }
        config.validate().map_err(|source| SweepError::Config {
            cell: values.clone(),
            source,
        })?;
        cells.push(Cell {
            index,
            values,
            config,
            runs: Vec::new(),
        });
    }

    let jobs: Vec<(usize, RunConfig)> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, cell)| {
            (0..replicates).map(move |r| {
                let seed = seed0.wrapping_add((c * replicates + r) as u64);
                (c, RunConfig {
                    seed,
                    ..cell.config.clone()
                })
            })
        })
        .collect();

    let execute = || -> Vec<(usize, RunSummary)> {
        jobs.par_iter()
            .map(|(c, cfg)| {
                let series = run(cfg).expect("cell config validated above");
                (*c, RunSummary::from_series(&series))
            })
            .collect()
    };
    let results = match options.threads {
        None => execute(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| SweepError::Threads(e.to_string()))?
            .install(execute),
    };
    for (c, summary) in results {
        cells[c].runs.push(summary);
    }
    Ok(SweepResult {
        axes: axes.to_vec(),
        replicates,
        seed0,
        cells,
    })
}

/// Leader present vs. absent, everyone at the default parameters.
pub fn preset_e1_leadership(
    replicates: usize,
    seed0: u64,
    options: &SweepOptions,
) -> Result<SweepResult, SweepError> {
    let axes = [Axis::new("broadcast_enabled", &["false", "true"])];
    sweep(&RunConfig::default(), &axes, replicates, seed0, options)
}

pub const E2_LEADER_P_INVENT: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
pub const E2_FOLLOWER_P_INVENT: [f64; 3] = [0.02, 0.1, 0.5];

/// Leader invention frequency against follower invention frequency, leader broadcasting.
pub fn preset_e2_frequency(
    replicates: usize,
    seed0: u64,
    options: &SweepOptions,
) -> Result<SweepResult, SweepError> {
    let base = RunConfig {
        broadcast_enabled: true,
        ..RunConfig::default()
    };
    let axes = [
        Axis::new("leader_p_invent", &E2_LEADER_P_INVENT),
        Axis::new("follower_p_invent", &E2_FOLLOWER_P_INVENT),
    ];
    sweep(&base, &axes, replicates, seed0, options)
}

pub const E3_LEADER_R_CHANGE: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 1.0];
pub const E3_FOLLOWER_P_INVENT: f64 = 0.02;
/// The leader invents every iteration so its magnitude is always in play.
pub const E3_LEADER_P_INVENT: f64 = 1.0;

/// Leader creativity magnitude, leader broadcasting to mostly-imitating followers.
pub fn preset_e3_magnitude(
    replicates: usize,
    seed0: u64,
    options: &SweepOptions,
) -> Result<SweepResult, SweepError> {
    let base = RunConfig {
        broadcast_enabled: true,
        follower_p_invent: E3_FOLLOWER_P_INVENT,
        leader_p_invent: E3_LEADER_P_INVENT,
        ..RunConfig::default()
    };
    let axes = [Axis::new("leader_r_change", &E3_LEADER_R_CHANGE)];
    sweep(&base, &axes, replicates, seed0, options)
}
