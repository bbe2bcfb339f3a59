//! Agent-based simulation of cultural evolution under leadership.
//!
//! Agents on a toroidal grid either invent a variant of their current action
//! or copy the fittest action they can see. A single leader, when present,
//! broadcasts its action to the whole society. The [`experiments`] module
//! sweeps how often and how boldly the leader invents.

pub mod config;
pub mod dynamics;
pub mod experiments;
pub mod io;
pub mod metrics;
pub mod model;

pub use config::{ConfigError, RunConfig, ValueError};
pub use dynamics::{Candidate, Decision};
pub use experiments::{
    run, sweep, Axis, Cell, RunSeries, RunSummary, SweepError, SweepOptions, SweepResult,
};
pub use metrics::IterationStats;
pub use model::{fitness, Action, Agent, AgentId, KnowledgeTable, Move, World};
