//! Society-level measurements taken from a single world snapshot.

use crate::model::{World, N_ACTIONS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub iteration: usize,
    pub mean_fitness: f64,
    /// Number of distinct actions in use.
    pub diversity: usize,
    pub best_fitness: f64,
    /// Fraction of agents (leader included) doing exactly what the leader
    /// does; 0 without a leader.
    pub leader_action_share: f64,
}

pub fn mean_fitness(world: &World) -> f64 {
    let total: f64 = world.agents.iter().map(|a| a.fitness()).sum();
    total / world.n_agents() as f64
}

pub fn best_fitness(world: &World) -> f64 {
    world
        .agents
        .iter()
        .map(|a| a.fitness())
        .fold(f64::NEG_INFINITY, f64::max)
}

pub fn diversity(world: &World) -> usize {
    let mut seen = [false; N_ACTIONS];
    let mut count = 0;
    for a in &world.agents {
        let slot = &mut seen[a.action().code()];
        if !*slot {
            *slot = true;
            count += 1;
        }
    }
    count
}

pub fn leader_action_share(world: &World) -> f64 {
    match world.leader_agent() {
        None => 0.0,
        Some(leader) => {
            let target = leader.action();
            let same = world.agents.iter().filter(|a| a.action() == target).count();
            same as f64 / world.n_agents() as f64
        }
    }
}

pub fn collect(world: &World) -> IterationStats {
    IterationStats {
        iteration: world.iteration,
        mean_fitness: mean_fitness(world),
        diversity: diversity(world),
        best_fitness: best_fitness(world),
        leader_action_share: leader_action_share(world),
    }
}
