use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::action::{fitness, Action};
use super::knowledge::KnowledgeTable;
use crate::config::{ConfigError, RunConfig};

pub type AgentId = usize;

#[derive(Debug, Clone, PartialEq)]
pub struct Agent {
    pub id: AgentId,
    pub row: usize,
    pub col: usize,
    action: Action,
    fitness: f64,
    /// Probability of inventing rather than imitating in an iteration.
    pub p_invent: f64,
    /// Fraction of components rewritten per invention.
    pub r_change: f64,
    pub knowledge: KnowledgeTable,
    pub is_leader: bool,
}

impl Agent {
    pub fn action(&self) -> &Action {
        &self.action
    }

    /// Cached `fitness(action)`.
    pub fn fitness(&self) -> f64 {
        self.fitness
    }

    /// Replaces the current action, keeping the cached fitness in sync.
    pub fn implement(&mut self, action: Action) {
        self.action = action;
        self.fitness = fitness(&action);
    }
}

/// Toroidal grid geometry, row-major ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub width: usize,
    pub height: usize,
}

impl Grid {
    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn id(&self, row: usize, col: usize) -> AgentId {
        row * self.width + col
    }

    pub fn coords(&self, id: AgentId) -> (usize, usize) {
        (id / self.width, id % self.width)
    }

    /// The four von Neumann neighbours of `id`: north, south, west, east.
    pub fn neighbors(&self, id: AgentId) -> [AgentId; 4] {
        let (r, c) = self.coords(id);
        let (w, h) = (self.width, self.height);
        [
            self.id((r + h - 1) % h, c),
            self.id((r + 1) % h, c),
            self.id(r, (c + w - 1) % w),
            self.id(r, (c + 1) % w),
        ]
    }
}

/// The society: one agent per cell of a torus, optionally with a broadcaster.
#[derive(Debug, Clone)]
pub struct World {
    pub grid: Grid,
    pub agents: Vec<Agent>,
    pub leader: Option<AgentId>,
    pub iteration: usize,
    pub epsilon: f64,
    pub rng: ChaCha8Rng,
}

impl PartialEq for World {
    fn eq(&self, other: &Self) -> bool {
        self.grid == other.grid
            && self.agents == other.agents
            && self.leader == other.leader
            && self.iteration == other.iteration
            && self.epsilon == other.epsilon
            && self.rng.get_word_pos() == other.rng.get_word_pos()
            && self.rng.get_seed() == other.rng.get_seed()
    }
}

impl World {
    /// Builds the initial world: everyone still, knowledge empty, and a
    /// uniformly drawn leader when broadcasting is on.
    pub fn new(config: &RunConfig) -> Result<World, ConfigError> {
        config.validate()?;
        let grid = Grid {
            width: config.width,
            height: config.height,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let leader = config
            .broadcast_enabled
            .then(|| rng.gen_range(0..grid.len()));
        let agents = (0..grid.len())
            .map(|id| {
                let (row, col) = grid.coords(id);
                let is_leader = leader == Some(id);
                let (p_invent, r_change) = if is_leader {
                    (config.leader_p_invent, config.leader_r_change)
                } else {
                    (config.follower_p_invent, config.follower_r_change)
                };
                Agent {
                    id,
                    row,
                    col,
                    action: Action::STILL,
                    fitness: fitness(&Action::STILL),
                    p_invent,
                    r_change,
                    knowledge: KnowledgeTable::new(config.alpha),
                    is_leader,
                }
            })
            .collect();
        Ok(World {
            grid,
            agents,
            leader,
            iteration: 0,
            epsilon: config.epsilon,
            rng,
        })
    }

    pub fn broadcast_enabled(&self) -> bool {
        self.leader.is_some()
    }

    pub fn n_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn neighbors(&self, id: AgentId) -> [AgentId; 4] {
        self.grid.neighbors(id)
    }

    pub fn leader_agent(&self) -> Option<&Agent> {
        self.leader.map(|id| &self.agents[id])
    }
}
