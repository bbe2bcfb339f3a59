//! One iteration of the society: each agent invents or imitates, learns from
//! what it saw, and all new actions are committed at once.

use rand::seq::index;
use rand::Rng;

use crate::model::{fitness, Action, Agent, AgentId, Grid, World, N_PARTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Invent,
    Imitate,
}

/// An action visible to an agent, tagged with whose it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub id: AgentId,
    pub action: Action,
}

/// Invent with probability `p_invent`. Always consumes exactly one draw.
pub fn decide<R: Rng + ?Sized>(agent: &Agent, rng: &mut R) -> Decision {
    let u: f64 = rng.gen();
    if u < agent.p_invent {
        Decision::Invent
    } else {
        Decision::Imitate
    }
}

/// Number of components an invention rewrites.
pub fn components_to_change(r_change: f64) -> usize {
    ((r_change * N_PARTS as f64).round() as usize).clamp(1, N_PARTS)
}

/// Proposes a variant of the agent's current action.
///
/// Exactly `components_to_change(r_change)` distinct components are rewritten,
/// each to one of its two other values with odds `q + epsilon`.
pub fn invent<R: Rng + ?Sized>(agent: &Agent, epsilon: f64, rng: &mut R) -> Action {
    let k = components_to_change(agent.r_change);
    let mut next = *agent.action();
    for i in index::sample(rng, N_PARTS, k).iter() {
        let [a, b] = next.get(i).others();
        let wa = agent.knowledge.get(i, a) + epsilon;
        let wb = agent.knowledge.get(i, b) + epsilon;
        let u: f64 = rng.gen::<f64>() * (wa + wb);
        next.set(i, if u < wa { a } else { b });
    }
    next
}

fn pool_from(
    grid: &Grid,
    actions: &[Action],
    leader: Option<AgentId>,
    id: AgentId,
) -> Vec<Candidate> {
    let neighbors = grid.neighbors(id);
    let mut pool: Vec<Candidate> = neighbors
        .iter()
        .map(|&n| Candidate {
            id: n,
            action: actions[n],
        })
        .collect();
    if let Some(l) = leader {
        if l != id && !neighbors.contains(&l) {
            pool.push(Candidate {
                id: l,
                action: actions[l],
            });
        }
    }
    pool
}

/// The actions agent `id` can see: its four neighbours, plus the leader's
/// when broadcasting.
pub fn candidate_pool(world: &World, id: AgentId) -> Vec<Candidate> {
    let actions: Vec<Action> = world.agents.iter().map(|a| *a.action()).collect();
    pool_from(&world.grid, &actions, world.leader, id)
}

/// Copies the fittest candidate if it strictly beats the agent's own action.
/// Equal-fitness candidates resolve to the lowest agent id.
pub fn imitate(agent: &Agent, pool: &[Candidate]) -> Action {
    let mut best: Option<(f64, &Candidate)> = None;
    for c in pool {
        let f = fitness(&c.action);
        let better = match best {
            None => true,
            Some((bf, bc)) => f > bf || (f == bf && c.id < bc.id),
        };
        if better {
            best = Some((f, c));
        }
    }
    match best {
        Some((f, c)) if f > agent.fitness() => c.action,
        _ => *agent.action(),
    }
}

pub fn update_knowledge(agent: &mut Agent, observations: &[(Action, f64)]) {
    agent
        .knowledge
        .observe_all(observations.iter().map(|(a, f)| (a, *f)));
}

impl World {
    /// Advances one synchronous iteration and returns each agent's decision.
    ///
    /// Every agent reads the actions as they stood at the start of the
    /// iteration; random draws happen in agent-id order.
    pub fn step(&mut self) -> Vec<Decision> {
        let snapshot: Vec<Action> = self.agents.iter().map(|a| *a.action()).collect();
        let mut next = Vec::with_capacity(snapshot.len());
        let mut decisions = Vec::with_capacity(snapshot.len());
        for id in 0..self.agents.len() {
            let pool = pool_from(&self.grid, &snapshot, self.leader, id);
            let agent = &self.agents[id];
            let decision = decide(agent, &mut self.rng);
            let action = match decision {
                Decision::Invent => invent(agent, self.epsilon, &mut self.rng),
                Decision::Imitate => imitate(agent, &pool),
            };
            let mut observations: Vec<(Action, f64)> =
                pool.iter().map(|c| (c.action, fitness(&c.action))).collect();
            observations.push((action, fitness(&action)));
            update_knowledge(&mut self.agents[id], &observations);
            next.push(action);
            decisions.push(decision);
        }
        for (agent, action) in self.agents.iter_mut().zip(next) {
            agent.implement(action);
        }
        self.iteration += 1;
        decisions
    }
}
