//! Domain types: actions, the fitness landscape, agents and the world.

mod action;
mod knowledge;
mod world;

pub use action::{fitness, Action, BodyPart, Move, MAX_FITNESS, N_ACTIONS, N_PARTS};
pub use knowledge::KnowledgeTable;
pub use world::{Agent, AgentId, Grid, World};
