//! Fixed-step simulation of one episode.

pub mod action;
pub mod blocks;
pub mod event;
pub mod geometry;
pub mod opponent;
pub mod physics;
pub mod step;
pub mod world;

pub use action::{apply_action, Action, EffectiveAction, InvalidAction, ACTION_COUNT, ACTION_NAMES};
pub use blocks::{update_blocks, Block, Spawner};
pub use event::{EventEffect, EventKind, ScoreEvent, Status, StepOutcome, MAX_SCORE, MIN_SCORE};
pub use geometry::{Rect, Vec2};
pub use opponent::update_opponent;
pub use physics::reflect_ball;
pub use step::{step_effective, step_world, StepError};
pub use world::{init_world, Ball, Bullet, Opponent, Owner, Player, WorldState};
