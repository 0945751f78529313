//! Scripted policies used for smoke tests and baselines.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::{ActionSet, ConcreteConfig, Orientation};
use crate::sim::action::{DOWN, LEFT, NOOP, RIGHT, UP};
use crate::sim::geometry::{Rect, Vec2};
use crate::sim::{Action, WorldState};

pub trait Policy {
    fn act(&mut self, w: &WorldState) -> Action;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AgentKind {
    PaddleTracker,
    Crosser,
    Random,
}

impl AgentKind {
    pub const ALL: [AgentKind; 3] = [AgentKind::PaddleTracker, AgentKind::Crosser, AgentKind::Random];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::PaddleTracker => "paddle_tracker",
            AgentKind::Crosser => "crosser",
            AgentKind::Random => "random",
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AgentKind {
    type Err = AgentError;
    fn from_str(s: &str) -> Result<Self, AgentError> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| AgentError::UnknownKind(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentError {
    #[error("unknown policy {0:?} (expected paddle_tracker, crosser or random)")]
    UnknownKind(String),
    #[error("{agent} cannot play this game: {reason}")]
    Incompatible { agent: AgentKind, reason: &'static str },
}

/// Screen direction for a canonical one.
fn to_screen_dir(d: Vec2, o: Orientation) -> Vec2 {
    match o {
        Orientation::Bottom => d,
        Orientation::Left => Vec2::new(-d.y, d.x),
    }
}

/// The discrete action moving along a canonical axis direction.
fn action_toward(d: Vec2, o: Orientation) -> Action {
    let s = to_screen_dir(d, o);
    let idx = if s.x.abs() >= s.y.abs() {
        if s.x > 0.0 {
            RIGHT
        } else if s.x < 0.0 {
            LEFT
        } else {
            NOOP
        }
    } else if s.y > 0.0 {
        DOWN
    } else {
        UP
    };
    Action::Discrete(idx)
}

fn enabled(a: &ActionSet, act: Action) -> bool {
    match act {
        Action::Discrete(UP) => a.up,
        Action::Discrete(DOWN) => a.down,
        Action::Discrete(LEFT) => a.left,
        Action::Discrete(RIGHT) => a.right,
        _ => true,
    }
}

/// Follows the ball's predicted landing point with the paddle, aiming to hit
/// it slightly off-center so the bounce is steered away from the opponent.
#[derive(Debug, Clone)]
pub struct PaddleTracker;

impl PaddleTracker {
    /// Fraction of the half paddle used as aim offset.
    pub const AIM: f64 = 0.4;

    fn landing_x(w: &WorldState) -> Option<f64> {
        let b = w.ball.as_ref()?;
        if b.vel.y <= 0.0 {
            return Some(b.pos.x);
        }
        let t = ((w.player.rect.y - b.radius - b.pos.y) / b.vel.y).max(0.0);
        let lo = b.radius;
        let span = (1.0 - 2.0 * b.radius).max(1e-9);
        // Unfold the side-wall reflections.
        let u = (b.pos.x + b.vel.x * t - lo).rem_euclid(2.0 * span);
        Some(lo + if u > span { 2.0 * span - u } else { u })
    }
}

impl Policy for PaddleTracker {
    fn act(&mut self, w: &WorldState) -> Action {
        let Some(x) = Self::landing_x(w) else {
            return Action::Discrete(NOOP);
        };
        let half = w.player.rect.w / 2.0;
        // Hit with the side of the paddle facing away from the opponent.
        let away = match &w.opponent {
            Some(op) if op.rect.center().x > 0.5 => -1.0,
            Some(_) => 1.0,
            None => 0.0,
        };
        let target = x - away * Self::AIM * half;
        let dx = target - w.player.rect.center().x;
        let dead = w.cfg.player.speed / 2.0;
        if dx.abs() <= dead {
            Action::Discrete(NOOP)
        } else {
            action_toward(Vec2::new(dx.signum(), 0.0), w.orientation())
        }
    }
}

/// Walks toward the opposite side, stepping sideways around obstacles.
#[derive(Debug, Clone)]
pub struct Crosser {
    side: f64,
}

impl Crosser {
    /// How many frames of movement ahead are checked for obstacles.
    pub const LOOKAHEAD: f64 = 3.0;

    fn blocked(w: &WorldState, r: &Rect) -> bool {
        let min_y = w.min_y();
        if r.x < 0.0 || r.right() > 1.0 || r.y < min_y - 1.0 {
            return true;
        }
        w.barriers.iter().any(|b| b.overlaps(r))
            || w.blocks.iter().any(|b| b.harmful && b.rect.overlaps(r))
            || w.opponent.as_ref().is_some_and(|o| o.rect.overlaps(r))
    }
}

impl Policy for Crosser {
    fn act(&mut self, w: &WorldState) -> Action {
        let o = w.orientation();
        let a = &w.cfg.actions;
        let step = w.cfg.player.speed * Self::LOOKAHEAD;
        let p = w.player.rect;
        let forward = action_toward(Vec2::new(0.0, -1.0), o);
        if !Self::blocked(w, &p.translate(Vec2::new(0.0, -step))) {
            return forward;
        }
        for _ in 0..2 {
            let side = action_toward(Vec2::new(self.side, 0.0), o);
            if enabled(a, side) && !Self::blocked(w, &p.translate(Vec2::new(self.side * step, 0.0))) {
                return side;
            }
            self.side = -self.side;
        }
        Action::Discrete(NOOP)
    }
}

/// Uniform over the six discrete actions.
#[derive(Debug, Clone)]
pub struct RandomAgent {
    rng: ChaCha8Rng,
}

impl RandomAgent {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl Policy for RandomAgent {
    fn act(&mut self, _: &WorldState) -> Action {
        Action::Discrete(self.rng.random_range(0..6))
    }
}

/// Builds a scripted policy for a game, refusing games it cannot play.
pub fn scripted_agent(kind: AgentKind, cfg: &ConcreteConfig, seed: u64) -> Result<Box<dyn Policy>, AgentError> {
    let a = &cfg.actions;
    let o = cfg.player.orientation;
    let lateral = match o {
        Orientation::Bottom => a.left && a.right,
        Orientation::Left => a.up && a.down,
    };
    let forward = match o {
        Orientation::Bottom => a.up,
        Orientation::Left => a.right,
    };
    let incompatible = |reason| Err(AgentError::Incompatible { agent: kind, reason });
    match kind {
        AgentKind::PaddleTracker => {
            if cfg.ball.is_none() {
                return incompatible("the game has no ball");
            }
            if !lateral {
                return incompatible("the paddle cannot move sideways");
            }
            Ok(Box::new(PaddleTracker))
        }
        AgentKind::Crosser => {
            if !forward {
                return incompatible("the player cannot move toward the opposite side");
            }
            Ok(Box::new(Crosser { side: 1.0 }))
        }
        AgentKind::Random => Ok(Box::new(RandomAgent::new(seed))),
    }
}
