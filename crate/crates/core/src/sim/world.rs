use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::blocks::{layout_static, Block, Spawner};
use super::event::Status;
use super::geometry::{to_canonical, Rect, Vec2};
use crate::config::{BlockMotion, ConcreteConfig, Orientation};

/// Thickness of the top and bottom walls in play-area units.
pub const WALL_THICKNESS: f64 = 0.03;
/// Gap between a paddle and its home edge.
pub const EDGE_MARGIN: f64 = 0.03;
/// Half-angle of the cone the ball launches in, around the player direction.
pub const LAUNCH_HALF_ANGLE: f64 = std::f64::consts::FRAC_PI_6;
/// Entities outside this band are removed.
pub const PADDED_MIN: f64 = -1.5;
pub const PADDED_MAX: f64 = 1.5;

#[derive(Debug, Clone, PartialEq)]
pub struct Player {
    pub rect: Rect,
    pub velocity: Vec2,
    /// Frames until the player may fire again.
    pub cooldown: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub pos: Vec2,
    pub vel: Vec2,
    pub radius: f64,
    /// Nominal speed; every reflection is rescaled to it.
    pub speed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Opponent {
    pub rect: Rect,
    /// Strafing direction along x, `1.0` or `-1.0`.
    pub heading: f64,
    /// Frames until the next shot.
    pub cooldown: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Owner {
    Player,
    Opponent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bullet {
    pub rect: Rect,
    pub vel: Vec2,
    pub owner: Owner,
}

/// All live state of one episode, in the canonical frame where the player's
/// home edge is the bottom of the play area.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub cfg: Arc<ConcreteConfig>,
    pub player: Player,
    pub ball: Option<Ball>,
    pub opponent: Option<Opponent>,
    pub blocks: Vec<Block>,
    pub spawner: Option<Spawner>,
    pub bullets: Vec<Bullet>,
    pub barriers: Vec<Rect>,
    /// Ball returns off the player's paddle.
    pub returns: u32,
    pub score: i32,
    pub step_count: u32,
    pub status: Status,
    pub rng: ChaCha8Rng,
}

impl WorldState {
    pub fn orientation(&self) -> Orientation {
        self.cfg.player.orientation
    }

    /// Upper y bound for entities (below the top wall, if any).
    pub fn min_y(&self) -> f64 {
        if self.cfg.game_elements.top_wall {
            WALL_THICKNESS
        } else {
            0.0
        }
    }

    /// Lower y bound for entities (above the bottom wall, if any).
    pub fn max_y(&self) -> f64 {
        if self.cfg.game_elements.bottom_wall {
            1.0 - WALL_THICKNESS
        } else {
            1.0
        }
    }

    pub fn is_running(&self) -> bool {
        self.status == Status::Running
    }

    /// Hex SHA-256 over every field, including the rng position. Equal
    /// states give equal digests on every platform.
    pub fn digest(&self) -> String {
        let mut h = StateHasher::default();
        h.str(&self.cfg.digest());
        h.rect(&self.player.rect);
        h.vec(self.player.velocity);
        h.u64(self.player.cooldown as u64);
        match &self.ball {
            Some(b) => {
                h.u64(1);
                h.vec(b.pos);
                h.vec(b.vel);
                h.f64(b.radius);
                h.f64(b.speed);
            }
            None => h.u64(0),
        }
        match &self.opponent {
            Some(o) => {
                h.u64(1);
                h.rect(&o.rect);
                h.f64(o.heading);
                h.u64(o.cooldown as u64);
            }
            None => h.u64(0),
        }
        h.u64(self.blocks.len() as u64);
        for b in &self.blocks {
            h.rect(&b.rect);
            h.u64(b.value as i64 as u64);
            h.u64(b.harmful as u64);
            h.f64(b.heading);
        }
        match &self.spawner {
            Some(s) => {
                h.u64(1);
                h.f64(s.next_top);
                h.u64(s.remaining.map_or(u64::MAX, |r| r as u64));
                h.u64(s.row_index as u64);
            }
            None => h.u64(0),
        }
        h.u64(self.bullets.len() as u64);
        for b in &self.bullets {
            h.rect(&b.rect);
            h.vec(b.vel);
            h.u64((b.owner == Owner::Player) as u64);
        }
        h.u64(self.barriers.len() as u64);
        for r in &self.barriers {
            h.rect(r);
        }
        h.u64(self.returns as u64);
        h.u64(self.score as i64 as u64);
        h.u64(self.step_count as u64);
        h.str(self.status.name());
        h.0.update(self.rng.get_seed());
        h.u64(self.rng.get_word_pos() as u64);
        hex::encode(h.0.finalize())
    }
}

#[derive(Default)]
struct StateHasher(Sha256);

impl StateHasher {
    fn u64(&mut self, v: u64) {
        self.0.update(v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.u64(v.to_bits());
    }
    fn vec(&mut self, v: Vec2) {
        self.f64(v.x);
        self.f64(v.y);
    }
    fn rect(&mut self, r: &Rect) {
        for v in [r.x, r.y, r.w, r.h] {
            self.f64(v);
        }
    }
    fn str(&mut self, s: &str) {
        self.u64(s.len() as u64);
        self.0.update(s.as_bytes());
    }
}

/// Places every entity for a new episode. All randomness comes from a
/// stream seeded with `seed`, so equal inputs give equal worlds.
pub fn init_world(cfg: impl Into<Arc<ConcreteConfig>>, seed: u64) -> WorldState {
    let cfg: Arc<ConcreteConfig> = cfg.into();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let o = cfg.player.orientation;
    let p = &cfg.player;

    let player = Player {
        rect: Rect::new(0.5 - p.width / 2.0, 1.0 - p.height - EDGE_MARGIN, p.width, p.height),
        velocity: Vec2::ZERO,
        cooldown: 0,
    };

    let ball = cfg.ball.as_ref().map(|b| {
        let angle = rng.random_range(-LAUNCH_HALF_ANGLE..=LAUNCH_HALF_ANGLE);
        Ball {
            pos: Vec2::new(0.5, 0.5),
            vel: Vec2::new(angle.sin(), angle.cos()) * b.speed,
            radius: b.radius,
            speed: b.speed,
        }
    });

    let opponent = cfg.opponent.as_ref().map(|op| Opponent {
        rect: Rect::new(0.5 - op.width / 2.0, EDGE_MARGIN, op.width, op.height),
        heading: 1.0,
        cooldown: op.fire_cooldown,
    });

    let (blocks, spawner) = match &cfg.blocks {
        Some(b) => {
            let area = to_canonical(Rect::from_norm(&b.creation_area), o);
            match b.motion {
                BlockMotion::Fall => (Vec::new(), Some(Spawner::new(b, area))),
                _ => (layout_static(b, area, &mut rng), None),
            }
        }
        None => (Vec::new(), None),
    };

    let barriers = cfg
        .barriers
        .as_ref()
        .map(|b| b.layout.iter().map(|r| to_canonical(Rect::from_norm(r), o)).collect())
        .unwrap_or_default();

    WorldState {
        cfg,
        player,
        ball,
        opponent,
        blocks,
        spawner,
        bullets: Vec::new(),
        barriers,
        returns: 0,
        score: 0,
        step_count: 0,
        status: Status::Running,
        rng,
    }
}
