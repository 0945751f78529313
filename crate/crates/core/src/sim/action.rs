use thiserror::Error;

use super::geometry::{dir_to_canonical, Vec2};
use crate::config::{ActionSet, Orientation};

pub const NOOP: u8 = 0;
pub const UP: u8 = 1;
pub const DOWN: u8 = 2;
pub const LEFT: u8 = 3;
pub const RIGHT: u8 = 4;
pub const SHOOT: u8 = 5;
pub const ACTION_COUNT: u8 = 6;

pub const ACTION_NAMES: [&str; 6] = ["noop", "up", "down", "left", "right", "shoot"];

/// Fire threshold for continuous actions.
pub const FIRE_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Action {
    /// `0: No-op, 1: Up, 2: Down, 3: Left, 4: Right, 5: Shoot`.
    Discrete(u8),
    /// Screen-space movement in `[-1, 1]²` and a fire level in `[0, 1]`.
    Continuous { movement: [f64; 2], fire: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("action index {0} outside 0..=5")]
pub struct InvalidAction(pub u8);

/// The intent fed to the physics update after disabled actions are mapped
/// to no-ops. Movement is in screen axes, each component in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EffectiveAction {
    pub movement: Vec2,
    pub fire: bool,
}

impl EffectiveAction {
    pub const NOOP: EffectiveAction = EffectiveAction {
        movement: Vec2::ZERO,
        fire: false,
    };

    /// Movement in the canonical simulation frame.
    pub fn canonical_movement(&self, o: Orientation) -> Vec2 {
        dir_to_canonical(self.movement, o)
    }
}

/// Maps a raw action onto what the game allows. Disabled discrete actions
/// become no-ops; continuous moves drop components along disabled
/// directions and fire is thresholded at [`FIRE_THRESHOLD`].
pub fn apply_action(actions: &ActionSet, a: Action) -> Result<EffectiveAction, InvalidAction> {
    match a {
        Action::Discrete(i) => {
            let (enabled, movement, fire) = match i {
                NOOP => (true, Vec2::ZERO, false),
                UP => (actions.up, Vec2::new(0.0, -1.0), false),
                DOWN => (actions.down, Vec2::new(0.0, 1.0), false),
                LEFT => (actions.left, Vec2::new(-1.0, 0.0), false),
                RIGHT => (actions.right, Vec2::new(1.0, 0.0), false),
                SHOOT => (actions.fire, Vec2::ZERO, true),
                other => return Err(InvalidAction(other)),
            };
            Ok(if enabled {
                EffectiveAction { movement, fire }
            } else {
                EffectiveAction::NOOP
            })
        }
        Action::Continuous { movement, fire } => {
            let clamp = |v: f64| if v.is_finite() { v.clamp(-1.0, 1.0) } else { 0.0 };
            let (mx, my) = (clamp(movement[0]), clamp(movement[1]));
            let x = if (mx < 0.0 && actions.left) || (mx > 0.0 && actions.right) {
                mx
            } else {
                0.0
            };
            let y = if (my < 0.0 && actions.up) || (my > 0.0 && actions.down) {
                my
            } else {
                0.0
            };
            Ok(EffectiveAction {
                movement: Vec2::new(x, y),
                fire: actions.fire && fire >= FIRE_THRESHOLD,
            })
        }
    }
}
