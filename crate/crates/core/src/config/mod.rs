//! Declarative game definitions.
//!
//! A [`GameConfig`] mirrors the JSON definition file section by section. Its
//! numeric and color fields are [`ParamValue`]s, so a single definition can
//! describe a whole distribution of games. [`sample`] resolves one episode's
//! [`ConcreteConfig`], and [`interpolate`] blends two structurally identical
//! definitions.

mod error;
mod interpolate;
mod param;
mod parse;
mod sample;
mod serialize;
mod validate;

pub use error::ConfigError;
pub use interpolate::{interpolate, lerp};
pub use param::{
    clamp_color, round_half_up, snap_quarter_turn, ParamKind, ParamValue, RawColor, Rgb, MAX_SIZE,
    MIN_SIZE,
};
pub use parse::{parse_game_config, parse_game_value, ParsedConfig};
pub use sample::{
    sample, ConcreteBall, ConcreteBarriers, ConcreteBlocks, ConcreteConfig, ConcreteDisplay, ConcreteImage,
    ConcreteOpponent, ConcretePlayer,
};
pub use serialize::serialize;
pub use validate::{validate, Issue, Severity, ValidationReport};

use std::fmt;

/// Normalized rectangle `[x, y, w, h]` in play-area units, origin top-left.
pub type NormRect = [f64; 4];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Meta {
    pub description: String,
}

/// Which of the six discrete actions a game responds to. No-op is always
/// available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ActionSet {
    pub up: bool,
    pub down: bool,
    pub left: bool,
    pub right: bool,
    pub fire: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GameElements {
    /// Wall along the edge opposite the player.
    pub top_wall: bool,
    /// Wall along the player's own edge.
    pub bottom_wall: bool,
    pub ball: bool,
    pub opponent: bool,
    pub blocks: bool,
    pub static_barriers: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DisplaySettings {
    pub background_color: ParamValue,
    pub ui_color: ParamValue,
    pub indicator_color_1: ParamValue,
    pub indicator_color_2: ParamValue,
}

impl Default for DisplaySettings {
    fn default() -> Self {
        Self {
            background_color: ParamValue::StaticColor([0, 0, 0]),
            ui_color: ParamValue::StaticColor([80, 80, 80]),
            indicator_color_1: ParamValue::StaticColor([200, 200, 160]),
            indicator_color_2: ParamValue::StaticColor([0, 0, 0]),
        }
    }
}

/// Edge of the play area the player's paddle starts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Bottom edge, paddle moves left/right. Opposite side is the top.
    #[default]
    Bottom,
    /// Left edge, paddle moves up/down. Opposite side is the right.
    Left,
}

/// Player paddle/avatar. `width` is the extent along the paddle's movement
/// axis and `height` its thickness, whichever edge it sits on.
#[derive(Debug, Clone, PartialEq)]
pub struct PlayerSettings {
    pub width: ParamValue,
    pub height: ParamValue,
    pub speed: ParamValue,
    pub color: ParamValue,
    pub steering: ParamValue,
    pub orientation: Orientation,
    /// Frames between player shots.
    pub fire_cooldown: ParamValue,
    pub bullet_speed: ParamValue,
    pub bullet_width: ParamValue,
    pub bullet_height: ParamValue,
}

impl Default for PlayerSettings {
    fn default() -> Self {
        Self {
            width: ParamValue::Static(0.15),
            height: ParamValue::Static(0.05),
            speed: ParamValue::Static(0.012),
            color: ParamValue::StaticColor([255, 255, 255]),
            steering: ParamValue::Static(0.5),
            orientation: Orientation::Bottom,
            fire_cooldown: ParamValue::Static(15.0),
            bullet_speed: ParamValue::Static(0.03),
            bullet_width: ParamValue::Static(0.01),
            bullet_height: ParamValue::Static(0.03),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OpponentBehavior {
    /// Follows the ball along its own edge.
    #[default]
    PaddleTrack,
    /// Strafes back and forth along its edge.
    Shooter,
    /// Moves straight at the player.
    Chaser,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpponentSettings {
    pub speed: ParamValue,
    pub width: ParamValue,
    pub height: ParamValue,
    pub color: ParamValue,
    /// Mean frames between shots; zero disables firing.
    pub fire_cooldown: ParamValue,
    pub behavior: OpponentBehavior,
}

impl Default for OpponentSettings {
    fn default() -> Self {
        Self {
            speed: ParamValue::Static(0.008),
            width: ParamValue::Static(0.15),
            height: ParamValue::Static(0.05),
            color: ParamValue::StaticColor([255, 80, 80]),
            fire_cooldown: ParamValue::Static(0.0),
            behavior: OpponentBehavior::PaddleTrack,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BallSettings {
    pub speed: ParamValue,
    pub radius: ParamValue,
    pub color: ParamValue,
}

impl Default for BallSettings {
    fn default() -> Self {
        Self {
            speed: ParamValue::Static(0.012),
            radius: ParamValue::Static(0.02),
            color: ParamValue::StaticColor([255, 255, 255]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMotion {
    #[default]
    Static,
    /// Horizontal oscillation, reversing at the side edges.
    Weave,
    /// Continuous descent toward the player's side.
    Fall,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockSettings {
    pub creation_area: NormRect,
    pub rows: ParamValue,
    pub cols: ParamValue,
    pub per_row: ParamValue,
    /// Fraction of each grid cell left empty around a block.
    pub spacing: ParamValue,
    pub color: ParamValue,
    pub static_weave_fall: BlockMotion,
    pub speed: ParamValue,
    pub harmful: bool,
    pub points: ParamValue,
    /// Falling blocks that escape past the player's edge end the episode.
    pub penalize_missed: bool,
}

impl Default for BlockSettings {
    fn default() -> Self {
        Self {
            creation_area: [0.05, 0.1, 0.9, 0.3],
            rows: ParamValue::Static(4.0),
            cols: ParamValue::Static(5.0),
            per_row: ParamValue::Static(5.0),
            spacing: ParamValue::Static(0.1),
            color: ParamValue::StaticColor([162, 219, 252]),
            static_weave_fall: BlockMotion::Static,
            speed: ParamValue::Static(0.0),
            harmful: false,
            points: ParamValue::Static(5.0),
            penalize_missed: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BarrierSettings {
    pub color: ParamValue,
    pub layout: Vec<NormRect>,
}

impl Default for BarrierSettings {
    fn default() -> Self {
        Self {
            color: ParamValue::StaticColor([38, 101, 209]),
            layout: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ImageSettings {
    pub color_inversion: bool,
    pub rotation: ParamValue,
    pub hue_shift: ParamValue,
    pub saturation_shift: ParamValue,
    pub value_shift: ParamValue,
}

impl Default for ImageSettings {
    fn default() -> Self {
        Self {
            color_inversion: false,
            rotation: ParamValue::Static(0.0),
            hue_shift: ParamValue::Static(0.0),
            saturation_shift: ParamValue::Static(0.0),
            value_shift: ParamValue::Static(0.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Goal {
    /// Win by reaching the opposite edge.
    Cross,
    /// Win when block points total 100 or every block is gone.
    #[default]
    ClearBlocks,
    /// Win by shooting the opponent or getting the ball past it.
    DefeatOpponent,
    /// Win after `quota` paddle returns of the ball.
    Survive,
}

pub const DEFAULT_MAX_STEPS: f64 = 5000.0;

#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeSettings {
    pub max_steps: ParamValue,
    pub goal: Goal,
    pub quota: ParamValue,
}

impl Default for EpisodeSettings {
    fn default() -> Self {
        Self {
            max_steps: ParamValue::Static(DEFAULT_MAX_STEPS),
            goal: Goal::ClearBlocks,
            quota: ParamValue::Static(0.0),
        }
    }
}

/// A complete, possibly distribution-valued game definition.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GameConfig {
    pub meta: Meta,
    pub actions: ActionSet,
    pub game_elements: GameElements,
    pub display_settings: DisplaySettings,
    pub player_settings: PlayerSettings,
    pub opponent_settings: Option<OpponentSettings>,
    pub ball_settings: Option<BallSettings>,
    pub blocks_settings: Option<BlockSettings>,
    pub static_barrier_settings: Option<BarrierSettings>,
    pub image_settings: ImageSettings,
    pub episode: EpisodeSettings,
}

/// A parameter slot: dotted path, kind and value.
pub type ParamRef<'a> = (String, ParamKind, &'a ParamValue);
pub type ParamMut<'a> = (String, ParamKind, &'a mut ParamValue);

macro_rules! param_table {
    ($section:literal, $s:expr, $wrap:ident, [$(($field:ident, $kind:ident)),* $(,)?]) => {
        vec![$(
            (format!("{}.{}", $section, stringify!($field)), ParamKind::$kind, $wrap!($s.$field)),
        )*]
    };
}

macro_rules! shared {
    ($e:expr) => {
        &$e
    };
}

macro_rules! exclusive {
    ($e:expr) => {
        &mut $e
    };
}

macro_rules! all_params {
    ($cfg:expr, $wrap:ident) => {{
        let mut out = Vec::new();
        let d = $wrap!($cfg.display_settings);
        out.extend(param_table!("display_settings", d, $wrap, [
            (background_color, Color),
            (ui_color, Color),
            (indicator_color_1, Color),
            (indicator_color_2, Color),
        ]));
        let p = $wrap!($cfg.player_settings);
        out.extend(param_table!("player_settings", p, $wrap, [
            (width, Size),
            (height, Size),
            (speed, Speed),
            (color, Color),
            (steering, Unit),
            (fire_cooldown, Integer),
            (bullet_speed, Speed),
            (bullet_width, Size),
            (bullet_height, Size),
        ]));
        if let Some(o) = $wrap!($cfg.opponent_settings) {
            out.extend(param_table!("opponent_settings", o, $wrap, [
                (speed, Speed),
                (width, Size),
                (height, Size),
                (color, Color),
                (fire_cooldown, Integer),
            ]));
        }
        if let Some(b) = $wrap!($cfg.ball_settings) {
            out.extend(param_table!("ball_settings", b, $wrap, [
                (speed, Speed),
                (radius, Size),
                (color, Color),
            ]));
        }
        if let Some(b) = $wrap!($cfg.blocks_settings) {
            out.extend(param_table!("blocks_settings", b, $wrap, [
                (rows, Integer),
                (cols, Integer),
                (per_row, Integer),
                (spacing, Unit),
                (color, Color),
                (speed, Speed),
                (points, Integer),
            ]));
        }
        if let Some(b) = $wrap!($cfg.static_barrier_settings) {
            out.extend(param_table!("static_barrier_settings", b, $wrap, [(color, Color)]));
        }
        let i = $wrap!($cfg.image_settings);
        out.extend(param_table!("image_settings", i, $wrap, [
            (rotation, QuarterTurn),
            (hue_shift, Real),
            (saturation_shift, Real),
            (value_shift, Real),
        ]));
        let e = $wrap!($cfg.episode);
        out.extend(param_table!("episode", e, $wrap, [
            (max_steps, Integer),
            (quota, Integer),
        ]));
        out
    }};
}

impl GameConfig {
    /// Every parameter slot in canonical order.
    pub fn params(&self) -> Vec<ParamRef<'_>> {
        all_params!(self, shared)
    }

    pub fn params_mut(&mut self) -> Vec<ParamMut<'_>> {
        all_params!(self, exclusive)
    }

    /// True when no parameter is distribution-valued.
    pub fn is_static(&self) -> bool {
        self.params().iter().all(|(_, _, v)| !v.is_distribution())
    }

    pub fn orientation(&self) -> Orientation {
        self.player_settings.orientation
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Bottom => "bottom",
            Orientation::Left => "left",
        })
    }
}

impl fmt::Display for OpponentBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpponentBehavior::PaddleTrack => "paddle_track",
            OpponentBehavior::Shooter => "shooter",
            OpponentBehavior::Chaser => "chaser",
        })
    }
}

impl fmt::Display for BlockMotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockMotion::Static => "static",
            BlockMotion::Weave => "weave",
            BlockMotion::Fall => "fall",
        })
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Goal::Cross => "cross",
            Goal::ClearBlocks => "clear_blocks",
            Goal::DefeatOpponent => "defeat_opponent",
            Goal::Survive => "survive",
        })
    }
}
