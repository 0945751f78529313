//! Per-episode resolution of distribution-valued definitions.

use rand::Rng;

use super::{
    ActionSet, BallSettings, BarrierSettings, BlockMotion, BlockSettings, DisplaySettings,
    EpisodeSettings, GameConfig, GameElements, Goal, ImageSettings, Meta, NormRect,
    OpponentBehavior, OpponentSettings, Orientation, ParamKind, ParamValue, PlayerSettings, Rgb,
};
use crate::config::param::clamp_color;

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteDisplay {
    pub background_color: Rgb,
    pub ui_color: Rgb,
    pub indicator_color_1: Rgb,
    pub indicator_color_2: Rgb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcretePlayer {
    pub width: f64,
    pub height: f64,
    pub speed: f64,
    pub color: Rgb,
    pub steering: f64,
    pub orientation: Orientation,
    pub fire_cooldown: u32,
    pub bullet_speed: f64,
    pub bullet_width: f64,
    pub bullet_height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteOpponent {
    pub speed: f64,
    pub width: f64,
    pub height: f64,
    pub color: Rgb,
    pub fire_cooldown: u32,
    pub behavior: OpponentBehavior,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteBall {
    pub speed: f64,
    pub radius: f64,
    pub color: Rgb,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteBlocks {
    pub creation_area: NormRect,
    pub rows: u32,
    pub cols: u32,
    pub per_row: u32,
    pub spacing: f64,
    pub color: Rgb,
    pub motion: BlockMotion,
    pub speed: f64,
    pub harmful: bool,
    pub points: i32,
    pub penalize_missed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteBarriers {
    pub color: Rgb,
    pub layout: Vec<NormRect>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConcreteImage {
    pub color_inversion: bool,
    /// Counter-clockwise quarter turns, one of 0, 90, 180, 270.
    pub rotation: u16,
    pub hue_shift: f64,
    pub saturation_shift: f64,
    pub value_shift: f64,
}

/// A fully resolved game definition for one episode.
///
/// Element sections are present only when their `game_elements` flag is set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteConfig {
    pub meta: Meta,
    pub actions: ActionSet,
    pub game_elements: GameElements,
    pub display: ConcreteDisplay,
    pub player: ConcretePlayer,
    pub opponent: Option<ConcreteOpponent>,
    pub ball: Option<ConcreteBall>,
    pub blocks: Option<ConcreteBlocks>,
    pub barriers: Option<ConcreteBarriers>,
    pub image: ConcreteImage,
    pub max_steps: u32,
    pub goal: Goal,
    pub quota: u32,
}

/// Resolves every parameter of `cfg`, drawing from `rng` in canonical field
/// order. Equal rng states give equal results.
pub fn sample<R: Rng + ?Sized>(cfg: &GameConfig, rng: &mut R) -> ConcreteConfig {
    let mut resolved = cfg.clone();
    for (_, kind, value) in resolved.params_mut() {
        *value = match kind {
            ParamKind::Color => {
                let c = value.sample_color(rng);
                ParamValue::StaticColor([c[0] as i32, c[1] as i32, c[2] as i32])
            }
            _ => ParamValue::Static(value.sample_number(kind, rng)),
        };
    }
    ConcreteConfig::from_resolved(&resolved)
}

fn num(p: &ParamValue) -> f64 {
    match p {
        ParamValue::Static(v) => *v,
        other => panic!("unresolved parameter {other:?}"),
    }
}

fn count(p: &ParamValue) -> u32 {
    num(p).max(0.0).min(u32::MAX as f64) as u32
}

fn rgb(p: &ParamValue) -> Rgb {
    match p {
        ParamValue::StaticColor(c) => clamp_color(*c),
        other => panic!("unresolved color {other:?}"),
    }
}

impl ConcreteConfig {
    /// Builds from a config whose parameters are all static.
    fn from_resolved(cfg: &GameConfig) -> Self {
        let el = cfg.game_elements;
        let d = &cfg.display_settings;
        let p = &cfg.player_settings;
        let i = &cfg.image_settings;
        ConcreteConfig {
            meta: cfg.meta.clone(),
            actions: cfg.actions,
            game_elements: el,
            display: ConcreteDisplay {
                background_color: rgb(&d.background_color),
                ui_color: rgb(&d.ui_color),
                indicator_color_1: rgb(&d.indicator_color_1),
                indicator_color_2: rgb(&d.indicator_color_2),
            },
            player: ConcretePlayer {
                width: num(&p.width),
                height: num(&p.height),
                speed: num(&p.speed),
                color: rgb(&p.color),
                steering: num(&p.steering),
                orientation: p.orientation,
                fire_cooldown: count(&p.fire_cooldown),
                bullet_speed: num(&p.bullet_speed),
                bullet_width: num(&p.bullet_width),
                bullet_height: num(&p.bullet_height),
            },
            opponent: cfg
                .opponent_settings
                .as_ref()
                .filter(|_| el.opponent)
                .map(|o| ConcreteOpponent {
                    speed: num(&o.speed),
                    width: num(&o.width),
                    height: num(&o.height),
                    color: rgb(&o.color),
                    fire_cooldown: count(&o.fire_cooldown),
                    behavior: o.behavior,
                }),
            ball: cfg.ball_settings.as_ref().filter(|_| el.ball).map(|b| ConcreteBall {
                speed: num(&b.speed),
                radius: num(&b.radius),
                color: rgb(&b.color),
            }),
            blocks: cfg
                .blocks_settings
                .as_ref()
                .filter(|_| el.blocks)
                .map(|b| ConcreteBlocks {
                    creation_area: b.creation_area,
                    rows: count(&b.rows),
                    cols: count(&b.cols),
                    per_row: count(&b.per_row),
                    spacing: num(&b.spacing),
                    color: rgb(&b.color),
                    motion: b.static_weave_fall,
                    speed: num(&b.speed),
                    harmful: b.harmful,
                    points: num(&b.points).clamp(-1000.0, 1000.0) as i32,
                    penalize_missed: b.penalize_missed,
                }),
            barriers: cfg
                .static_barrier_settings
                .as_ref()
                .filter(|_| el.static_barriers)
                .map(|b| ConcreteBarriers {
                    color: rgb(&b.color),
                    layout: b.layout.clone(),
                }),
            image: ConcreteImage {
                color_inversion: i.color_inversion,
                rotation: num(&i.rotation) as u16 % 360,
                hue_shift: num(&i.hue_shift),
                saturation_shift: num(&i.saturation_shift),
                value_shift: num(&i.value_shift),
            },
            max_steps: count(&cfg.episode.max_steps).max(1),
            goal: cfg.episode.goal,
            quota: count(&cfg.episode.quota),
        }
    }

    /// The equivalent all-static definition. Sections of disabled elements
    /// come back empty.
    pub fn to_game_config(&self) -> GameConfig {
        let c = |rgb: Rgb| ParamValue::StaticColor([rgb[0] as i32, rgb[1] as i32, rgb[2] as i32]);
        let n = ParamValue::Static;
        let p = &self.player;
        GameConfig {
            meta: self.meta.clone(),
            actions: self.actions,
            game_elements: self.game_elements,
            display_settings: DisplaySettings {
                background_color: c(self.display.background_color),
                ui_color: c(self.display.ui_color),
                indicator_color_1: c(self.display.indicator_color_1),
                indicator_color_2: c(self.display.indicator_color_2),
            },
            player_settings: PlayerSettings {
                width: n(p.width),
                height: n(p.height),
                speed: n(p.speed),
                color: c(p.color),
                steering: n(p.steering),
                orientation: p.orientation,
                fire_cooldown: n(p.fire_cooldown as f64),
                bullet_speed: n(p.bullet_speed),
                bullet_width: n(p.bullet_width),
                bullet_height: n(p.bullet_height),
            },
            opponent_settings: self.opponent.as_ref().map(|o| OpponentSettings {
                speed: n(o.speed),
                width: n(o.width),
                height: n(o.height),
                color: c(o.color),
                fire_cooldown: n(o.fire_cooldown as f64),
                behavior: o.behavior,
            }),
            ball_settings: self.ball.as_ref().map(|b| BallSettings {
                speed: n(b.speed),
                radius: n(b.radius),
                color: c(b.color),
            }),
            blocks_settings: self.blocks.as_ref().map(|b| BlockSettings {
                creation_area: b.creation_area,
                rows: n(b.rows as f64),
                cols: n(b.cols as f64),
                per_row: n(b.per_row as f64),
                spacing: n(b.spacing),
                color: c(b.color),
                static_weave_fall: b.motion,
                speed: n(b.speed),
                harmful: b.harmful,
                points: n(b.points as f64),
                penalize_missed: b.penalize_missed,
            }),
            static_barrier_settings: self.barriers.as_ref().map(|b| BarrierSettings {
                color: c(b.color),
                layout: b.layout.clone(),
            }),
            image_settings: ImageSettings {
                color_inversion: self.image.color_inversion,
                rotation: n(self.image.rotation as f64),
                hue_shift: n(self.image.hue_shift),
                saturation_shift: n(self.image.saturation_shift),
                value_shift: n(self.image.value_shift),
            },
            episode: EpisodeSettings {
                max_steps: n(self.max_steps as f64),
                goal: self.goal,
                quota: n(self.quota as f64),
            },
        }
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let text = super::serialize(&self.to_game_config());
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn static_config_resolves_to_itself() {
        let mut cfg = GameConfig::default();
        cfg.game_elements.blocks = true;
        cfg.blocks_settings = Some(BlockSettings::default());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let concrete = sample(&cfg, &mut rng);
        assert_eq!(concrete.to_game_config(), cfg);
    }

    #[test]
    fn same_seed_same_sample() {
        let mut cfg = GameConfig::default();
        cfg.player_settings.width = ParamValue::Uniform { low: 0.1, high: 0.3 };
        cfg.player_settings.color = ParamValue::ColorSet(vec![[1, 1, 1], [2, 2, 2], [3, 3, 3]]);
        let a = sample(&cfg, &mut ChaCha8Rng::seed_from_u64(77));
        let b = sample(&cfg, &mut ChaCha8Rng::seed_from_u64(77));
        assert_eq!(a, b);
        assert!((0.1..=0.3).contains(&a.player.width));
    }

    #[test]
    fn disabled_elements_are_dropped() {
        let mut cfg = GameConfig::default();
        cfg.ball_settings = Some(BallSettings::default());
        let concrete = sample(&cfg, &mut ChaCha8Rng::seed_from_u64(0));
        assert!(concrete.ball.is_none());
    }
}
