//! The built-in game library.
//!
//! Definitions live as JSON files under `games/` in this crate and are
//! embedded at compile time. `games/index.json` fixes the listing order,
//! display names, difficulty and where each rule set comes from.

use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::config::{parse_game_config, BlockMotion, GameConfig, Goal, OpponentBehavior, ParamValue};

const INDEX: &str = include_str!("../../games/index.json");

macro_rules! embedded {
    ($($file:literal),* $(,)?) => {
        &[$(($file, include_str!(concat!("../../games/", $file)))),*]
    };
}

const FILES: &[(&str, &str)] = embedded![
    "avalanche.json",
    "battle_pong.json",
    "breakout.json",
    "collect_five.json",
    "dodgeball_duel.json",
    "duel.json",
    "erosion.json",
    "hedge_maze.json",
    "interference.json",
    "juggling.json",
    "keep_ups.json",
    "last_block.json",
    "pong.json",
    "pong_breakout.json",
    "seek_destroy.json",
    "shootout.json",
    "sweeper.json",
    "target_practice.json",
    "dungeon.json",
    "freeway.json",
    "haunted_hallway.json",
    "invasion.json",
    "lava_maze.json",
    "tunneler.json",
    "variants/breakout_easy.json",
    "variants/freeway_easy.json",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Difficulty {
    SolvableByBaseline,
    Challenge,
}

/// Mechanics a game uses, derived from its definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Elements {
    pub paddle: bool,
    pub ball: bool,
    pub blocks: bool,
    pub opponent: bool,
    pub bullets: bool,
    pub hazards: bool,
    pub barriers: bool,
    pub traversal: bool,
}

impl Elements {
    pub fn of(cfg: &GameConfig) -> Self {
        let el = &cfg.game_elements;
        let blocks = cfg.blocks_settings.as_ref().filter(|_| el.blocks);
        let opponent = cfg.opponent_settings.as_ref().filter(|_| el.opponent);
        let opponent_fires = opponent.is_some_and(|o| o.fire_cooldown != ParamValue::Static(0.0));
        Elements {
            paddle: el.ball,
            ball: el.ball,
            blocks: blocks.is_some_and(|b| !b.harmful),
            opponent: opponent.is_some(),
            bullets: cfg.actions.fire || opponent_fires,
            hazards: blocks.is_some_and(|b| b.harmful)
                || opponent.is_some_and(|o| o.behavior == OpponentBehavior::Chaser),
            barriers: el.static_barriers,
            traversal: cfg.episode.goal == Goal::Cross,
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        [
            (self.paddle, "paddle"),
            (self.ball, "ball"),
            (self.blocks, "blocks"),
            (self.opponent, "opponent"),
            (self.bullets, "bullets"),
            (self.hazards, "hazards"),
            (self.barriers, "barriers"),
            (self.traversal, "traversal"),
        ]
        .into_iter()
        .filter_map(|(on, n)| on.then_some(n))
        .collect()
    }
}

#[derive(Debug, Clone)]
pub struct GameEntry {
    /// Display name, e.g. `"Hedge Maze"`.
    pub name: String,
    /// Registry key, e.g. `"hedge_maze"`.
    pub key: String,
    pub config: GameConfig,
    pub elements: Elements,
    pub difficulty: Difficulty,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("unknown game {name:?}{}", suggestion.as_ref().map(|s| format!(", did you mean {s:?}?")).unwrap_or_default())]
    Unknown { name: String, suggestion: Option<String> },
}

#[derive(Deserialize)]
struct IndexFile {
    games: Vec<IndexEntry>,
}

#[derive(Deserialize)]
struct IndexEntry {
    name: String,
    file: String,
    provenance: String,
    difficulty: Difficulty,
}

fn embedded_text(file: &str) -> &'static str {
    FILES
        .iter()
        .find(|(f, _)| *f == file)
        .map(|(_, text)| *text)
        .unwrap_or_else(|| panic!("game file {file} is not embedded"))
}

fn parse_embedded(file: &str) -> GameConfig {
    parse_game_config(embedded_text(file))
        .unwrap_or_else(|e| panic!("built-in game {file} does not parse: {e}"))
        .config
}

fn normalize(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, ' ' | '_' | '-'))
        .flat_map(char::to_lowercase)
        .collect()
}

/// All 24 built-in games in their fixed order.
pub fn list_games() -> &'static [GameEntry] {
    static GAMES: OnceLock<Vec<GameEntry>> = OnceLock::new();
    GAMES.get_or_init(|| {
        let index: IndexFile = serde_json::from_str(INDEX).expect("games/index.json is valid");
        index
            .games
            .into_iter()
            .map(|e| {
                let config = parse_embedded(&e.file);
                GameEntry {
                    key: e.file.trim_end_matches(".json").to_string(),
                    elements: Elements::of(&config),
                    name: e.name,
                    config,
                    difficulty: e.difficulty,
                    provenance: e.provenance,
                }
            })
            .collect()
    })
}

pub fn challenge_games() -> impl Iterator<Item = &'static GameEntry> {
    list_games().iter().filter(|g| g.difficulty == Difficulty::Challenge)
}

/// Looks a game up by display name or key, ignoring case, spaces,
/// underscores and hyphens.
pub fn find_game(name: &str) -> Result<&'static GameEntry, GameError> {
    let wanted = normalize(name);
    let games = list_games();
    if let Some(g) = games.iter().find(|g| normalize(&g.key) == wanted) {
        return Ok(g);
    }
    let suggestion = games
        .iter()
        .map(|g| (strsim::levenshtein(&normalize(&g.key), &wanted), &g.key))
        .min_by_key(|(d, _)| *d)
        .filter(|(d, _)| *d <= 3.max(wanted.len() / 3))
        .map(|(_, k)| k.clone());
    Err(GameError::Unknown {
        name: name.to_string(),
        suggestion,
    })
}

pub fn load_game(name: &str) -> Result<GameConfig, GameError> {
    find_game(name).map(|g| g.config.clone())
}

/// Extra definitions that are not part of the 24, such as easy variants
/// used as curriculum starting points.
pub fn load_variant(name: &str) -> Result<GameConfig, GameError> {
    let file = format!("variants/{}.json", normalize_key(name));
    if FILES.iter().any(|(f, _)| *f == file) {
        Ok(parse_embedded(&file))
    } else {
        Err(GameError::Unknown {
            name: name.to_string(),
            suggestion: None,
        })
    }
}

fn normalize_key(name: &str) -> String {
    name.trim().to_lowercase().replace([' ', '-'], "_")
}

/// Names of the available variants.
pub fn variant_names() -> Vec<&'static str> {
    FILES
        .iter()
        .filter_map(|(f, _)| f.strip_prefix("variants/")?.strip_suffix(".json"))
        .collect()
}

/// Total points the blocks of a definition hand out, when all block
/// parameters are static. Falling blocks count the spawner budget.
pub fn block_points_total(cfg: &GameConfig) -> Option<i64> {
    let b = cfg.blocks_settings.as_ref().filter(|_| cfg.game_elements.blocks)?;
    let num = |p: &ParamValue| match p {
        ParamValue::Static(v) => Some(*v as i64),
        _ => None,
    };
    let points = num(&b.points)?;
    if b.static_weave_fall == BlockMotion::Fall {
        if points <= 0 {
            return Some(0);
        }
        let count = (crate::sim::MAX_SCORE as i64 + points - 1) / points;
        return Some(count * points);
    }
    Some(num(&b.rows)? * num(&b.per_row)? * points)
}

/// Lowest and highest final score the event table allows for a definition.
pub fn score_range(cfg: &GameConfig) -> (i32, i32) {
    use crate::sim::{MAX_SCORE, MIN_SCORE};
    let el = &cfg.game_elements;
    let blocks = cfg.blocks_settings.as_ref().filter(|_| el.blocks);
    let opponent = cfg.opponent_settings.as_ref().filter(|_| el.opponent);
    let o = cfg.player_settings.orientation;
    let a = &cfg.actions;
    let forward = match o {
        crate::config::Orientation::Bottom => a.up,
        crate::config::Orientation::Left => a.right,
    };
    let can_lose = (el.ball && !el.bottom_wall)
        || blocks.is_some_and(|b| b.harmful || (b.static_weave_fall == BlockMotion::Fall && b.penalize_missed))
        || opponent.is_some_and(|op| {
            op.fire_cooldown != ParamValue::Static(0.0) || op.behavior == OpponentBehavior::Chaser || forward
        });
    let can_win = cfg.episode.goal == Goal::Cross
        || (el.ball && !el.top_wall)
        || (opponent.is_some() && a.fire)
        || (cfg.episode.goal == Goal::Survive && el.ball)
        || block_points_total(cfg).is_some_and(|t| t >= MAX_SCORE as i64);
    (if can_lose { MIN_SCORE } else { 0 }, if can_win { MAX_SCORE } else { 0 })
}

/// Palette shared by every game when a common look is wanted.
pub mod palette {
    use crate::config::RawColor;
    pub const BACKGROUND: RawColor = [0, 0, 0];
    pub const UI: RawColor = [80, 80, 80];
    pub const INDICATOR_ON: RawColor = [200, 200, 160];
    pub const INDICATOR_OFF: RawColor = [0, 0, 0];
    pub const PLAYER: RawColor = [255, 255, 255];
    pub const BALL: RawColor = [255, 255, 255];
    pub const OPPONENT: RawColor = [255, 80, 80];
    pub const COLLECTABLE: RawColor = [162, 219, 252];
    pub const HAZARD: RawColor = [255, 120, 40];
    pub const BARRIER: RawColor = [38, 101, 209];
}

/// Replaces every color in `cfg` with the common palette, so games differ
/// only in layout and rules.
pub fn common_palette(cfg: &GameConfig) -> GameConfig {
    use palette::*;
    let c = ParamValue::StaticColor;
    let mut out = cfg.clone();
    let d = &mut out.display_settings;
    d.background_color = c(BACKGROUND);
    d.ui_color = c(UI);
    d.indicator_color_1 = c(INDICATOR_ON);
    d.indicator_color_2 = c(INDICATOR_OFF);
    out.player_settings.color = c(PLAYER);
    if let Some(o) = out.opponent_settings.as_mut() {
        o.color = c(OPPONENT);
    }
    if let Some(b) = out.ball_settings.as_mut() {
        b.color = c(BALL);
    }
    if let Some(b) = out.blocks_settings.as_mut() {
        b.color = c(if b.harmful { HAZARD } else { COLLECTABLE });
    }
    if let Some(b) = out.static_barrier_settings.as_mut() {
        b.color = c(BARRIER);
    }
    out
}
