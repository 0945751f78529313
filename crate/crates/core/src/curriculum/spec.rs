use std::path::{Path, PathBuf};

use serde_json::Value;
use thiserror::Error;

use super::envelope::envelope_stages;
use crate::config::{interpolate, parse_game_config, parse_game_value, validate, ConfigError, GameConfig};
use crate::games::{find_game, load_variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Unit {
    #[default]
    Episodes,
    Steps,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StageKind {
    Fixed(GameConfig),
    /// Weights are normalized to sum to one.
    Pool { games: Vec<GameConfig>, weights: Vec<f64> },
    Interpolate { from: GameConfig, to: GameConfig },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub kind: StageKind,
    pub duration: u64,
}

impl Stage {
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            StageKind::Fixed(_) => "fixed",
            StageKind::Pool { .. } => "pool",
            StageKind::Interpolate { .. } => "interpolate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurriculumSpec {
    pub unit: Unit,
    pub seed: u64,
    pub stages: Vec<Stage>,
}

impl CurriculumSpec {
    pub fn total_duration(&self) -> u64 {
        self.stages.iter().map(|s| s.duration).sum()
    }

    /// Checks the structural invariants that the parser enforces.
    pub fn check(&self) -> Result<(), CurriculumError> {
        if self.stages.is_empty() {
            return Err(CurriculumError::NoStages);
        }
        for (i, s) in self.stages.iter().enumerate() {
            if s.duration == 0 {
                return Err(CurriculumError::ZeroDuration(i));
            }
            match &s.kind {
                StageKind::Pool { games, weights } => check_weights(i, games.len(), weights)?,
                StageKind::Interpolate { from, to } => {
                    interpolate(from, to, 0.0).map_err(|source| CurriculumError::Incompatible { stage: i, source })?;
                }
                StageKind::Fixed(_) => {}
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CurriculumError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Format(String),
    #[error("stage {stage}: unknown stage kind {kind:?}")]
    UnknownStageKind { stage: usize, kind: String },
    #[error("stage {stage}: cannot resolve game {reference:?}: {reason}")]
    UnresolvableGame { stage: usize, reference: String, reason: String },
    #[error("stage {stage}: game {reference:?} is invalid:\n{report}")]
    InvalidGame { stage: usize, reference: String, report: String },
    #[error("stage {stage}: interpolation endpoints are incompatible: {source}")]
    Incompatible { stage: usize, source: ConfigError },
    #[error("stage {0}: pool weights must be nonnegative, finite, not all zero and one per game")]
    BadWeights(usize),
    #[error("stage {0}: duration must be positive")]
    ZeroDuration(usize),
    #[error("a curriculum needs at least one stage")]
    NoStages,
    #[error("the curriculum is finished")]
    Finished,
    #[error("step counts can only be reported to a step-based curriculum")]
    NotStepBased,
}

fn check_weights(stage: usize, n: usize, w: &[f64]) -> Result<(), CurriculumError> {
    let ok = n > 0
        && w.len() == n
        && w.iter().all(|x| x.is_finite() && *x >= 0.0)
        && w.iter().sum::<f64>() > 0.0;
    if ok {
        Ok(())
    } else {
        Err(CurriculumError::BadWeights(stage))
    }
}

fn format_err(msg: impl Into<String>) -> CurriculumError {
    CurriculumError::Format(msg.into())
}

/// Resolves a game reference: a registry name, a variant name, a file path
/// relative to `base`, or an inline definition object.
fn resolve_game(stage: usize, v: &Value, base: Option<&Path>) -> Result<GameConfig, CurriculumError> {
    let (label, cfg) = match v {
        Value::Object(_) => {
            let parsed = parse_game_value(v).map_err(|e| CurriculumError::UnresolvableGame {
                stage,
                reference: "<inline>".into(),
                reason: e.to_string(),
            })?;
            ("<inline>".to_string(), parsed.config)
        }
        Value::String(r) => (r.clone(), resolve_named(stage, r, base)?),
        _ => return Err(format_err(format!("stage {stage}: a game is a name, a path or an object"))),
    };
    let report = validate(&cfg);
    if !report.ok {
        return Err(CurriculumError::InvalidGame {
            stage,
            reference: label,
            report: report.to_string(),
        });
    }
    Ok(cfg)
}

fn resolve_named(stage: usize, r: &str, base: Option<&Path>) -> Result<GameConfig, CurriculumError> {
    let looks_like_path = r.ends_with(".json") || r.contains('/') || r.contains('\\');
    if !looks_like_path {
        if let Ok(g) = find_game(r) {
            return Ok(g.config.clone());
        }
        if let Ok(g) = load_variant(r) {
            return Ok(g);
        }
    }
    let path: PathBuf = match base {
        Some(b) => b.join(r),
        None => PathBuf::from(r),
    };
    let unresolved = |reason: String| CurriculumError::UnresolvableGame {
        stage,
        reference: r.to_string(),
        reason,
    };
    let text = std::fs::read_to_string(&path).map_err(|e| {
        let mut reason = format!("{}: {e}", path.display());
        if !looks_like_path {
            if let Err(g) = find_game(r) {
                reason = g.to_string();
            }
        }
        unresolved(reason)
    })?;
    parse_game_config(&text).map(|p| p.config).map_err(|e| unresolved(e.to_string()))
}

fn duration(stage: usize, obj: &serde_json::Map<String, Value>, key: &str) -> Result<u64, CurriculumError> {
    let d = obj
        .get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| format_err(format!("stage {stage}: {key} must be a positive integer")))?;
    if d == 0 {
        return Err(CurriculumError::ZeroDuration(stage));
    }
    Ok(d)
}

/// Parses a curriculum document. Game references are loaded and checked
/// here, so a parsed spec cannot fail later for structural reasons.
///
/// Relative paths resolve against `base` (normally the document's folder).
pub fn parse_curriculum(text: &str, base: Option<&Path>) -> Result<CurriculumSpec, CurriculumError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CurriculumError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = root.as_object().ok_or_else(|| format_err("a curriculum is an object"))?;
    let unit = match obj.get("unit").map(|u| u.as_str()) {
        None => Unit::Episodes,
        Some(Some("episodes")) => Unit::Episodes,
        Some(Some("steps")) => Unit::Steps,
        Some(other) => return Err(format_err(format!("unit must be \"episodes\" or \"steps\", got {other:?}"))),
    };
    let seed = match obj.get("seed") {
        None => 0,
        Some(v) => v.as_u64().ok_or_else(|| format_err("seed must be a nonnegative integer"))?,
    };
    let raw_stages = obj
        .get("stages")
        .and_then(Value::as_array)
        .ok_or_else(|| format_err("stages must be a list"))?;

    let mut stages = Vec::new();
    for (i, raw) in raw_stages.iter().enumerate() {
        let s = raw
            .as_object()
            .ok_or_else(|| format_err(format!("stage {i} must be an object")))?;
        let kind = s.get("kind").and_then(Value::as_str).unwrap_or_default();
        let field = |k: &str| s.get(k).ok_or_else(|| format_err(format!("stage {i}: missing {k}")));
        match kind {
            "fixed" => stages.push(Stage {
                kind: StageKind::Fixed(resolve_game(i, field("game")?, base)?),
                duration: duration(i, s, "duration")?,
            }),
            "pool" => {
                let games = field("games")?
                    .as_array()
                    .ok_or_else(|| format_err(format!("stage {i}: games must be a list")))?
                    .iter()
                    .map(|g| resolve_game(i, g, base))
                    .collect::<Result<Vec<_>, _>>()?;
                let weights = match s.get("weights") {
                    None => vec![1.0; games.len()],
                    Some(w) => w
                        .as_array()
                        .and_then(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<_>>>())
                        .ok_or(CurriculumError::BadWeights(i))?,
                };
                check_weights(i, games.len(), &weights)?;
                let total: f64 = weights.iter().sum();
                stages.push(Stage {
                    kind: StageKind::Pool {
                        games,
                        weights: weights.iter().map(|w| w / total).collect(),
                    },
                    duration: duration(i, s, "duration")?,
                });
            }
            "interpolate" => {
                let from = resolve_game(i, field("from")?, base)?;
                let to = resolve_game(i, field("to")?, base)?;
                interpolate(&from, &to, 0.0).map_err(|source| CurriculumError::Incompatible { stage: i, source })?;
                stages.push(Stage {
                    kind: StageKind::Interpolate { from, to },
                    duration: duration(i, s, "duration")?,
                });
            }
            "envelope" => {
                let easy = resolve_game(i, field("easy")?, base)?;
                let target = resolve_game(i, field("base")?, base)?;
                let durations = [duration(i, s, "widen")?, duration(i, s, "narrow")?, duration(i, s, "tail")?];
                let expanded = envelope_stages(&target, &easy, durations)
                    .map_err(|source| CurriculumError::Incompatible { stage: i, source })?;
                stages.extend(expanded);
            }
            other => {
                return Err(CurriculumError::UnknownStageKind {
                    stage: i,
                    kind: other.to_string(),
                })
            }
        }
    }
    let spec = CurriculumSpec { unit, seed, stages };
    spec.check()?;
    Ok(spec)
}
