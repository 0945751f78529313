use serde_json::{Map, Value};

use super::{
    ActionSet, BallSettings, BarrierSettings, BlockMotion, BlockSettings, ConfigError,
    DisplaySettings, EpisodeSettings, GameConfig, GameElements, Goal, ImageSettings, Issue, Meta,
    NormRect, OpponentBehavior, OpponentSettings, Orientation, ParamKind, ParamValue,
    PlayerSettings, RawColor, Severity,
};

/// A parsed definition plus the non-fatal findings made while reading it.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedConfig {
    pub config: GameConfig,
    pub warnings: Vec<Issue>,
}

pub(crate) const SECTIONS: [&str; 11] = [
    "meta",
    "actions",
    "game_elements",
    "display_settings",
    "player_settings",
    "opponent_settings",
    "ball_settings",
    "blocks_settings",
    "static_barrier_settings",
    "image_settings",
    "episode",
];

/// Parses a JSON game definition.
///
/// Unknown keys become warnings; absent keys take their defaults. An empty
/// or absent element section (`opponent_settings`, `ball_settings`,
/// `blocks_settings`, `static_barrier_settings`) parses to `None`.
pub fn parse_game_config(text: &str) -> Result<ParsedConfig, ConfigError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_game_value(&root)
}

/// Same as [`parse_game_config`] for an already decoded document.
pub fn parse_game_value(root: &Value) -> Result<ParsedConfig, ConfigError> {
    let root = root
        .as_object()
        .ok_or_else(|| ConfigError::mismatch("$", "object"))?;
    let mut r = Reader::default();
    r.check_keys(root, "", &SECTIONS);

    let meta = match r.section(root, "meta")? {
        Some(m) => {
            r.check_keys(m, "meta", &["description"]);
            Meta {
                description: r.string(m, "meta", "description")?,
            }
        }
        None => Meta::default(),
    };

    let actions = match r.section(root, "actions")? {
        Some(m) => {
            const K: [&str; 5] = ["up", "down", "left", "right", "fire"];
            r.check_keys(m, "actions", &K);
            ActionSet {
                up: r.boolean(m, "actions", "up", false)?,
                down: r.boolean(m, "actions", "down", false)?,
                left: r.boolean(m, "actions", "left", false)?,
                right: r.boolean(m, "actions", "right", false)?,
                fire: r.boolean(m, "actions", "fire", false)?,
            }
        }
        None => ActionSet::default(),
    };

    let game_elements = match r.section(root, "game_elements")? {
        Some(m) => {
            let s = "game_elements";
            r.check_keys(
                m,
                s,
                &["top_wall", "bottom_wall", "ball", "opponent", "blocks", "static_barriers"],
            );
            GameElements {
                top_wall: r.boolean(m, s, "top_wall", false)?,
                bottom_wall: r.boolean(m, s, "bottom_wall", false)?,
                ball: r.boolean(m, s, "ball", false)?,
                opponent: r.boolean(m, s, "opponent", false)?,
                blocks: r.boolean(m, s, "blocks", false)?,
                static_barriers: r.boolean(m, s, "static_barriers", false)?,
            }
        }
        None => GameElements::default(),
    };

    let display_settings = {
        let d = DisplaySettings::default();
        match r.section(root, "display_settings")? {
            Some(m) => {
                let s = "display_settings";
                r.check_keys(
                    m,
                    s,
                    &["background_color", "ui_color", "indicator_color_1", "indicator_color_2"],
                );
                DisplaySettings {
                    background_color: r.param(m, s, "background_color", ParamKind::Color, d.background_color)?,
                    ui_color: r.param(m, s, "ui_color", ParamKind::Color, d.ui_color)?,
                    indicator_color_1: r.param(m, s, "indicator_color_1", ParamKind::Color, d.indicator_color_1)?,
                    indicator_color_2: r.param(m, s, "indicator_color_2", ParamKind::Color, d.indicator_color_2)?,
                }
            }
            None => d,
        }
    };

    let player_settings = {
        let d = PlayerSettings::default();
        match r.section(root, "player_settings")? {
            Some(m) => {
                let s = "player_settings";
                r.check_keys(
                    m,
                    s,
                    &[
                        "width", "height", "speed", "color", "steering", "orientation",
                        "fire_cooldown", "bullet_speed", "bullet_width", "bullet_height",
                    ],
                );
                PlayerSettings {
                    width: r.param(m, s, "width", ParamKind::Size, d.width)?,
                    height: r.param(m, s, "height", ParamKind::Size, d.height)?,
                    speed: r.param(m, s, "speed", ParamKind::Speed, d.speed)?,
                    color: r.param(m, s, "color", ParamKind::Color, d.color)?,
                    steering: r.param(m, s, "steering", ParamKind::Unit, d.steering)?,
                    orientation: r.enumeration(
                        m,
                        s,
                        "orientation",
                        &[("bottom", Orientation::Bottom), ("left", Orientation::Left)],
                        d.orientation,
                    )?,
                    fire_cooldown: r.param(m, s, "fire_cooldown", ParamKind::Integer, d.fire_cooldown)?,
                    bullet_speed: r.param(m, s, "bullet_speed", ParamKind::Speed, d.bullet_speed)?,
                    bullet_width: r.param(m, s, "bullet_width", ParamKind::Size, d.bullet_width)?,
                    bullet_height: r.param(m, s, "bullet_height", ParamKind::Size, d.bullet_height)?,
                }
            }
            None => d,
        }
    };

    let opponent_settings = match r.element_section(root, "opponent_settings")? {
        Some(m) => {
            let s = "opponent_settings";
            let d = OpponentSettings::default();
            r.check_keys(m, s, &["speed", "width", "height", "color", "fire_cooldown", "behavior"]);
            Some(OpponentSettings {
                speed: r.param(m, s, "speed", ParamKind::Speed, d.speed)?,
                width: r.param(m, s, "width", ParamKind::Size, d.width)?,
                height: r.param(m, s, "height", ParamKind::Size, d.height)?,
                color: r.param(m, s, "color", ParamKind::Color, d.color)?,
                fire_cooldown: r.param(m, s, "fire_cooldown", ParamKind::Integer, d.fire_cooldown)?,
                behavior: r.enumeration(
                    m,
                    s,
                    "behavior",
                    &[
                        ("paddle_track", OpponentBehavior::PaddleTrack),
                        ("shooter", OpponentBehavior::Shooter),
                        ("chaser", OpponentBehavior::Chaser),
                    ],
                    d.behavior,
                )?,
            })
        }
        None => None,
    };

    let ball_settings = match r.element_section(root, "ball_settings")? {
        Some(m) => {
            let s = "ball_settings";
            let d = BallSettings::default();
            r.check_keys(m, s, &["speed", "radius", "color"]);
            Some(BallSettings {
                speed: r.param(m, s, "speed", ParamKind::Speed, d.speed)?,
                radius: r.param(m, s, "radius", ParamKind::Size, d.radius)?,
                color: r.param(m, s, "color", ParamKind::Color, d.color)?,
            })
        }
        None => None,
    };

    let blocks_settings = match r.element_section(root, "blocks_settings")? {
        Some(m) => {
            let s = "blocks_settings";
            let d = BlockSettings::default();
            r.check_keys(
                m,
                s,
                &[
                    "creation_area", "rows", "cols", "per_row", "spacing", "color",
                    "static_weave_fall", "speed", "harmful", "points", "penalize_missed",
                ],
            );
            Some(BlockSettings {
                creation_area: match m.get("creation_area") {
                    Some(v) => rect(v, &format!("{s}.creation_area"))?,
                    None => d.creation_area,
                },
                rows: r.param(m, s, "rows", ParamKind::Integer, d.rows)?,
                cols: r.param(m, s, "cols", ParamKind::Integer, d.cols)?,
                per_row: r.param(m, s, "per_row", ParamKind::Integer, d.per_row)?,
                spacing: r.param(m, s, "spacing", ParamKind::Unit, d.spacing)?,
                color: r.param(m, s, "color", ParamKind::Color, d.color)?,
                static_weave_fall: r.enumeration(
                    m,
                    s,
                    "static_weave_fall",
                    &[
                        ("static", BlockMotion::Static),
                        ("weave", BlockMotion::Weave),
                        ("fall", BlockMotion::Fall),
                    ],
                    d.static_weave_fall,
                )?,
                speed: r.param(m, s, "speed", ParamKind::Speed, d.speed)?,
                harmful: r.boolean(m, s, "harmful", d.harmful)?,
                points: r.param(m, s, "points", ParamKind::Integer, d.points)?,
                penalize_missed: r.boolean(m, s, "penalize_missed", d.penalize_missed)?,
            })
        }
        None => None,
    };

    let static_barrier_settings = match r.element_section(root, "static_barrier_settings")? {
        Some(m) => {
            let s = "static_barrier_settings";
            let d = BarrierSettings::default();
            r.check_keys(m, s, &["color", "layout"]);
            let layout = match m.get("layout") {
                Some(Value::Array(items)) => items
                    .iter()
                    .enumerate()
                    .map(|(i, v)| rect(v, &format!("{s}.layout[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?,
                Some(_) => return Err(ConfigError::mismatch(&format!("{s}.layout"), "array of [x, y, w, h]")),
                None => d.layout,
            };
            Some(BarrierSettings {
                color: r.param(m, s, "color", ParamKind::Color, d.color)?,
                layout,
            })
        }
        None => None,
    };

    let image_settings = {
        let d = ImageSettings::default();
        match r.section(root, "image_settings")? {
            Some(m) => {
                let s = "image_settings";
                r.check_keys(
                    m,
                    s,
                    &["color_inversion", "rotation", "hue_shift", "saturation_shift", "value_shift"],
                );
                ImageSettings {
                    color_inversion: r.boolean(m, s, "color_inversion", d.color_inversion)?,
                    rotation: r.param(m, s, "rotation", ParamKind::QuarterTurn, d.rotation)?,
                    hue_shift: r.param(m, s, "hue_shift", ParamKind::Real, d.hue_shift)?,
                    saturation_shift: r.param(m, s, "saturation_shift", ParamKind::Real, d.saturation_shift)?,
                    value_shift: r.param(m, s, "value_shift", ParamKind::Real, d.value_shift)?,
                }
            }
            None => d,
        }
    };

    let episode = {
        let d = EpisodeSettings::default();
        match r.section(root, "episode")? {
            Some(m) => {
                let s = "episode";
                r.check_keys(m, s, &["max_steps", "goal", "quota"]);
                EpisodeSettings {
                    max_steps: r.param(m, s, "max_steps", ParamKind::Integer, d.max_steps)?,
                    goal: r.enumeration(
                        m,
                        s,
                        "goal",
                        &[
                            ("cross", Goal::Cross),
                            ("clear_blocks", Goal::ClearBlocks),
                            ("defeat_opponent", Goal::DefeatOpponent),
                            ("survive", Goal::Survive),
                        ],
                        d.goal,
                    )?,
                    quota: r.param(m, s, "quota", ParamKind::Integer, d.quota)?,
                }
            }
            None => d,
        }
    };

    Ok(ParsedConfig {
        config: GameConfig {
            meta,
            actions,
            game_elements,
            display_settings,
            player_settings,
            opponent_settings,
            ball_settings,
            blocks_settings,
            static_barrier_settings,
            image_settings,
            episode,
        },
        warnings: r.warnings,
    })
}

#[derive(Default)]
struct Reader {
    warnings: Vec<Issue>,
}

fn join(section: &str, key: &str) -> String {
    if section.is_empty() {
        key.to_string()
    } else {
        format!("{section}.{key}")
    }
}

impl Reader {
    fn warn(&mut self, path: String, message: impl Into<String>) {
        self.warnings.push(Issue {
            path,
            severity: Severity::Warning,
            message: message.into(),
        });
    }

    fn check_keys(&mut self, map: &Map<String, Value>, section: &str, known: &[&str]) {
        for key in map.keys() {
            if !known.contains(&key.as_str()) {
                self.warn(join(section, key), "unknown field ignored");
            }
        }
    }

    fn section<'a>(
        &mut self,
        root: &'a Map<String, Value>,
        key: &str,
    ) -> Result<Option<&'a Map<String, Value>>, ConfigError> {
        match root.get(key) {
            None => Ok(None),
            Some(Value::Object(m)) => Ok(Some(m)),
            Some(_) => Err(ConfigError::mismatch(key, "object")),
        }
    }

    /// Element sections treat `{}` the same as absence.
    fn element_section<'a>(
        &mut self,
        root: &'a Map<String, Value>,
        key: &str,
    ) -> Result<Option<&'a Map<String, Value>>, ConfigError> {
        Ok(self.section(root, key)?.filter(|m| !m.is_empty()))
    }

    fn string(&mut self, m: &Map<String, Value>, section: &str, key: &str) -> Result<String, ConfigError> {
        match m.get(key) {
            None => Ok(String::new()),
            Some(Value::String(s)) => Ok(s.clone()),
            Some(_) => Err(ConfigError::mismatch(&join(section, key), "string")),
        }
    }

    fn boolean(
        &mut self,
        m: &Map<String, Value>,
        section: &str,
        key: &str,
        default: bool,
    ) -> Result<bool, ConfigError> {
        match m.get(key) {
            None => Ok(default),
            Some(Value::Bool(b)) => Ok(*b),
            Some(_) => Err(ConfigError::mismatch(&join(section, key), "boolean")),
        }
    }

    fn enumeration<T: Copy>(
        &mut self,
        m: &Map<String, Value>,
        section: &str,
        key: &str,
        choices: &[(&str, T)],
        default: T,
    ) -> Result<T, ConfigError> {
        let path = join(section, key);
        match m.get(key) {
            None => Ok(default),
            Some(Value::String(s)) => choices
                .iter()
                .find(|(name, _)| name == s)
                .map(|(_, v)| *v)
                .ok_or_else(|| ConfigError::IllegalEnum {
                    path,
                    value: s.clone(),
                    allowed: choices.iter().map(|(n, _)| *n).collect::<Vec<_>>().join(", "),
                }),
            Some(_) => Err(ConfigError::mismatch(&path, "string")),
        }
    }

    fn param(
        &mut self,
        m: &Map<String, Value>,
        section: &str,
        key: &str,
        kind: ParamKind,
        default: ParamValue,
    ) -> Result<ParamValue, ConfigError> {
        match m.get(key) {
            None => Ok(default),
            Some(v) => self.param_value(v, &join(section, key), kind),
        }
    }

    fn param_value(&mut self, v: &Value, path: &str, kind: ParamKind) -> Result<ParamValue, ConfigError> {
        let expected = if kind.is_color() {
            "color [r, g, b] or color distribution"
        } else {
            "number or numeric distribution"
        };
        match v {
            Value::Number(n) if !kind.is_color() => Ok(ParamValue::Static(n.as_f64().unwrap_or(f64::NAN))),
            Value::Array(_) if kind.is_color() => Ok(ParamValue::StaticColor(color(v, path)?)),
            Value::Object(obj) => self.distribution(obj, path, kind),
            _ => Err(ConfigError::mismatch(path, expected)),
        }
    }

    fn distribution(
        &mut self,
        obj: &Map<String, Value>,
        path: &str,
        kind: ParamKind,
    ) -> Result<ParamValue, ConfigError> {
        let dist = match obj.get("dist") {
            Some(Value::String(s)) => s.as_str(),
            Some(_) => return Err(ConfigError::mismatch(&format!("{path}.dist"), "string")),
            None => return Err(ConfigError::mismatch(path, "distribution object with a \"dist\" key")),
        };
        let (value, keys): (ParamValue, &[&str]) = match (dist, kind.is_color()) {
            ("gaussian", false) => (
                ParamValue::Gaussian {
                    mean: number(obj, path, "mean")?,
                    std: number(obj, path, "std")?,
                },
                &["dist", "mean", "std"],
            ),
            ("uniform", false) => (
                ParamValue::Uniform {
                    low: number(obj, path, "low")?,
                    high: number(obj, path, "high")?,
                },
                &["dist", "low", "high"],
            ),
            ("color_uniform", true) => (
                ParamValue::ColorUniform {
                    low: color(required(obj, path, "low")?, &format!("{path}.low"))?,
                    high: color(required(obj, path, "high")?, &format!("{path}.high"))?,
                },
                &["dist", "low", "high"],
            ),
            ("color_set", true) => {
                let p = format!("{path}.choices");
                let choices = match required(obj, path, "choices")? {
                    Value::Array(items) if !items.is_empty() => items
                        .iter()
                        .enumerate()
                        .map(|(i, c)| color(c, &format!("{p}[{i}]")))
                        .collect::<Result<Vec<_>, _>>()?,
                    _ => return Err(ConfigError::mismatch(&p, "non-empty array of colors")),
                };
                (ParamValue::ColorSet(choices), &["dist", "choices"])
            }
            (other, is_color) => {
                let allowed = if is_color {
                    "color_uniform, color_set"
                } else {
                    "gaussian, uniform"
                };
                return Err(ConfigError::IllegalEnum {
                    path: format!("{path}.dist"),
                    value: other.to_string(),
                    allowed: allowed.to_string(),
                });
            }
        };
        self.check_keys(obj, path, keys);
        Ok(value)
    }
}

fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, ConfigError> {
    obj.get(key)
        .ok_or_else(|| ConfigError::mismatch(&format!("{path}.{key}"), "a value (missing)"))
}

fn number(obj: &Map<String, Value>, path: &str, key: &str) -> Result<f64, ConfigError> {
    required(obj, path, key)?
        .as_f64()
        .ok_or_else(|| ConfigError::mismatch(&format!("{path}.{key}"), "number"))
}

fn color(v: &Value, path: &str) -> Result<RawColor, ConfigError> {
    let bad = || ConfigError::mismatch(path, "color [r, g, b] of integers");
    let items = v.as_array().filter(|a| a.len() == 3).ok_or_else(bad)?;
    let mut out = [0i32; 3];
    for (slot, item) in out.iter_mut().zip(items) {
        let f = item.as_f64().ok_or_else(bad)?;
        if f.fract() != 0.0 {
            return Err(bad());
        }
        *slot = f.clamp(i32::MIN as f64, i32::MAX as f64) as i32;
    }
    Ok(out)
}

fn rect(v: &Value, path: &str) -> Result<NormRect, ConfigError> {
    let bad = || ConfigError::mismatch(path, "[x, y, w, h] of numbers");
    let items = v.as_array().filter(|a| a.len() == 4).ok_or_else(bad)?;
    let mut out = [0.0; 4];
    for (slot, item) in out.iter_mut().zip(items) {
        *slot = item.as_f64().ok_or_else(bad)?;
    }
    Ok(out)
}
