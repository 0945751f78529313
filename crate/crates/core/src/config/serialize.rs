//! Canonical JSON output.
//!
//! Sections and keys follow the order of the reference Avalanche definition;
//! keys that definition does not contain follow alphabetically. Two
//! serializations of equal configs are byte-identical.

use serde_json::{Map, Value};

use super::{GameConfig, NormRect, ParamKind, ParamValue, RawColor};

pub fn serialize(cfg: &GameConfig) -> String {
    let mut text = serde_json::to_string_pretty(&to_value(cfg)).expect("JSON maps always serialize");
    text.push('\n');
    text
}

pub(crate) fn to_value(cfg: &GameConfig) -> Value {
    let mut root = Map::new();

    let mut meta = Map::new();
    meta.insert("description".into(), Value::String(cfg.meta.description.clone()));
    root.insert("meta".into(), Value::Object(meta));

    let a = &cfg.actions;
    root.insert(
        "actions".into(),
        object([
            ("up", a.up.into()),
            ("down", a.down.into()),
            ("left", a.left.into()),
            ("right", a.right.into()),
            ("fire", a.fire.into()),
        ]),
    );

    let g = &cfg.game_elements;
    root.insert(
        "game_elements".into(),
        object([
            ("top_wall", g.top_wall.into()),
            ("bottom_wall", g.bottom_wall.into()),
            ("ball", g.ball.into()),
            ("opponent", g.opponent.into()),
            ("blocks", g.blocks.into()),
            ("static_barriers", g.static_barriers.into()),
        ]),
    );

    let d = &cfg.display_settings;
    root.insert(
        "display_settings".into(),
        object([
            ("background_color", param(&d.background_color, ParamKind::Color)),
            ("ui_color", param(&d.ui_color, ParamKind::Color)),
            ("indicator_color_1", param(&d.indicator_color_1, ParamKind::Color)),
            ("indicator_color_2", param(&d.indicator_color_2, ParamKind::Color)),
        ]),
    );

    let p = &cfg.player_settings;
    root.insert(
        "player_settings".into(),
        object([
            ("width", param(&p.width, ParamKind::Size)),
            ("height", param(&p.height, ParamKind::Size)),
            ("speed", param(&p.speed, ParamKind::Speed)),
            ("color", param(&p.color, ParamKind::Color)),
            ("steering", param(&p.steering, ParamKind::Unit)),
            ("bullet_height", param(&p.bullet_height, ParamKind::Size)),
            ("bullet_speed", param(&p.bullet_speed, ParamKind::Speed)),
            ("bullet_width", param(&p.bullet_width, ParamKind::Size)),
            ("fire_cooldown", param(&p.fire_cooldown, ParamKind::Integer)),
            ("orientation", Value::String(p.orientation.to_string())),
        ]),
    );

    let opponent = match &cfg.opponent_settings {
        Some(o) => object([
            ("behavior", Value::String(o.behavior.to_string())),
            ("color", param(&o.color, ParamKind::Color)),
            ("fire_cooldown", param(&o.fire_cooldown, ParamKind::Integer)),
            ("height", param(&o.height, ParamKind::Size)),
            ("speed", param(&o.speed, ParamKind::Speed)),
            ("width", param(&o.width, ParamKind::Size)),
        ]),
        None => Value::Object(Map::new()),
    };
    root.insert("opponent_settings".into(), opponent);

    let ball = match &cfg.ball_settings {
        Some(b) => object([
            ("color", param(&b.color, ParamKind::Color)),
            ("radius", param(&b.radius, ParamKind::Size)),
            ("speed", param(&b.speed, ParamKind::Speed)),
        ]),
        None => Value::Object(Map::new()),
    };
    root.insert("ball_settings".into(), ball);

    let blocks = match &cfg.blocks_settings {
        Some(b) => object([
            ("creation_area", rect(&b.creation_area)),
            ("rows", param(&b.rows, ParamKind::Integer)),
            ("cols", param(&b.cols, ParamKind::Integer)),
            ("per_row", param(&b.per_row, ParamKind::Integer)),
            ("spacing", param(&b.spacing, ParamKind::Unit)),
            ("color", param(&b.color, ParamKind::Color)),
            ("static_weave_fall", Value::String(b.static_weave_fall.to_string())),
            ("speed", param(&b.speed, ParamKind::Speed)),
            ("harmful", b.harmful.into()),
            ("points", param(&b.points, ParamKind::Integer)),
            ("penalize_missed", b.penalize_missed.into()),
        ]),
        None => Value::Object(Map::new()),
    };
    root.insert("blocks_settings".into(), blocks);

    let barriers = match &cfg.static_barrier_settings {
        Some(b) => object([
            ("color", param(&b.color, ParamKind::Color)),
            ("layout", Value::Array(b.layout.iter().map(rect).collect())),
        ]),
        None => Value::Object(Map::new()),
    };
    root.insert("static_barrier_settings".into(), barriers);

    let i = &cfg.image_settings;
    root.insert(
        "image_settings".into(),
        object([
            ("color_inversion", i.color_inversion.into()),
            ("rotation", param(&i.rotation, ParamKind::QuarterTurn)),
            ("hue_shift", param(&i.hue_shift, ParamKind::Real)),
            ("saturation_shift", param(&i.saturation_shift, ParamKind::Real)),
            ("value_shift", param(&i.value_shift, ParamKind::Real)),
        ]),
    );

    let e = &cfg.episode;
    root.insert(
        "episode".into(),
        object([
            ("goal", Value::String(e.goal.to_string())),
            ("max_steps", param(&e.max_steps, ParamKind::Integer)),
            ("quota", param(&e.quota, ParamKind::Integer)),
        ]),
    );

    Value::Object(root)
}

fn object<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn number(v: f64, kind: ParamKind) -> Value {
    if kind.is_integral() && v.fract() == 0.0 && v.abs() < 9.0e15 {
        Value::from(v as i64)
    } else {
        Value::from(v)
    }
}

fn color(c: &RawColor) -> Value {
    Value::Array(c.iter().map(|&v| Value::from(v)).collect())
}

fn rect(r: &NormRect) -> Value {
    Value::Array(r.iter().map(|&v| Value::from(v)).collect())
}

fn param(p: &ParamValue, kind: ParamKind) -> Value {
    match p {
        ParamValue::Static(v) => number(*v, kind),
        ParamValue::StaticColor(c) => color(c),
        ParamValue::Gaussian { mean, std } => object([
            ("dist", "gaussian".into()),
            ("mean", number(*mean, kind)),
            ("std", Value::from(*std)),
        ]),
        ParamValue::Uniform { low, high } => object([
            ("dist", "uniform".into()),
            ("low", number(*low, kind)),
            ("high", number(*high, kind)),
        ]),
        ParamValue::ColorUniform { low, high } => object([
            ("dist", "color_uniform".into()),
            ("low", color(low)),
            ("high", color(high)),
        ]),
        ParamValue::ColorSet(choices) => object([
            ("dist", "color_set".into()),
            ("choices", Value::Array(choices.iter().map(color).collect())),
        ]),
    }
}
