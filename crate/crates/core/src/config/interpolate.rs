//! Linear blending of two structurally identical definitions.

use super::{ConfigError, GameConfig, NormRect, ParamKind, ParamValue, RawColor};
use crate::config::param::{round_half_up, snap_quarter_turn};

/// Monotone linear interpolation that returns `a` at `t = 0` and `b` at
/// `t = 1` exactly.
pub fn lerp(a: f64, b: f64, t: f64) -> f64 {
    if t >= 1.0 {
        return b;
    }
    let v = a + t * (b - a);
    v.clamp(a.min(b), a.max(b))
}

fn lerp_color(a: &RawColor, b: &RawColor, t: f64) -> RawColor {
    let mut out = [0; 3];
    for i in 0..3 {
        out[i] = round_half_up(lerp(a[i] as f64, b[i] as f64, t)) as i32;
    }
    out
}

fn lerp_rect(a: &NormRect, b: &NormRect, t: f64) -> NormRect {
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = lerp(a[i], b[i], t);
    }
    out
}

fn lerp_param(path: &str, kind: ParamKind, a: &ParamValue, b: &ParamValue, t: f64) -> Result<ParamValue, ConfigError> {
    use ParamValue::*;
    Ok(match (a, b) {
        (Static(x), Static(y)) => {
            let v = lerp(*x, *y, t);
            Static(match kind {
                ParamKind::Integer => round_half_up(v),
                ParamKind::QuarterTurn => snap_quarter_turn(v),
                _ => v,
            })
        }
        (StaticColor(x), StaticColor(y)) => StaticColor(lerp_color(x, y, t)),
        (Gaussian { mean: m1, std: s1 }, Gaussian { mean: m2, std: s2 }) => Gaussian {
            mean: lerp(*m1, *m2, t),
            std: lerp(*s1, *s2, t),
        },
        (Uniform { low: l1, high: h1 }, Uniform { low: l2, high: h2 }) => Uniform {
            low: lerp(*l1, *l2, t),
            high: lerp(*h1, *h2, t),
        },
        (ColorUniform { low: l1, high: h1 }, ColorUniform { low: l2, high: h2 }) => ColorUniform {
            low: lerp_color(l1, l2, t),
            high: lerp_color(h1, h2, t),
        },
        (ColorSet(x), ColorSet(y)) => {
            if x.len() != y.len() {
                return Err(ConfigError::StructureMismatch {
                    path: path.to_string(),
                    detail: format!("color_set sizes {} and {}", x.len(), y.len()),
                });
            }
            ColorSet(x.iter().zip(y).map(|(p, q)| lerp_color(p, q, t)).collect())
        }
        _ => {
            return Err(ConfigError::VariantMismatch {
                path: path.to_string(),
                left: a.variant_name().to_string(),
                right: b.variant_name().to_string(),
            })
        }
    })
}

fn same<T: PartialEq + std::fmt::Debug>(path: &str, a: &T, b: &T) -> Result<(), ConfigError> {
    if a == b {
        Ok(())
    } else {
        Err(ConfigError::StructureMismatch {
            path: path.to_string(),
            detail: format!("{a:?} vs {b:?}"),
        })
    }
}

fn same_presence<T>(path: &str, a: &Option<T>, b: &Option<T>) -> Result<(), ConfigError> {
    if a.is_some() == b.is_some() {
        Ok(())
    } else {
        Err(ConfigError::StructureMismatch {
            path: path.to_string(),
            detail: "section present on one side only".into(),
        })
    }
}

/// Blends `a` toward `b`.
///
/// Scalars interpolate linearly, integer fields round half up, colors round
/// per channel, and distributions interpolate their parameters. Booleans,
/// enumerations, section presence and parameter variants must match.
pub fn interpolate(a: &GameConfig, b: &GameConfig, t: f64) -> Result<GameConfig, ConfigError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(ConfigError::OutOfRange(t));
    }
    same("actions", &a.actions, &b.actions)?;
    same("game_elements", &a.game_elements, &b.game_elements)?;
    same(
        "player_settings.orientation",
        &a.player_settings.orientation,
        &b.player_settings.orientation,
    )?;
    same_presence("opponent_settings", &a.opponent_settings, &b.opponent_settings)?;
    same_presence("ball_settings", &a.ball_settings, &b.ball_settings)?;
    same_presence("blocks_settings", &a.blocks_settings, &b.blocks_settings)?;
    same_presence(
        "static_barrier_settings",
        &a.static_barrier_settings,
        &b.static_barrier_settings,
    )?;
    if let (Some(x), Some(y)) = (&a.opponent_settings, &b.opponent_settings) {
        same("opponent_settings.behavior", &x.behavior, &y.behavior)?;
    }
    if let (Some(x), Some(y)) = (&a.blocks_settings, &b.blocks_settings) {
        same("blocks_settings.static_weave_fall", &x.static_weave_fall, &y.static_weave_fall)?;
        same("blocks_settings.harmful", &x.harmful, &y.harmful)?;
        same("blocks_settings.penalize_missed", &x.penalize_missed, &y.penalize_missed)?;
    }
    if let (Some(x), Some(y)) = (&a.static_barrier_settings, &b.static_barrier_settings) {
        same(
            "static_barrier_settings.layout",
            &x.layout.len(),
            &y.layout.len(),
        )?;
    }
    same(
        "image_settings.color_inversion",
        &a.image_settings.color_inversion,
        &b.image_settings.color_inversion,
    )?;
    same("episode.goal", &a.episode.goal, &b.episode.goal)?;

    let mut out = if t >= 1.0 { b.clone() } else { a.clone() };
    {
        let from = a.params();
        let to = b.params();
        let mut slots = out.params_mut();
        debug_assert_eq!(from.len(), to.len());
        for (((path, kind, slot), (_, _, x)), (_, _, y)) in slots.iter_mut().zip(&from).zip(&to) {
            **slot = lerp_param(path, *kind, x, y, t)?;
        }
    }
    if let (Some(o), Some(x), Some(y)) = (
        out.blocks_settings.as_mut(),
        &a.blocks_settings,
        &b.blocks_settings,
    ) {
        o.creation_area = lerp_rect(&x.creation_area, &y.creation_area, t);
    }
    if let (Some(o), Some(x), Some(y)) = (
        out.static_barrier_settings.as_mut(),
        &a.static_barrier_settings,
        &b.static_barrier_settings,
    ) {
        o.layout = x
            .layout
            .iter()
            .zip(&y.layout)
            .map(|(p, q)| lerp_rect(p, q, t))
            .collect();
    }
    Ok(out)
}
