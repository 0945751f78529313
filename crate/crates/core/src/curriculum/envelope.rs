//! Widen-then-narrow schedules around a target game.

use super::spec::{CurriculumSpec, Stage, StageKind, Unit};
use crate::config::{interpolate, ConfigError, GameConfig, ParamValue};

/// Rewrites static values as degenerate ranges so every parameter of the
/// easy, envelope and target configs shares a variant.
fn as_range(p: &ParamValue) -> ParamValue {
    match p {
        ParamValue::Static(v) => ParamValue::Uniform { low: *v, high: *v },
        ParamValue::StaticColor(c) => ParamValue::ColorUniform { low: *c, high: *c },
        other => other.clone(),
    }
}

fn ranged(cfg: &GameConfig) -> GameConfig {
    let mut out = cfg.clone();
    for (_, _, p) in out.params_mut() {
        *p = as_range(p);
    }
    out
}

fn union(path: &str, a: &ParamValue, b: &ParamValue) -> Result<ParamValue, ConfigError> {
    use ParamValue::*;
    Ok(match (a, b) {
        (Uniform { low: l1, high: h1 }, Uniform { low: l2, high: h2 }) => Uniform {
            low: l1.min(*l2),
            high: h1.max(*h2),
        },
        (ColorUniform { low: l1, high: h1 }, ColorUniform { low: l2, high: h2 }) => ColorUniform {
            low: std::array::from_fn(|i| l1[i].min(l2[i])),
            high: std::array::from_fn(|i| h1[i].max(h2[i])),
        },
        (Gaussian { mean: m1, std: s1 }, Gaussian { mean: m2, std: s2 }) => Gaussian {
            mean: 0.5 * (m1 + m2),
            std: s1.max(*s2) + 0.5 * (m1 - m2).abs(),
        },
        (ColorSet(x), ColorSet(y)) if x == y => ColorSet(x.clone()),
        _ => {
            return Err(ConfigError::VariantMismatch {
                path: path.to_string(),
                left: a.variant_name().to_string(),
                right: b.variant_name().to_string(),
            })
        }
    })
}

/// A config whose every range covers both inputs. Geometry that cannot be
/// randomized (creation areas, barrier layouts) is taken from `base`.
pub fn union_envelope(base: &GameConfig, easy: &GameConfig) -> Result<GameConfig, ConfigError> {
    interpolate(easy, base, 0.0)?;
    let (e, b) = (ranged(easy), ranged(base));
    let mut out = b.clone();
    {
        let ep = e.params();
        let bp = b.params();
        for (((path, _, slot), (_, _, x)), (_, _, y)) in out.params_mut().into_iter().zip(&ep).zip(&bp) {
            *slot = union(&path, x, y)?;
        }
    }
    Ok(out)
}

pub(crate) fn envelope_stages(base: &GameConfig, easy: &GameConfig, d: [u64; 3]) -> Result<Vec<Stage>, ConfigError> {
    let env = union_envelope(base, easy)?;
    let (e, b) = (ranged(easy), ranged(base));
    Ok(vec![
        Stage {
            kind: StageKind::Interpolate { from: e, to: env.clone() },
            duration: d[0],
        },
        Stage {
            kind: StageKind::Interpolate { from: env, to: b },
            duration: d[1],
        },
        Stage {
            kind: StageKind::Fixed(base.clone()),
            duration: d[2],
        },
    ])
}

/// Widens the sampling range from `easy` until it spans both configs, then
/// narrows it onto `base`, then plays `base` unchanged.
pub fn envelope_schedule(
    base: &GameConfig,
    easy: &GameConfig,
    widen: u64,
    narrow: u64,
    tail: u64,
    unit: Unit,
    seed: u64,
) -> Result<CurriculumSpec, ConfigError> {
    Ok(CurriculumSpec {
        unit,
        seed,
        stages: envelope_stages(base, easy, [widen, narrow, tail])?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_union_spans_both() {
        let mut easy = GameConfig::default();
        let base = GameConfig::default();
        easy.player_settings.width = ParamValue::Static(0.5);
        let mut b = base.clone();
        b.player_settings.width = ParamValue::Static(0.1);
        let env = union_envelope(&b, &easy).unwrap();
        assert_eq!(env.player_settings.width, ParamValue::Uniform { low: 0.1, high: 0.5 });
    }

    #[test]
    fn structure_mismatch_is_rejected() {
        let mut easy = GameConfig::default();
        easy.actions.fire = true;
        assert!(union_envelope(&GameConfig::default(), &easy).is_err());
    }
}
