//! Helpers shared by the integration suites: random configuration pairs and
//! hand-placed fixture worlds.
#![allow(dead_code)]

use arcade_core::config::{sample, GameConfig, ParamKind, ParamValue, RawColor};
use arcade_core::games::{list_games, load_game};
use arcade_core::sim::{init_world, Rect, WorldState};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn color<R: Rng>(r: &mut R) -> RawColor {
    [r.random_range(0..=255), r.random_range(0..=255), r.random_range(0..=255)]
}

fn number<R: Rng>(kind: ParamKind, r: &mut R) -> f64 {
    match kind {
        ParamKind::Integer => r.random_range(0..=40) as f64,
        ParamKind::QuarterTurn => (r.random_range(0..4) * 90) as f64,
        ParamKind::Unit => r.random_range(0.0..1.0),
        ParamKind::Size => r.random_range(0.02..0.5),
        ParamKind::Speed => r.random_range(0.0..0.03),
        ParamKind::Real => r.random_range(-1.0..1.0),
        ParamKind::Color => unreachable!(),
    }
}

/// Which variant a generated pair uses for one slot; both sides share it.
#[derive(Clone, Copy)]
enum Shape {
    Static,
    Gaussian,
    Uniform,
    ColorSet(usize),
}

fn shape_for<R: Rng>(kind: ParamKind, r: &mut R) -> Shape {
    let k = r.random_range(0..3);
    match (kind.is_color(), k) {
        (_, 0) => Shape::Static,
        (false, 1) => Shape::Gaussian,
        (true, 1) => Shape::ColorSet(r.random_range(1..5)),
        _ => Shape::Uniform,
    }
}

fn value<R: Rng>(kind: ParamKind, shape: Shape, r: &mut R) -> ParamValue {
    if kind.is_color() {
        return match shape {
            Shape::Static => ParamValue::StaticColor(color(r)),
            Shape::ColorSet(n) => ParamValue::ColorSet((0..n).map(|_| color(r)).collect()),
            _ => {
                let (a, b) = (color(r), color(r));
                ParamValue::ColorUniform {
                    low: [0, 1, 2].map(|i| a[i].min(b[i])),
                    high: [0, 1, 2].map(|i| a[i].max(b[i])),
                }
            }
        };
    }
    match shape {
        Shape::Gaussian => ParamValue::Gaussian {
            mean: number(kind, r),
            std: r.random_range(0.0..0.1),
        },
        Shape::Uniform => {
            let (a, b) = (number(kind, r), number(kind, r));
            ParamValue::Uniform {
                low: a.min(b),
                high: a.max(b),
            }
        }
        _ => ParamValue::Static(number(kind, r)),
    }
}

/// Two structurally compatible definitions built from the same registry
/// game, with every parameter slot redrawn independently on each side.
pub fn random_compatible_pair<R: Rng>(r: &mut R) -> (GameConfig, GameConfig) {
    let entry = list_games().choose(r).expect("registry is not empty");
    let mut a = entry.config.clone();
    let mut b = entry.config.clone();
    let shapes: Vec<Shape> = a.params().iter().map(|(_, k, _)| shape_for(*k, r)).collect();
    for ((_, kind, v), s) in a.params_mut().into_iter().zip(&shapes) {
        *v = value(kind, *s, r);
    }
    for ((_, kind, v), s) in b.params_mut().into_iter().zip(&shapes) {
        *v = value(kind, *s, r);
    }
    (a, b)
}

/// A world for a registry game with all moving parts cleared, ready for a
/// fixture to place entities by hand.
pub fn bare_world(game: &str) -> WorldState {
    let cfg = sample(&load_game(game).expect("registry game"), &mut rng(0));
    let mut w = init_world(cfg, 0);
    w.blocks.clear();
    w.spawner = None;
    w.bullets.clear();
    w.barriers.clear();
    w
}

pub fn block(rect: Rect, value: i32, harmful: bool) -> arcade_core::sim::Block {
    arcade_core::sim::Block {
        rect,
        value,
        harmful,
        heading: 1.0,
    }
}

pub fn all_game_names() -> Vec<&'static str> {
    list_games().iter().map(|g| g.key.as_str()).collect()
}
