//! Distribution-valued parameters.
//!
//! Any numeric or color field of a game definition may hold either a static
//! literal or a distribution that is re-sampled at every episode reset. The
//! [`ParamKind`] of a field decides how a draw is discretized and clamped.

use rand::Rng;
use rand_distr::StandardNormal;

/// Concrete 8-bit RGB color.
pub type Rgb = [u8; 3];

/// Color as written in a definition file. Channels are kept wide so that
/// out-of-range literals survive parsing and can be reported by validation.
pub type RawColor = [i32; 3];

/// Lower clamp for Gaussian draws of size-like fields.
pub const MIN_SIZE: f64 = 0.01;
/// Upper clamp for Gaussian draws of size-like fields.
pub const MAX_SIZE: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Static(f64),
    StaticColor(RawColor),
    Gaussian { mean: f64, std: f64 },
    Uniform { low: f64, high: f64 },
    ColorUniform { low: RawColor, high: RawColor },
    ColorSet(Vec<RawColor>),
}

/// How a field's values are interpreted, sampled and range-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParamKind {
    /// Unbounded real (image shifts).
    Real,
    /// Entity extent in play-area units; Gaussian draws clamp to
    /// `[MIN_SIZE, MAX_SIZE]`.
    Size,
    /// Per-frame displacement; Gaussian draws clamp at zero.
    Speed,
    /// Real in `[0, 1]`; draws clamp into the interval.
    Unit,
    /// Non-negative integer; draws round half up.
    Integer,
    /// Rotation in degrees, snapped to a multiple of 90.
    QuarterTurn,
    Color,
}

impl ParamKind {
    pub fn is_color(self) -> bool {
        matches!(self, ParamKind::Color)
    }

    pub fn is_integral(self) -> bool {
        matches!(self, ParamKind::Integer | ParamKind::QuarterTurn)
    }

    /// Fields measured in normalized play-area units.
    pub fn is_geometric(self) -> bool {
        matches!(self, ParamKind::Size | ParamKind::Speed)
    }
}

impl ParamValue {
    pub fn is_distribution(&self) -> bool {
        !matches!(self, ParamValue::Static(_) | ParamValue::StaticColor(_))
    }

    /// Short name used in error messages and in the file format.
    pub fn variant_name(&self) -> &'static str {
        match self {
            ParamValue::Static(_) => "static",
            ParamValue::StaticColor(_) => "static color",
            ParamValue::Gaussian { .. } => "gaussian",
            ParamValue::Uniform { .. } => "uniform",
            ParamValue::ColorUniform { .. } => "color_uniform",
            ParamValue::ColorSet(_) => "color_set",
        }
    }

    /// Whether this variant may appear on a field of the given kind.
    pub fn fits(&self, kind: ParamKind) -> bool {
        match self {
            ParamValue::Static(_) | ParamValue::Gaussian { .. } | ParamValue::Uniform { .. } => {
                !kind.is_color()
            }
            ParamValue::StaticColor(_) | ParamValue::ColorUniform { .. } | ParamValue::ColorSet(_) => {
                kind.is_color()
            }
        }
    }

    /// Draws a number for a numeric field.
    ///
    /// Panics if called on a color variant; configurations are checked for
    /// kind compatibility when they are parsed.
    pub fn sample_number<R: Rng + ?Sized>(&self, kind: ParamKind, rng: &mut R) -> f64 {
        match *self {
            ParamValue::Static(v) => match kind {
                ParamKind::Integer => round_half_up(v),
                ParamKind::QuarterTurn => snap_quarter_turn(v),
                _ => v,
            },
            ParamValue::Gaussian { mean, std } => {
                let z: f64 = rng.sample(StandardNormal);
                let v = mean + std * z;
                match kind {
                    ParamKind::Size => v.clamp(MIN_SIZE, MAX_SIZE),
                    ParamKind::Speed => v.max(0.0),
                    ParamKind::Unit => v.clamp(0.0, 1.0),
                    ParamKind::Integer => round_half_up(v).max(0.0),
                    ParamKind::QuarterTurn => snap_quarter_turn(v),
                    ParamKind::Real | ParamKind::Color => v,
                }
            }
            ParamValue::Uniform { low, high } => match kind {
                ParamKind::Integer => uniform_integer(low, high, rng) as f64,
                ParamKind::QuarterTurn => snap_quarter_turn(uniform_integer(low, high, rng) as f64),
                ParamKind::Unit => uniform_real(low, high, rng).clamp(0.0, 1.0),
                _ => uniform_real(low, high, rng),
            },
            _ => panic!("color parameter sampled as a number"),
        }
    }

    /// Draws a color for a color field. Channels are clamped to `[0, 255]`.
    pub fn sample_color<R: Rng + ?Sized>(&self, rng: &mut R) -> Rgb {
        match self {
            ParamValue::StaticColor(c) => clamp_color(*c),
            ParamValue::ColorUniform { low, high } => {
                let mut out = [0u8; 3];
                for i in 0..3 {
                    let v = uniform_integer(low[i] as f64, high[i] as f64, rng);
                    out[i] = v.clamp(0, 255) as u8;
                }
                out
            }
            ParamValue::ColorSet(choices) => {
                let idx = rng.random_range(0..choices.len());
                clamp_color(choices[idx])
            }
            _ => panic!("numeric parameter sampled as a color"),
        }
    }
}

/// Rounds to the nearest integer, ties toward positive infinity.
pub fn round_half_up(v: f64) -> f64 {
    (v + 0.5).floor()
}

/// Rounds degrees to the nearest quarter turn and wraps into `[0, 360)`.
pub fn snap_quarter_turn(v: f64) -> f64 {
    (round_half_up(v / 90.0) * 90.0).rem_euclid(360.0)
}

pub fn clamp_color(c: RawColor) -> Rgb {
    [
        c[0].clamp(0, 255) as u8,
        c[1].clamp(0, 255) as u8,
        c[2].clamp(0, 255) as u8,
    ]
}

/// `low + u * (high - low)` with `u` uniform in `[0, 1)`.
fn uniform_real<R: Rng + ?Sized>(low: f64, high: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    let v = low + u * (high - low);
    v.clamp(low, high)
}

/// Uniform over the integers in `[ceil(low), floor(high)]`, each with equal
/// mass. An interval containing no integer yields the rounded midpoint.
fn uniform_integer<R: Rng + ?Sized>(low: f64, high: f64, rng: &mut R) -> i64 {
    let lo = low.ceil() as i64;
    let hi = high.floor() as i64;
    let u: f64 = rng.random();
    if hi < lo {
        return round_half_up(0.5 * (low + high)) as i64;
    }
    let n = (hi - lo + 1) as f64;
    let k = ((u * n).floor() as i64).min(hi - lo);
    lo + k
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_gaussian_returns_mean_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let p = ParamValue::Gaussian { mean: 0.1, std: 0.0 };
        for _ in 0..100 {
            assert_eq!(p.sample_number(ParamKind::Size, &mut rng), 0.1);
        }
    }

    #[test]
    fn rounding_is_half_up() {
        assert_eq!(round_half_up(2.5), 3.0);
        assert_eq!(round_half_up(-2.5), -2.0);
        assert_eq!(round_half_up(2.4999), 2.0);
        assert_eq!(snap_quarter_turn(44.0), 0.0);
        assert_eq!(snap_quarter_turn(45.0), 90.0);
        assert_eq!(snap_quarter_turn(315.0), 0.0);
        assert_eq!(snap_quarter_turn(-90.0), 270.0);
    }

    #[test]
    fn integer_uniform_frequencies_are_flat() {
        // Chi-square against the equal-mass rule, 3 degrees of freedom.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let p = ParamValue::Uniform { low: 3.0, high: 6.0 };
        let mut counts = [0usize; 4];
        let n = 10_000;
        for _ in 0..n {
            let v = p.sample_number(ParamKind::Integer, &mut rng);
            assert!((3.0..=6.0).contains(&v) && v.fract() == 0.0);
            counts[(v as usize) - 3] += 1;
        }
        let expected = n as f64 / 4.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 99.9th percentile of chi-square with 3 dof.
        assert!(chi2 < 16.27, "chi2 = {chi2}, counts = {counts:?}");
        for c in counts {
            assert!((c as f64 - expected).abs() <= 0.05 * expected, "{counts:?}");
        }
    }

    #[test]
    fn integer_uniform_with_fractional_bounds_stays_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = ParamValue::Uniform { low: 3.2, high: 5.7 };
        for _ in 0..1000 {
            let v = p.sample_number(ParamKind::Integer, &mut rng);
            assert!(v == 4.0 || v == 5.0);
        }
    }

    #[test]
    fn gaussian_size_draws_are_clamped() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ParamValue::Gaussian { mean: 0.5, std: 5.0 };
        for _ in 0..1000 {
            let v = p.sample_number(ParamKind::Size, &mut rng);
            assert!((MIN_SIZE..=MAX_SIZE).contains(&v));
        }
    }

    #[test]
    fn color_draws_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = ParamValue::ColorUniform { low: [10, 0, 250], high: [20, 0, 255] };
        for _ in 0..500 {
            let c = p.sample_color(&mut rng);
            assert!((10..=20).contains(&c[0]));
            assert_eq!(c[1], 0);
            assert!(c[2] >= 250);
        }
        let set = ParamValue::ColorSet(vec![[1, 2, 3], [300, -4, 5]]);
        for _ in 0..50 {
            let c = set.sample_color(&mut rng);
            assert!(c == [1, 2, 3] || c == [255, 0, 5]);
        }
    }

    proptest::proptest! {
        #[test]
        fn uniform_draws_stay_in_support(low in -1.0f64..2.0, width in 0.0f64..1.0, seed in 0u64..1000) {
            let high = low + width;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = ParamValue::Uniform { low, high };
            for kind in [ParamKind::Real, ParamKind::Size, ParamKind::Speed] {
                let v = p.sample_number(kind, &mut rng);
                proptest::prop_assert!(v >= low && v <= high);
            }
        }
    }
}
