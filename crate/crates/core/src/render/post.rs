//! Image post-processing: HSV shift, then inversion, then rotation.

use thiserror::Error;

use super::frame::{Frame, HEIGHT, WIDTH};
use crate::config::{ConcreteImage, Rgb};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("rotation {0} is not a quarter turn (0, 90, 180 or 270)")]
pub struct BadRotation(pub u16);

/// Hexcone RGB to HSV, all components in `[0, 1]` and hue in `[0, 1)`.
pub fn rgb_to_hsv(c: Rgb) -> [f64; 3] {
    let [r, g, b] = c.map(|v| v as f64 / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        ((g - b) / delta).rem_euclid(6.0) / 6.0
    } else if max == g {
        ((b - r) / delta + 2.0) / 6.0
    } else {
        ((r - g) / delta + 4.0) / 6.0
    };
    let s = if max == 0.0 { 0.0 } else { delta / max };
    [h.rem_euclid(1.0), s, max]
}

pub fn hsv_to_rgb(hsv: [f64; 3]) -> Rgb {
    let [h, s, v] = hsv;
    let h6 = h.rem_euclid(1.0) * 6.0;
    let sector = (h6.floor() as i32).rem_euclid(6);
    let f = h6 - h6.floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    let (r, g, b) = match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [r, g, b].map(|x| (x * 255.0).round().clamp(0.0, 255.0) as u8)
}

/// Adds the shifts in HSV space: hue wraps, saturation and value clamp.
pub fn shift_hsv(f: &mut Frame, hue: f64, sat: f64, val: f64) {
    for px in f.as_bytes_mut().chunks_exact_mut(3) {
        let [h, s, v] = rgb_to_hsv([px[0], px[1], px[2]]);
        let out = hsv_to_rgb([(h + hue).rem_euclid(1.0), (s + sat).clamp(0.0, 1.0), (v + val).clamp(0.0, 1.0)]);
        px.copy_from_slice(&out);
    }
}

pub fn invert(f: &mut Frame) {
    for v in f.as_bytes_mut() {
        *v = 255 - *v;
    }
}

/// Rotates counter-clockwise by `quarter_turns` × 90°.
pub fn rotate(f: &Frame, quarter_turns: u8) -> Frame {
    let turns = quarter_turns % 4;
    if turns == 0 {
        return f.clone();
    }
    let mut out = Frame::default();
    let n = WIDTH - 1;
    debug_assert_eq!(WIDTH, HEIGHT);
    for y in 0..HEIGHT {
        for x in 0..WIDTH {
            let (sx, sy) = match turns {
                1 => (n - y, x),
                2 => (n - x, n - y),
                _ => (y, n - x),
            };
            out.set(x, y, f.get(sx, sy));
        }
    }
    out
}

/// Applies the configured adjustments. Neutral settings return the input.
pub fn postprocess(f: &Frame, s: &ConcreteImage) -> Result<Frame, BadRotation> {
    let turns = match s.rotation {
        0 => 0,
        90 => 1,
        180 => 2,
        270 => 3,
        other => return Err(BadRotation(other)),
    };
    let mut out = f.clone();
    if s.hue_shift != 0.0 || s.saturation_shift != 0.0 || s.value_shift != 0.0 {
        shift_hsv(&mut out, s.hue_shift, s.saturation_shift, s.value_shift);
    }
    if s.color_inversion {
        invert(&mut out);
    }
    Ok(if turns == 0 { out } else { rotate(&out, turns) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_example() {
        let mut f = Frame::filled([10, 200, 255]);
        invert(&mut f);
        assert_eq!(f.get(3, 4), [245, 55, 0]);
    }

    #[test]
    fn rotation_moves_corners_counter_clockwise() {
        let mut f = Frame::default();
        f.set(WIDTH - 1, 0, [1, 2, 3]);
        let r = rotate(&f, 1);
        assert_eq!(r.get(0, 0), [1, 2, 3]);
        assert_eq!(rotate(&r, 3), f);
    }

    #[test]
    fn bad_rotation_is_rejected() {
        let s = ConcreteImage {
            color_inversion: false,
            rotation: 45,
            hue_shift: 0.0,
            saturation_shift: 0.0,
            value_shift: 0.0,
        };
        assert_eq!(postprocess(&Frame::default(), &s), Err(BadRotation(45)));
    }

    #[test]
    fn primaries_round_trip() {
        for c in [[255, 0, 0], [0, 255, 0], [0, 0, 255], [255, 255, 0], [12, 34, 56], [0, 0, 0], [255, 255, 255]] {
            assert_eq!(hsv_to_rgb(rgb_to_hsv(c)), c);
        }
    }
}
