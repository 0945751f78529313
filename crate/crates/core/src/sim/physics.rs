use thiserror::Error;

use super::geometry::{Rect, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot reflect a zero velocity")]
pub struct ZeroVelocity;

/// Reflects `v` off a surface with unit normal `n`.
///
/// The specular tangential component is biased along the surface tangent
/// `n.perp()` by `steering * hit_offset * |v|` and the result is rescaled to
/// the input speed. Zero offset or zero steering give a mirror bounce.
pub fn reflect_ball(v: Vec2, n: Vec2, hit_offset: f64, steering: f64) -> Result<Vec2, ZeroVelocity> {
    let speed = v.length();
    if speed == 0.0 || !speed.is_finite() {
        return Err(ZeroVelocity);
    }
    let vn = n * v.dot(n);
    let vt = v - vn;
    let specular = vt - vn;
    let bias = steering * hit_offset.clamp(-1.0, 1.0) * speed;
    if bias == 0.0 {
        return Ok(specular);
    }
    let out = specular + n.perp() * bias;
    let len = out.length();
    if len == 0.0 {
        return Ok(specular);
    }
    Ok(out * (speed / len))
}

/// Whether a disc overlaps a rectangle (touching does not count).
pub fn disc_hits_rect(c: Vec2, r: f64, rect: &Rect) -> bool {
    let nx = c.x.clamp(rect.x, rect.right());
    let ny = c.y.clamp(rect.y, rect.bottom());
    let (dx, dy) = (c.x - nx, c.y - ny);
    dx * dx + dy * dy < r * r
}

/// Penetration axis of a disc into a rectangle: `true` when the shallower
/// overlap is along x.
pub fn shallow_axis_is_x(c: Vec2, r: f64, rect: &Rect) -> bool {
    let ox = (c.x + r).min(rect.right()) - (c.x - r).max(rect.x);
    let oy = (c.y + r).min(rect.bottom()) - (c.y - r).max(rect.y);
    ox < oy
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Vec2, b: Vec2) -> bool {
        (a.x - b.x).abs() < 1e-15 && (a.y - b.y).abs() < 1e-15
    }

    #[test]
    fn specular_cases() {
        let floor = Vec2::new(0.0, -1.0);
        for s in [0.0, 0.5, 1.0] {
            let out = reflect_ball(Vec2::new(0.01, 0.01), floor, 0.0, s).unwrap();
            assert!(close(out, Vec2::new(0.01, -0.01)));
        }
        let out = reflect_ball(Vec2::new(0.003, 0.01), floor, 0.8, 0.0).unwrap();
        assert!(close(out, Vec2::new(0.003, -0.01)));
    }

    #[test]
    fn steered_bounce_matches_closed_form() {
        // Straight down onto a paddle, hit at the right tip, steering 0.5.
        // Tangent of (0,-1) is (1,0): direction (0.5, -1) / sqrt(1.25).
        let out = reflect_ball(Vec2::new(0.0, 0.01), Vec2::new(0.0, -1.0), 1.0, 0.5).unwrap();
        let k = 0.01 / 1.25f64.sqrt();
        assert!((out.x - 0.5 * k).abs() < 1e-15);
        assert!((out.y + k).abs() < 1e-15);
        let angle = out.x.atan2(-out.y);
        assert!((angle - 0.5f64.atan()).abs() < 1e-12);
    }

    #[test]
    fn zero_velocity_is_an_error() {
        assert_eq!(reflect_ball(Vec2::ZERO, Vec2::new(0.0, -1.0), 0.0, 0.5), Err(ZeroVelocity));
    }

    #[test]
    fn disc_rect_overlap() {
        let r = Rect::new(0.0, 0.0, 1.0, 1.0);
        assert!(disc_hits_rect(Vec2::new(1.05, 0.5), 0.1, &r));
        assert!(!disc_hits_rect(Vec2::new(1.1, 1.1), 0.1, &r));
        assert!(shallow_axis_is_x(Vec2::new(1.05, 0.5), 0.1, &r));
    }

    proptest::proptest! {
        #[test]
        fn speed_is_preserved(vx in -1.0f64..1.0, vy in -1.0f64..1.0, a in 0.0f64..std::f64::consts::TAU,
                              off in -1.0f64..1.0, s in 0.0f64..1.0) {
            proptest::prop_assume!(vx.hypot(vy) > 1e-6);
            let v = Vec2::new(vx, vy);
            let n = Vec2::new(a.cos(), a.sin());
            let out = reflect_ball(v, n, off, s).unwrap();
            proptest::prop_assert!((out.length() - v.length()).abs() <= 1e-12 * v.length());
        }
    }
}
