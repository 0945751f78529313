//! Play-area geometry.
//!
//! The simulation runs in a *canonical* frame where the player's home edge is
//! always the bottom (`y = 1`) and the opposite side is the top (`y = 0`).
//! Games whose player sits on the left screen edge are rotated into this
//! frame at initialization and back again when rendered.

use std::ops::{Add, Mul, Sub};

use crate::config::{NormRect, Orientation};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Tangent obtained by rotating a normal a quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

/// Axis-aligned rectangle, origin at its top-left corner.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    pub const fn new(x: f64, y: f64, w: f64, h: f64) -> Self {
        Self { x, y, w, h }
    }

    pub fn from_norm(r: &NormRect) -> Self {
        Self::new(r[0], r[1], r[2], r[3])
    }

    pub fn right(&self) -> f64 {
        self.x + self.w
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.h
    }

    pub fn center(&self) -> Vec2 {
        Vec2::new(self.x + 0.5 * self.w, self.y + 0.5 * self.h)
    }

    /// Strict overlap; touching edges do not count.
    pub fn overlaps(&self, o: &Rect) -> bool {
        self.x < o.right() && o.x < self.right() && self.y < o.bottom() && o.y < self.bottom()
    }

    pub fn translate(&self, d: Vec2) -> Rect {
        Rect::new(self.x + d.x, self.y + d.y, self.w, self.h)
    }

    /// Bounding square of a disc.
    pub fn around(center: Vec2, radius: f64) -> Rect {
        Rect::new(center.x - radius, center.y - radius, 2.0 * radius, 2.0 * radius)
    }
}

/// Maps a screen-space rectangle into the canonical frame.
pub fn to_canonical(r: Rect, o: Orientation) -> Rect {
    match o {
        Orientation::Bottom => r,
        // Screen left edge becomes the canonical bottom.
        Orientation::Left => Rect::new(r.y, 1.0 - r.x - r.w, r.h, r.w),
    }
}

/// Inverse of [`to_canonical`].
pub fn to_screen(r: Rect, o: Orientation) -> Rect {
    match o {
        Orientation::Bottom => r,
        Orientation::Left => Rect::new(1.0 - r.y - r.h, r.x, r.h, r.w),
    }
}

pub fn point_to_screen(p: Vec2, o: Orientation) -> Vec2 {
    match o {
        Orientation::Bottom => p,
        Orientation::Left => Vec2::new(1.0 - p.y, p.x),
    }
}

/// Screen-space direction to canonical direction.
pub fn dir_to_canonical(d: Vec2, o: Orientation) -> Vec2 {
    match o {
        Orientation::Bottom => d,
        Orientation::Left => Vec2::new(d.y, -d.x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_round_trip() {
        let r = Rect::new(0.1, 0.2, 0.3, 0.05);
        for o in [Orientation::Bottom, Orientation::Left] {
            let back = to_screen(to_canonical(r, o), o);
            assert!((back.x - r.x).abs() < 1e-12 && (back.y - r.y).abs() < 1e-12);
            assert!((back.w - r.w).abs() < 1e-12 && (back.h - r.h).abs() < 1e-12);
        }
    }

    #[test]
    fn left_edge_is_canonical_bottom() {
        // A paddle hugging the left screen edge sits on the canonical bottom.
        let paddle = Rect::new(0.0, 0.4, 0.05, 0.2);
        let c = to_canonical(paddle, Orientation::Left);
        assert!((c.bottom() - 1.0).abs() < 1e-12);
        assert!((c.x - 0.4).abs() < 1e-12 && (c.w - 0.2).abs() < 1e-12);
        // Screen "right" points toward the canonical top.
        assert_eq!(dir_to_canonical(Vec2::new(1.0, 0.0), Orientation::Left), Vec2::new(0.0, -1.0));
        assert_eq!(point_to_screen(Vec2::new(0.5, 1.0), Orientation::Left), Vec2::new(0.0, 0.5));
    }

    #[test]
    fn overlap_is_strict() {
        let a = Rect::new(0.0, 0.0, 1.0, 1.0);
        assert!(!a.overlaps(&Rect::new(1.0, 0.0, 1.0, 1.0)));
        assert!(a.overlaps(&Rect::new(0.99, 0.99, 1.0, 1.0)));
    }
}
