//! Draws a world into a frame.
//!
//! Layout, in pixels: a UI-colored frame around a 74×74 play area whose top
//! left corner is at (5, 8). The strip above it holds the score bar (rows
//! 1–2) and the time bar (rows 4–5).

use super::frame::{Frame, HEIGHT, WIDTH};
use crate::config::Rgb;
use crate::sim::geometry::{point_to_screen, to_screen, Rect};
use crate::sim::world::{Owner, WorldState, WALL_THICKNESS};
use crate::sim::{MAX_SCORE, MIN_SCORE};

pub const PLAY_X0: usize = 5;
pub const PLAY_Y0: usize = 8;
pub const PLAY_SIZE: usize = 74;
pub const SCORE_BAR_ROWS: (usize, usize) = (1, 3);
pub const TIME_BAR_ROWS: (usize, usize) = (4, 6);

/// Wall texture: the base color alternates with this shade of it.
const CHECKER_SHADE: f64 = 0.6;

fn shade(c: Rgb) -> Rgb {
    c.map(|v| (v as f64 * CHECKER_SHADE).round() as u8)
}

/// Pixel span `[lo, hi)` of a normalized interval, at least one pixel wide
/// when the interval has positive length and touches the play area.
fn span(start: f64, len: f64) -> Option<(usize, usize)> {
    let s = PLAY_SIZE as f64;
    let lo = (start * s).round().clamp(0.0, s) as usize;
    let mut hi = ((start + len) * s).round().clamp(0.0, s) as usize;
    if hi <= lo {
        if len <= 0.0 || start + len <= 0.0 || start >= 1.0 {
            return None;
        }
        let lo = lo.min(PLAY_SIZE - 1);
        return Some((lo, lo + 1));
    }
    if hi > PLAY_SIZE {
        hi = PLAY_SIZE;
    }
    Some((lo, hi))
}

fn draw_rect(f: &mut Frame, r: &Rect, c: Rgb) {
    if let (Some((x0, x1)), Some((y0, y1))) = (span(r.x, r.w), span(r.y, r.h)) {
        f.fill_box(PLAY_X0 + x0, PLAY_Y0 + y0, PLAY_X0 + x1, PLAY_Y0 + y1, c);
    }
}

fn draw_checker(f: &mut Frame, r: &Rect, c: Rgb) {
    let dark = shade(c);
    if let (Some((x0, x1)), Some((y0, y1))) = (span(r.x, r.w), span(r.y, r.h)) {
        for y in y0..y1 {
            for x in x0..x1 {
                let col = if (x + y) % 2 == 0 { c } else { dark };
                f.set(PLAY_X0 + x, PLAY_Y0 + y, col);
            }
        }
    }
}

fn draw_disc(f: &mut Frame, cx: f64, cy: f64, r: f64, c: Rgb) {
    let s = PLAY_SIZE as f64;
    let (px, py, pr) = (cx * s, cy * s, r * s);
    let x0 = (px - pr).floor().max(0.0) as usize;
    let y0 = (py - pr).floor().max(0.0) as usize;
    let x1 = ((px + pr).ceil().max(0.0) as usize).min(PLAY_SIZE);
    let y1 = ((py + pr).ceil().max(0.0) as usize).min(PLAY_SIZE);
    let mut any = false;
    for y in y0..y1 {
        for x in x0..x1 {
            let (dx, dy) = (x as f64 + 0.5 - px, y as f64 + 0.5 - py);
            if dx * dx + dy * dy <= pr * pr {
                f.set(PLAY_X0 + x, PLAY_Y0 + y, c);
                any = true;
            }
        }
    }
    if !any && (0.0..s).contains(&px) && (0.0..s).contains(&py) {
        f.set(PLAY_X0 + px as usize, PLAY_Y0 + py as usize, c);
    }
}

fn draw_bar(f: &mut Frame, rows: (usize, usize), fraction: f64, on: Rgb, off: Rgb) {
    let filled = (fraction.clamp(0.0, 1.0) * PLAY_SIZE as f64).round() as usize;
    f.fill_box(PLAY_X0, rows.0, PLAY_X0 + PLAY_SIZE, rows.1, off);
    f.fill_box(PLAY_X0, rows.0, PLAY_X0 + filled, rows.1, on);
}

/// Renders `w` with its display colors. Pure: equal worlds give equal frames.
pub fn render(w: &WorldState) -> Frame {
    let mut f = Frame::filled(w.cfg.display.ui_color);
    render_into(w, &mut f);
    f
}

/// [`render`] into an existing buffer, overwriting every pixel.
pub fn render_into(w: &WorldState, f: &mut Frame) {
    let cfg = &w.cfg;
    let d = &cfg.display;
    let o = cfg.player.orientation;
    f.fill(d.ui_color);
    f.fill_box(PLAY_X0, PLAY_Y0, PLAY_X0 + PLAY_SIZE, PLAY_Y0 + PLAY_SIZE, d.background_color);

    let wall_color = cfg.barriers.as_ref().map_or(d.ui_color, |b| b.color);
    if cfg.game_elements.top_wall {
        draw_checker(f, &to_screen(Rect::new(0.0, 0.0, 1.0, WALL_THICKNESS), o), wall_color);
    }
    if cfg.game_elements.bottom_wall {
        draw_checker(f, &to_screen(Rect::new(0.0, 1.0 - WALL_THICKNESS, 1.0, WALL_THICKNESS), o), wall_color);
    }
    if let Some(b) = &cfg.barriers {
        for r in &w.barriers {
            draw_checker(f, &to_screen(*r, o), b.color);
        }
    }
    if let Some(b) = &cfg.blocks {
        for blk in &w.blocks {
            draw_rect(f, &to_screen(blk.rect, o), b.color);
        }
    }
    let opp_color = cfg.opponent.as_ref().map_or(cfg.player.color, |op| op.color);
    for bullet in &w.bullets {
        let c = match bullet.owner {
            Owner::Player => cfg.player.color,
            Owner::Opponent => opp_color,
        };
        draw_rect(f, &to_screen(bullet.rect, o), c);
    }
    if let Some(op) = &w.opponent {
        draw_rect(f, &to_screen(op.rect, o), opp_color);
    }
    if let (Some(ball), Some(bc)) = (&w.ball, &cfg.ball) {
        let p = point_to_screen(ball.pos, o);
        draw_disc(f, p.x, p.y, ball.radius, bc.color);
    }
    draw_rect(f, &to_screen(w.player.rect, o), cfg.player.color);

    let score_frac = (w.score - MIN_SCORE) as f64 / (MAX_SCORE - MIN_SCORE) as f64;
    draw_bar(f, SCORE_BAR_ROWS, score_frac, d.indicator_color_1, d.indicator_color_2);
    let time_frac = w.step_count as f64 / cfg.max_steps.max(1) as f64;
    draw_bar(f, TIME_BAR_ROWS, time_frac, d.indicator_color_1, d.indicator_color_2);
    debug_assert!(PLAY_X0 + PLAY_SIZE <= WIDTH && PLAY_Y0 + PLAY_SIZE <= HEIGHT);
}

/// Pixel coordinates of a normalized screen point, for tests and tools.
pub fn to_pixel(x: f64, y: f64) -> (usize, usize) {
    let s = PLAY_SIZE as f64;
    (
        PLAY_X0 + ((x * s).floor().clamp(0.0, s - 1.0)) as usize,
        PLAY_Y0 + ((y * s).floor().clamp(0.0, s - 1.0)) as usize,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_spans_still_cover_a_pixel() {
        assert_eq!(span(0.5, 0.001), Some((37, 38)));
        assert_eq!(span(-0.5, 0.1), None);
        assert_eq!(span(0.0, 1.0), Some((0, PLAY_SIZE)));
        assert_eq!(span(0.9, 0.5), Some((67, PLAY_SIZE)));
    }

    #[test]
    fn bar_fill_is_proportional() {
        let mut f = Frame::default();
        draw_bar(&mut f, SCORE_BAR_ROWS, 0.5, [9, 9, 9], [1, 1, 1]);
        assert_eq!(f.get(PLAY_X0 + 36, 1), [9, 9, 9]);
        assert_eq!(f.get(PLAY_X0 + 37, 1), [1, 1, 1]);
    }
}
