use rand::Rng;

use super::event::MAX_SCORE;
use super::geometry::Rect;
use crate::config::{BlockMotion, ConcreteBlocks};

#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub rect: Rect,
    pub value: i32,
    pub harmful: bool,
    /// Weave direction along x, `1.0` or `-1.0`.
    pub heading: f64,
}

/// Continuous row emitter for falling blocks.
///
/// Virtual rows sit stacked above the creation area's bottom edge and
/// descend with the blocks; a row materializes once its cell reaches the
/// top of the play area. Emission stops when the blocks handed out are
/// worth the full 100 points.
#[derive(Debug, Clone, PartialEq)]
pub struct Spawner {
    pub area: Rect,
    /// Top edge of the next row to emit.
    pub next_top: f64,
    /// Blocks left to emit; `None` when unlimited.
    pub remaining: Option<u32>,
    pub row_index: u32,
}

impl Spawner {
    pub fn new(b: &ConcreteBlocks, area: Rect) -> Self {
        let cell_h = area.h / b.rows.max(1) as f64;
        let remaining = (b.points > 0).then(|| (MAX_SCORE as u32).div_ceil(b.points as u32));
        Self {
            area,
            next_top: area.y + area.h - cell_h,
            remaining,
            row_index: 0,
        }
    }

    pub fn exhausted(&self) -> bool {
        self.remaining == Some(0)
    }
}

fn cell_rect(b: &ConcreteBlocks, area: &Rect, col: u32, top: f64) -> Rect {
    let cell_w = area.w / b.cols.max(1) as f64;
    let cell_h = area.h / b.rows.max(1) as f64;
    let pad = b.spacing.clamp(0.0, 0.99);
    Rect::new(
        area.x + col as f64 * cell_w + cell_w * pad / 2.0,
        top + cell_h * pad / 2.0,
        cell_w * (1.0 - pad),
        cell_h * (1.0 - pad),
    )
}

/// `k` distinct columns out of `cols`, ascending.
fn pick_columns<R: Rng + ?Sized>(cols: u32, k: u32, rng: &mut R) -> Vec<u32> {
    let mut idx: Vec<u32> = (0..cols).collect();
    let k = k.min(cols) as usize;
    for i in 0..k {
        let j = rng.random_range(i..idx.len());
        idx.swap(i, j);
    }
    let mut out = idx[..k].to_vec();
    out.sort_unstable();
    out
}

fn row_blocks<R: Rng + ?Sized>(b: &ConcreteBlocks, area: &Rect, row: u32, top: f64, k: u32, rng: &mut R) -> Vec<Block> {
    let heading = if row % 2 == 0 { 1.0 } else { -1.0 };
    pick_columns(b.cols, k, rng)
        .into_iter()
        .map(|c| Block {
            rect: cell_rect(b, area, c, top),
            value: b.points,
            harmful: b.harmful,
            heading,
        })
        .collect()
}

/// The initial grid: `per_row` random cells in each of `rows` rows.
pub fn layout_static<R: Rng + ?Sized>(b: &ConcreteBlocks, area: Rect, rng: &mut R) -> Vec<Block> {
    let cell_h = area.h / b.rows.max(1) as f64;
    (0..b.rows)
        .flat_map(|r| row_blocks(b, &area, r, area.y + r as f64 * cell_h, b.per_row, rng))
        .collect()
}

/// Advances block motion one frame. Returns how many blocks dropped out
/// below the play area.
pub fn update_blocks<R: Rng + ?Sized>(
    blocks: &mut Vec<Block>,
    spawner: Option<&mut Spawner>,
    b: &ConcreteBlocks,
    rng: &mut R,
) -> u32 {
    match b.motion {
        BlockMotion::Static => 0,
        BlockMotion::Weave => {
            for blk in blocks.iter_mut() {
                let at_right = blk.rect.right() >= 1.0 && blk.heading > 0.0;
                let at_left = blk.rect.x <= 0.0 && blk.heading < 0.0;
                if at_right || at_left {
                    blk.heading = -blk.heading;
                }
                blk.rect.x = (blk.rect.x + blk.heading * b.speed).clamp(0.0, (1.0 - blk.rect.w).max(0.0));
            }
            0
        }
        BlockMotion::Fall => {
            for blk in blocks.iter_mut() {
                blk.rect.y += b.speed;
            }
            let before = blocks.len();
            blocks.retain(|blk| blk.rect.y <= 1.0);
            let fell = (before - blocks.len()) as u32;
            if let Some(s) = spawner {
                s.next_top += b.speed;
                let cell_h = s.area.h / b.rows.max(1) as f64;
                // A zero-height area would emit forever.
                while cell_h > 0.0 && s.next_top + cell_h >= 0.0 && !s.exhausted() {
                    let k = s.remaining.map_or(b.per_row, |r| r.min(b.per_row));
                    let row = row_blocks(b, &s.area, s.row_index, s.next_top, k, rng);
                    if let Some(r) = s.remaining.as_mut() {
                        *r -= row.len() as u32;
                    }
                    blocks.extend(row);
                    s.next_top -= cell_h;
                    s.row_index += 1;
                    if k == 0 {
                        break;
                    }
                }
            }
            fell
        }
    }
}
