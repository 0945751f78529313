//! The 84×84×3 observation: rasterization and post-processing.

pub mod export;
pub mod frame;
pub mod post;
pub mod raster;

pub use export::{read_dump, read_png, write_dump, write_png, ExportError};
pub use frame::{Frame, CHANNELS, FRAME_BYTES, HEIGHT, WIDTH};
pub use post::{invert, postprocess, rotate, shift_hsv, BadRotation};
pub use raster::{render, render_into};

use crate::sim::WorldState;

/// The observation for a world: render followed by its image settings.
pub fn observe(w: &WorldState) -> Result<Frame, BadRotation> {
    postprocess(&render(w), &w.cfg.image)
}
