use crate::config::Rgb;

pub const WIDTH: usize = 84;
pub const HEIGHT: usize = 84;
pub const CHANNELS: usize = 3;
pub const FRAME_BYTES: usize = WIDTH * HEIGHT * CHANNELS;

/// An 84×84 RGB observation, row-major, 8 bits per channel.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    pixels: Box<[u8; FRAME_BYTES]>,
}

impl std::fmt::Debug for Frame {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Frame({WIDTH}x{HEIGHT}, {})", &self.digest()[..16])
    }
}

impl Default for Frame {
    fn default() -> Self {
        Self::filled([0, 0, 0])
    }
}

impl Frame {
    pub fn filled(color: Rgb) -> Self {
        let mut f = Frame {
            pixels: Box::new([0; FRAME_BYTES]),
        };
        f.fill(color);
        f
    }

    /// Wraps a raw buffer; `None` unless it holds exactly one frame.
    pub fn from_bytes(bytes: &[u8]) -> Option<Self> {
        let arr: [u8; FRAME_BYTES] = bytes.try_into().ok()?;
        Some(Frame { pixels: Box::new(arr) })
    }

    pub fn fill(&mut self, color: Rgb) {
        for px in self.pixels.chunks_exact_mut(CHANNELS) {
            px.copy_from_slice(&color);
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.pixels[..]
    }

    pub fn as_bytes_mut(&mut self) -> &mut [u8] {
        &mut self.pixels[..]
    }

    pub fn shape(&self) -> [usize; 3] {
        [HEIGHT, WIDTH, CHANNELS]
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        let i = (y * WIDTH + x) * CHANNELS;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn set(&mut self, x: usize, y: usize, c: Rgb) {
        let i = (y * WIDTH + x) * CHANNELS;
        self.pixels[i..i + CHANNELS].copy_from_slice(&c);
    }

    /// Fills the half-open pixel box `[x0, x1) × [y0, y1)`, clipped to the frame.
    pub fn fill_box(&mut self, x0: usize, y0: usize, x1: usize, y1: usize, c: Rgb) {
        let (x1, y1) = (x1.min(WIDTH), y1.min(HEIGHT));
        for y in y0..y1 {
            for x in x0..x1 {
                self.set(x, y, c);
            }
        }
    }

    /// Hex SHA-256 of the pixel bytes.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.as_bytes()))
    }
}
