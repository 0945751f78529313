//! Frame files: PNG images and a raw multi-frame dump.
//!
//! The dump starts with the magic `ARCF` followed by four little-endian
//! `u32` values (width, height, channels, frame count) and then the frames'
//! pixel bytes back to back.

use std::io::{Read, Write};
use std::path::Path;

use thiserror::Error;

use super::frame::{Frame, CHANNELS, FRAME_BYTES, HEIGHT, WIDTH};

pub const DUMP_MAGIC: &[u8; 4] = b"ARCF";

#[derive(Debug, Error)]
pub enum ExportError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Image(#[from] image::ImageError),
    #[error("not a frame dump: {0}")]
    Format(String),
}

pub fn write_png(f: &Frame, path: &Path) -> Result<(), ExportError> {
    image::save_buffer(path, f.as_bytes(), WIDTH as u32, HEIGHT as u32, image::ExtendedColorType::Rgb8)?;
    Ok(())
}

pub fn read_png(path: &Path) -> Result<Frame, ExportError> {
    let img = image::open(path)?.to_rgb8();
    if img.width() as usize != WIDTH || img.height() as usize != HEIGHT {
        return Err(ExportError::Format(format!("image is {}x{}", img.width(), img.height())));
    }
    Ok(Frame::from_bytes(img.as_raw()).expect("size checked"))
}

pub fn write_dump<W: Write>(mut out: W, frames: &[Frame]) -> Result<(), ExportError> {
    out.write_all(DUMP_MAGIC)?;
    for v in [WIDTH, HEIGHT, CHANNELS, frames.len()] {
        out.write_all(&(v as u32).to_le_bytes())?;
    }
    for f in frames {
        out.write_all(f.as_bytes())?;
    }
    Ok(())
}

pub fn read_dump<R: Read>(mut input: R) -> Result<Vec<Frame>, ExportError> {
    let mut header = [0u8; 20];
    input.read_exact(&mut header)?;
    if &header[..4] != DUMP_MAGIC {
        return Err(ExportError::Format("bad magic".into()));
    }
    let field = |i: usize| u32::from_le_bytes(header[4 + 4 * i..8 + 4 * i].try_into().unwrap()) as usize;
    let (w, h, c, n) = (field(0), field(1), field(2), field(3));
    if (w, h, c) != (WIDTH, HEIGHT, CHANNELS) {
        return Err(ExportError::Format(format!("unsupported shape {w}x{h}x{c}")));
    }
    let mut frames = Vec::with_capacity(n);
    let mut buf = vec![0u8; FRAME_BYTES];
    for _ in 0..n {
        input.read_exact(&mut buf)?;
        frames.push(Frame::from_bytes(&buf).expect("exact size"));
    }
    Ok(frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_round_trip() {
        let frames = vec![Frame::filled([1, 2, 3]), Frame::filled([250, 0, 9])];
        let mut buf = Vec::new();
        write_dump(&mut buf, &frames).unwrap();
        assert_eq!(buf.len(), 20 + 2 * FRAME_BYTES);
        assert_eq!(&buf[4..8], &84u32.to_le_bytes());
        assert_eq!(read_dump(&buf[..]).unwrap(), frames);
    }

    #[test]
    fn png_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.png");
        let mut f = Frame::filled([7, 8, 9]);
        f.set(10, 20, [255, 0, 128]);
        write_png(&f, &path).unwrap();
        assert_eq!(read_png(&path).unwrap(), f);
    }
}
