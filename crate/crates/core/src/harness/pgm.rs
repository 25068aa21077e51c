//! Minimal netpbm I/O: grayscale PGM in (plain `P2` and raw `P5`), bilevel
//! PBM out (plain `P1`).
//!
//! Samples are returned unscaled, with the file's maxval.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::BitVector;

#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub max_value: u16,
    /// Row-major samples.
    pub pixels: Vec<u16>,
}

impl GrayImage {
    pub fn intensities(&self) -> Vec<f64> {
        self.pixels.iter().map(|&p| f64::from(p)).collect()
    }
}

struct Header<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space(&mut self) {
        while let Some(&c) = self.data.get(self.pos) {
            if c == b'#' {
                while self.data.get(self.pos).is_some_and(|&c| c != b'\n' && c != b'\r') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("PGM: expected {what} at byte {start}")))
    }
}

pub fn read_pgm(data: &[u8]) -> Result<GrayImage> {
    let raw = match data.get(..2) {
        Some(b"P2") => false,
        Some(b"P5") => true,
        _ => return Err(Error::Parse("PGM: expected magic P2 or P5".into())),
    };
    let mut h = Header { data, pos: 2 };
    let width = h.number("width")?;
    let height = h.number("height")?;
    let max_value = h.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Parse("PGM: zero image dimension".into()));
    }
    if !(1..=65535).contains(&max_value) {
        return Err(Error::Parse(format!("PGM: maxval {max_value} outside 1..=65535")));
    }
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::Parse("PGM: image dimensions overflow".into()))?;

    let pixels: Vec<u16> = if raw {
        // Exactly one whitespace byte separates the header from the raster.
        if !data.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::Parse("PGM: missing separator before raster".into()));
        }
        let body = &data[h.pos + 1..];
        let bytes = if max_value < 256 { 1 } else { 2 };
        if body.len() < count * bytes {
            return Err(Error::Parse(format!(
                "PGM: raster has {} bytes, expected {}",
                body.len(),
                count * bytes
            )));
        }
        if bytes == 1 {
            body[..count].iter().map(|&b| u16::from(b)).collect()
        } else {
            body[..2 * count].chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
        }
    } else {
        (0..count)
            .map(|_| h.number("sample").map(|v| v.min(usize::from(u16::MAX)) as u16))
            .collect::<Result<_>>()?
    };
    if let Some(p) = pixels.iter().find(|&&p| usize::from(p) > max_value) {
        return Err(Error::Parse(format!("PGM: sample {p} exceeds maxval {max_value}")));
    }
    Ok(GrayImage { width, height, max_value: max_value as u16, pixels })
}

pub fn read_pgm_file(path: &Path) -> Result<GrayImage> {
    let data = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_pgm(&data)
}

/// Plain PBM; bit 1 is written as `1` (black).
pub fn write_mask<W: Write>(mask: &BitVector, width: usize, height: usize, mut out: W) -> Result<()> {
    if mask.len() != width * height {
        return Err(Error::DimensionMismatch { expected: width * height, actual: mask.len() });
    }
    let io = |e: std::io::Error| Error::Io(e.to_string());
    writeln!(out, "P1\n{width} {height}").map_err(io)?;
    for row in mask.bits().chunks(width) {
        let line: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(out, "{}", line.join(" ")).map_err(io)?;
    }
    Ok(())
}

pub fn write_mask_file(mask: &BitVector, width: usize, height: usize, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    write_mask(mask, width, height, &mut buf)?;
    fs::write(path, buf).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
