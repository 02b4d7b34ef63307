//! Binary PGM (P5) reading and writing, 8-bit only.
//! <https://netpbm.sourceforge.net/doc/pgm.html>

use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use crate::error::PgmError;
use crate::image::GrayImage;

type Result<T> = std::result::Result<T, PgmError>;

struct Header<'a> {
    rest: &'a [u8],
}

impl<'a> Header<'a> {
    /// Skips whitespace and `#` comments, then reads one ASCII token.
    fn token(&mut self, what: &str) -> Result<&'a [u8]> {
        loop {
            match self.rest.first() {
                Some(b) if b.is_ascii_whitespace() => self.rest = &self.rest[1..],
                Some(b'#') => {
                    let eol = self.rest.iter().position(|&b| b == b'\n' || b == b'\r');
                    self.rest = eol.map_or(&[][..], |i| &self.rest[i..]);
                }
                Some(_) => break,
                None => return Err(PgmError::MalformedHeader(format!("missing {what}"))),
            }
        }
        let end = self
            .rest
            .iter()
            .position(|b| b.is_ascii_whitespace() || *b == b'#')
            .unwrap_or(self.rest.len());
        let (tok, rest) = self.rest.split_at(end);
        self.rest = rest;
        Ok(tok)
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        let tok = self.token(what)?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| {
                PgmError::MalformedHeader(format!(
                    "{what} {:?} is not a number",
                    String::from_utf8_lossy(tok)
                ))
            })
    }
}

/// Decodes a P5 image held in memory.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut header = Header { rest: bytes };
    let magic = header.token("magic number")?;
    if magic != b"P5" {
        return Err(PgmError::BadMagic(
            String::from_utf8_lossy(magic).into_owned(),
        ));
    }
    let width = header.number("width")?;
    let height = header.number("height")?;
    let maxval = header.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PgmError::MalformedHeader(format!(
            "empty image {width}x{height}"
        )));
    }
    if maxval != 255 {
        return Err(PgmError::UnsupportedDepth(maxval));
    }
    // exactly one whitespace byte separates maxval from the raster
    let raster = match header.rest.split_first() {
        Some((b, rest)) if b.is_ascii_whitespace() => rest,
        _ => {
            return Err(PgmError::Truncated {
                expected: width as usize * height as usize,
                actual: 0,
            })
        }
    };
    let expected = width as usize * height as usize;
    if raster.len() < expected {
        return Err(PgmError::Truncated {
            expected,
            actual: raster.len(),
        });
    }
    GrayImage::new(width as usize, height as usize, raster[..expected].to_vec())
        .map_err(|e| PgmError::MalformedHeader(e.to_string()))
}

pub fn encode_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<GrayImage> {
    parse_pgm(&fs::read(path)?)
}

/// Writes `img` as P5. An existing file is only replaced when `force` is set.
pub fn write_pgm(img: &GrayImage, path: impl AsRef<Path>, force: bool) -> Result<()> {
    let path = path.as_ref();
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    let mut file = opts.open(path).map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            PgmError::Exists(path.display().to_string())
        } else {
            PgmError::Io(e)
        }
    })?;
    file.write_all(&encode_pgm(img))?;
    Ok(())
}
