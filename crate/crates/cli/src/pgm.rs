//! Netpbm graymap (PGM) reading and writing, `P2` (ASCII) and `P5`
//! (binary), 8-bit only. Pixel values are taken as-is, without rescaling by
//! `maxval`.

use std::io::{self, Write};
use std::path::Path;

use drt_moments::Image;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmMagic {
    /// `P2`, whitespace-separated decimal samples.
    Ascii,
    /// `P5`, one byte per sample.
    Binary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PgmHeader {
    pub magic: PgmMagic,
    pub width: usize,
    pub height: usize,
    pub maxval: u32,
}

#[derive(Debug, Error)]
pub enum PgmError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("parse error at byte {offset}: {kind}")]
    Parse { offset: usize, kind: PgmErrorKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PgmErrorKind {
    #[error("bad magic number (expected P2 or P5)")]
    BadMagic,
    #[error("unsupported maxval {0} (must be 1..=255)")]
    UnsupportedMaxval(u64),
    #[error("truncated data")]
    Truncated,
    #[error("non-numeric token `{0}`")]
    NonNumeric(String),
    #[error("sample {value} exceeds maxval {maxval}")]
    SampleAboveMaxval { value: u64, maxval: u32 },
    #[error("invalid dimensions {0}x{1}")]
    InvalidDimensions(usize, usize),
}

impl PgmError {
    pub fn kind(&self) -> Option<&PgmErrorKind> {
        match self {
            PgmError::Parse { kind, .. } => Some(kind),
            PgmError::Io { .. } => None,
        }
    }
}

fn err(offset: usize, kind: PgmErrorKind) -> PgmError {
    PgmError::Parse { offset, kind }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    /// Skips whitespace and `#` comments that run to end of line.
    fn skip_blank(&mut self) {
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

    fn number(&mut self, comments: bool) -> Result<(u64, usize), PgmError> {
        if comments {
            self.skip_blank();
        } else {
            while self.data.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
                self.pos += 1;
            }
        }
        let start = self.pos;
        while self.data.get(self.pos).is_some_and(|c| !c.is_ascii_whitespace() && *c != b'#') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, PgmErrorKind::Truncated));
        }
        let token = &self.data[start..self.pos];
        let text = String::from_utf8_lossy(token);
        if !token.iter().all(u8::is_ascii_digit) {
            return Err(err(start, PgmErrorKind::NonNumeric(text.into_owned())));
        }
        // all digits, so the only failure left is overflow
        let value = text.parse().unwrap_or(u64::MAX);
        Ok((value, start))
    }
}

/// Parses the header, returning it with the offset of the first raster byte
/// (for `P5`) or of the first sample token (for `P2`).
pub fn parse_header(data: &[u8]) -> Result<(PgmHeader, usize), PgmError> {
    let magic = match data.get(..2) {
        Some(b"P2") => PgmMagic::Ascii,
        Some(b"P5") => PgmMagic::Binary,
        _ => return Err(err(0, PgmErrorKind::BadMagic)),
    };
    let mut cur = Cursor { data, pos: 2 };
    if !cur.data.get(2).is_some_and(|c| c.is_ascii_whitespace() || *c == b'#') {
        return Err(err(0, PgmErrorKind::BadMagic));
    }
    let (width, w_at) = cur.number(true)?;
    let (height, _) = cur.number(true)?;
    let (width, height) = (width.min(usize::MAX as u64) as usize, height.min(usize::MAX as u64) as usize);
    if width == 0 || height == 0 || width > drt_moments::MAX_DIMENSION || height > drt_moments::MAX_DIMENSION {
        return Err(err(w_at, PgmErrorKind::InvalidDimensions(width, height)));
    }
    let (maxval, m_at) = cur.number(true)?;
    if !(1..=255).contains(&maxval) {
        return Err(err(m_at, PgmErrorKind::UnsupportedMaxval(maxval)));
    }
    // exactly one whitespace byte separates maxval from the raster
    match cur.data.get(cur.pos) {
        Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
        Some(_) => {
            return Err(err(
                cur.pos,
                PgmErrorKind::NonNumeric(String::from_utf8_lossy(&data[m_at..=cur.pos]).into_owned()),
            ))
        }
        None => return Err(err(cur.pos, PgmErrorKind::Truncated)),
    }
    Ok((PgmHeader { magic, width, height, maxval: maxval as u32 }, cur.pos))
}

pub fn parse_pgm(data: &[u8]) -> Result<Image, PgmError> {
    let (header, start) = parse_header(data)?;
    let count = header.width * header.height;
    let pixels = match header.magic {
        PgmMagic::Binary => {
            let raster = data.get(start..start + count).ok_or_else(|| err(data.len(), PgmErrorKind::Truncated))?;
            if let Some(idx) = raster.iter().position(|&v| v as u32 > header.maxval) {
                let value = raster[idx] as u64;
                return Err(err(start + idx, PgmErrorKind::SampleAboveMaxval { value, maxval: header.maxval }));
            }
            raster.to_vec()
        }
        PgmMagic::Ascii => {
            let mut cur = Cursor { data, pos: start };
            let mut pixels = Vec::with_capacity(count);
            for _ in 0..count {
                let (value, at) = cur.number(false)?;
                if value > header.maxval as u64 {
                    return Err(err(at, PgmErrorKind::SampleAboveMaxval { value, maxval: header.maxval }));
                }
                pixels.push(value as u8);
            }
            pixels
        }
    };
    Image::new(header.width, header.height, pixels)
        .map_err(|_| err(0, PgmErrorKind::InvalidDimensions(header.width, header.height)))
}

pub fn read_pgm(path: impl AsRef<Path>) -> Result<Image, PgmError> {
    let path = path.as_ref();
    let data = std::fs::read(path).map_err(|source| PgmError::Io { path: path.display().to_string(), source })?;
    parse_pgm(&data)
}

/// Writes `img` with `maxval` 255.
pub fn write_pgm<W: Write>(img: &Image, magic: PgmMagic, mut out: W) -> io::Result<()> {
    match magic {
        PgmMagic::Binary => {
            write!(out, "P5\n{} {}\n255\n", img.width(), img.height())?;
            out.write_all(img.pixels())?;
        }
        PgmMagic::Ascii => {
            write!(out, "P2\n{} {}\n255\n", img.width(), img.height())?;
            for row in img.rows() {
                let line: Vec<String> = row.iter().map(u8::to_string).collect();
                writeln!(out, "{}", line.join(" "))?;
            }
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(data: &[u8]) -> PgmErrorKind {
        parse_pgm(data).unwrap_err().kind().cloned().unwrap()
    }

    #[test]
    fn ascii_fixture() {
        let img = parse_pgm(b"P2\n2 2\n255\n1 2 3 4\n").unwrap();
        assert_eq!((img.get(0, 0), img.get(1, 0), img.get(0, 1), img.get(1, 1)), (1, 2, 3, 4));
    }

    #[test]
    fn binary_matches_ascii() {
        let a = parse_pgm(b"P2\n2 2\n255\n1 2 3 4\n").unwrap();
        let b = parse_pgm(b"P5\n2 2\n255\n\x01\x02\x03\x04").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn comments_in_header() {
        let img = parse_pgm(b"P2 # made by hand\n# size next\n3 1 # w h\n9\n0 5 9").unwrap();
        assert_eq!(img.pixels(), &[0, 5, 9]);
        // a '#' byte inside a binary raster is data, not a comment
        let img = parse_pgm(b"P5\n#c\n2 1\n255\n##").unwrap();
        assert_eq!(img.pixels(), b"##");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(kind(b"P6\n1 1\n255\n\0"), PgmErrorKind::BadMagic);
        assert_eq!(kind(b"P25\n1 1\n255\n0"), PgmErrorKind::BadMagic);
        assert_eq!(kind(b"P5\n1 1\n65535\n\0\0"), PgmErrorKind::UnsupportedMaxval(65535));
        assert_eq!(kind(b"P5\n1 1\n0\n\0"), PgmErrorKind::UnsupportedMaxval(0));
        assert_eq!(kind(b"P5\n2 2\n255\n\0\0\0"), PgmErrorKind::Truncated);
        assert_eq!(kind(b"P2\n2 2\n255\n1 2 3"), PgmErrorKind::Truncated);
        assert_eq!(kind(b"P2\n2 x\n255\n"), PgmErrorKind::NonNumeric("x".into()));
        assert_eq!(kind(b"P2\n1 1\n10\n11\n"), PgmErrorKind::SampleAboveMaxval { value: 11, maxval: 10 });
        assert_eq!(kind(b"P2\n0 1\n255\n"), PgmErrorKind::InvalidDimensions(0, 1));
    }

    #[test]
    fn error_offsets() {
        let e = parse_pgm(b"P2\n2 2\n255\n1 2 z 4\n").unwrap_err();
        assert!(matches!(e, PgmError::Parse { offset: 15, .. }), "{e}");
        assert!(e.to_string().contains("byte 15"));
        let e = parse_pgm(b"P5\n1 1\n65535\n").unwrap_err();
        assert!(e.to_string().contains("unsupported maxval"));
    }

    #[test]
    fn round_trip_both_formats() {
        let img = Image::from_fn(5, 3, |i, j| (i * 50 + j * 7) as u8).unwrap();
        for magic in [PgmMagic::Ascii, PgmMagic::Binary] {
            let mut buf = Vec::new();
            write_pgm(&img, magic, &mut buf).unwrap();
            assert_eq!(parse_pgm(&buf).unwrap(), img);
        }
    }
}
