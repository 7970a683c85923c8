//! Netpbm grayscale (P2/P5) reader and P5/P6 writers.

use super::{Image, Rgb};
use crate::error::PnmError;

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    /// Skips whitespace and `#` comments (a comment runs to end of line).
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    /// Reads one unsigned decimal token, preceded by separators.
    fn read_uint(&mut self, what: &'static str) -> Result<(u64, usize), PnmError> {
        self.skip_separators();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(b - b'0')))
                .ok_or(PnmError::MalformedHeader {
                    offset: start,
                    reason: "number overflows",
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PnmError::MalformedHeader {
                offset: start,
                reason: what,
            });
        }
        if let Some(&b) = self.bytes.get(self.pos) {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(PnmError::MalformedHeader {
                    offset: self.pos,
                    reason: "unexpected byte after number",
                });
            }
        }
        Ok((value, start))
    }
}

/// Parses a binary (P5) or ASCII (P2) PGM with maxval ≤ 255.
///
/// Samples are returned as stored; no rescaling to the 0..=255 range
/// is applied when maxval < 255. Trailing bytes after the payload are
/// ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<Image<u8>, PnmError> {
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => return Err(PnmError::BadMagic { offset: 0 }),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    match cur.bytes.get(2) {
        Some(b) if b.is_ascii_whitespace() || *b == b'#' => {}
        _ => {
            return Err(PnmError::MalformedHeader {
                offset: 2,
                reason: "expected whitespace after magic",
            })
        }
    }

    let (width, w_off) = cur.read_uint("expected width")?;
    let (height, h_off) = cur.read_uint("expected height")?;
    let (maxval, m_off) = cur.read_uint("expected maxval")?;
    if width == 0 {
        return Err(PnmError::MalformedHeader {
            offset: w_off,
            reason: "width must be positive",
        });
    }
    if height == 0 {
        return Err(PnmError::MalformedHeader {
            offset: h_off,
            reason: "height must be positive",
        });
    }
    if maxval == 0 {
        return Err(PnmError::MalformedHeader {
            offset: m_off,
            reason: "maxval must be positive",
        });
    }
    if maxval > 255 {
        return Err(PnmError::MaxvalTooLarge {
            offset: m_off,
            maxval,
        });
    }
    let (width, height) = (width as usize, height as usize);
    let n = width.checked_mul(height).ok_or(PnmError::MalformedHeader {
        offset: w_off,
        reason: "dimensions overflow",
    })?;

    let data = if binary {
        // Exactly one whitespace byte separates maxval from the raster.
        match bytes.get(cur.pos) {
            Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
            _ => {
                return Err(PnmError::Truncated {
                    offset: cur.pos,
                    expected: n,
                    found: 0,
                })
            }
        }
        let payload = &bytes[cur.pos..];
        if payload.len() < n {
            return Err(PnmError::Truncated {
                offset: bytes.len(),
                expected: n,
                found: payload.len(),
            });
        }
        let data = payload[..n].to_vec();
        if let Some(i) = data.iter().position(|&v| u64::from(v) > maxval) {
            return Err(PnmError::SampleOutOfRange {
                offset: cur.pos + i,
                value: u64::from(data[i]),
                maxval,
            });
        }
        data
    } else {
        let mut data = Vec::with_capacity(n);
        for found in 0..n {
            cur.skip_separators();
            if cur.pos >= bytes.len() {
                return Err(PnmError::Truncated {
                    offset: cur.pos,
                    expected: n,
                    found,
                });
            }
            let (v, off) = cur.read_uint("expected sample")?;
            if v > maxval {
                return Err(PnmError::SampleOutOfRange {
                    offset: off,
                    value: v,
                    maxval,
                });
            }
            data.push(v as u8);
        }
        data
    };
    Ok(Image::from_raw(width, height, data))
}

/// Encodes as binary PGM with header `P5\n<w> <h>\n255\n`.
pub fn write_pgm(img: &Image<u8>) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.data());
    out
}

/// Encodes as binary PPM (P6, maxval 255, interleaved RGB).
pub fn write_ppm(img: &Image<Rgb>) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.reserve(img.len() * 3);
    for px in img.data() {
        out.extend_from_slice(px);
    }
    out
}
