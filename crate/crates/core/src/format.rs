//! `CUBEORIENT v1` text files: a header line followed by the hex-encoded
//! serialized bit stream.
//!
//! ```text
//! CUBEORIENT v1 d=2
//! f0
//! ```

use std::fs;
use std::path::Path;

use crate::cube::{Dim, Orientation};
use crate::error::{CubeError, Result};

pub const MAGIC: &str = "CUBEORIENT v1";

pub fn to_text(o: &Orientation) -> String {
    let mut s = format!("{MAGIC} d={}\n", o.dim());
    for b in o.to_bytes() {
        s.push_str(&format!("{b:02x}"));
    }
    s.push('\n');
    s
}

pub fn from_text(text: &str) -> Result<Orientation> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CubeError::Parse("empty input".into()))?;
    let d = header
        .strip_prefix(MAGIC)
        .and_then(|rest| rest.strip_prefix(" d="))
        .ok_or_else(|| CubeError::Parse(format!("bad header {header:?}")))?
        .parse::<u32>()
        .map_err(|e| CubeError::Parse(format!("bad dimension: {e}")))?;
    let dim = Dim::new(d)?;
    let hex = lines
        .next()
        .ok_or_else(|| CubeError::Parse("missing payload line".into()))?
        .trim_end_matches('\r');
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(CubeError::Parse("trailing content after payload".into()));
    }
    Orientation::from_bytes(&decode_hex(hex)?, dim)
}

fn decode_hex(hex: &str) -> Result<Vec<u8>> {
    if !hex.len().is_multiple_of(2) {
        return Err(CubeError::Parse("odd number of hex digits".into()));
    }
    (0..hex.len())
        .step_by(2)
        .map(|i| {
            hex.get(i..i + 2)
                .and_then(|pair| u8::from_str_radix(pair, 16).ok())
                .ok_or_else(|| CubeError::Parse(format!("invalid hex at offset {i}")))
        })
        .collect()
}

pub fn write_file(path: impl AsRef<Path>, o: &Orientation) -> std::io::Result<()> {
    fs::write(path, to_text(o))
}

pub fn read_file(path: impl AsRef<Path>) -> anyhow::Result<Orientation> {
    let text = fs::read_to_string(path)?;
    Ok(from_text(&text)?)
}
