//! Semigroup files: `{"free_rank": k, "torsion": [d, ...], "generators":
//! ["(a,b;t)", ...], "height": [h1, ..., hk]}`. Elements use the class
//! syntax: free coordinates, then torsion residues after a semicolon.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use super::fan_file::JsonInt;
use crate::error::{HtError, Result};
use crate::semigroup::{ConeSemigroup, Element};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSemigroup {
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<JsonInt>,
    generators: Vec<String>,
    height: Vec<JsonInt>,
}

/// Parse `(a,b)` or `(a,b;t)` for a group Z^k ⊕ ⊕ Z/d.
pub fn parse_element(text: &str, k: usize, torsion_len: usize) -> Result<Element> {
    let bad = |m: &str| HtError::InvalidArgument(format!("element {text:?}: {m}"));
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| bad("expected a parenthesized tuple"))?;
    let (free_s, tor_s) = match inner.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (inner, None),
    };
    let nums = |s: &str| -> Result<Vec<BigInt>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|p| p.trim().parse::<BigInt>().map_err(|_| bad(&format!("{:?} is not an integer", p.trim()))))
            .collect()
    };
    let free = nums(free_s)?;
    let torsion = match tor_s {
        Some(s) => nums(s)?,
        None => vec![BigInt::zero(); torsion_len],
    };
    if free.len() != k || torsion.len() != torsion_len {
        return Err(bad(&format!("expected {k} free and {torsion_len} torsion coordinates")));
    }
    Ok(Element::new(free, torsion))
}

pub fn parse_semigroup_str(text: &str) -> Result<ConeSemigroup> {
    let raw: RawSemigroup = serde_json::from_str(text).map_err(|e| HtError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    let torsion: Vec<BigInt> = raw.torsion.into_iter().map(|t| t.0).collect();
    let generators = raw
        .generators
        .iter()
        .map(|g| parse_element(g, raw.free_rank, torsion.len()))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| HtError::InvalidSemigroup(e.to_string()))?;
    ConeSemigroup::new(raw.free_rank, torsion, generators, raw.height.into_iter().map(|h| h.0).collect())
}

pub fn read_semigroup_file(path: &Path) -> Result<ConeSemigroup> {
    let text = std::fs::read_to_string(path).map_err(|e| HtError::Io(format!("{}: {e}", path.display())))?;
    parse_semigroup_str(&text)
}
