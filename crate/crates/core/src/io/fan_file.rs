//! Fan files: `{"name"?: string, "vectors": [[x, y], ...], "basis"?: [i, ...]}`.
//!
//! Coordinates may be JSON integers or decimal strings (for values outside
//! the 64-bit range). `basis` lists 1-based ray indices naming the boundary
//! divisors used as display coordinates; rays are numbered counterclockwise
//! starting at the first listed vector.

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HtError, Result};
use crate::fan::{validate_fan, LatticeVector2, StackyFan};
use crate::picard::PicardGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct JsonInt(pub(crate) BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<JsonInt, E> {
                Err(E::custom(format!("{v} is not an exact integer; write large values as strings")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<JsonInt, E> {
                v.trim().parse().map(JsonInt).map_err(|_| E::custom(format!("{v:?} is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFanFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    vectors: Vec<[JsonInt; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basis: Option<Vec<usize>>,
}

/// A parsed fan file. `fan` is in counterclockwise order starting at the
/// first listed vector; `basis` holds 0-based indices into that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanFile {
    pub name: Option<String>,
    pub fan: StackyFan,
    pub basis: Option<Vec<usize>>,
}

impl FanFile {
    pub fn new(fan: StackyFan) -> Self {
        FanFile { name: None, fan, basis: None }
    }

    /// The Picard group, in the file's basis when one is given.
    pub fn picard(&self) -> Result<PicardGroup> {
        match &self.basis {
            Some(b) => PicardGroup::with_basis(&self.fan, b),
            None => Ok(PicardGroup::new(&self.fan)),
        }
    }

    /// Pretty JSON with a trailing newline; parses back to an equal value.
    pub fn to_json(&self) -> String {
        let raw = RawFanFile {
            name: self.name.clone(),
            vectors: self.fan.vectors().iter().map(|v| [JsonInt(v.x.clone()), JsonInt(v.y.clone())]).collect(),
            basis: self.basis.as_ref().map(|b| b.iter().map(|i| i + 1).collect()),
        };
        let mut s = serde_json::to_string_pretty(&raw).expect("fan files always serialize");
        s.push('\n');
        s
    }
}

/// 1-based (line, column) of the start of `vectors[k]`, found by scanning
/// the text. Falls back to the start of the document.
fn locate_vector(text: &str, k: usize) -> (usize, usize) {
    let position = |offset: usize| {
        let before = &text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(offset, |p| offset - p - 1) + 1;
        (line, column)
    };
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut in_vectors = false;
    let mut count = 0usize;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'"' => {
                let start = i;
                i += 1;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\\' {
                        i += 1;
                    }
                    i += 1;
                }
                if depth == 1 && &text[start..(i + 1).min(text.len())] == "\"vectors\"" {
                    in_vectors = true;
                }
            }
            b'[' | b'{' => {
                depth += 1;
                if in_vectors && depth == 3 {
                    if count == k {
                        return position(i);
                    }
                    count += 1;
                }
            }
            b']' | b'}' => {
                depth = depth.saturating_sub(1);
                if depth == 1 {
                    in_vectors = false;
                }
            }
            _ => {}
        }
        i += 1;
    }
    (1, 1)
}

fn located(text: &str, index: usize, e: HtError) -> HtError {
    let (line, column) = locate_vector(text, index);
    HtError::Located { line, column, inner: Box::new(e) }
}

/// Parse and validate fan-file text.
pub fn parse_fan_str(text: &str) -> Result<FanFile> {
    let raw: RawFanFile = serde_json::from_str(text).map_err(|e| HtError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line ").next().unwrap_or_default().to_string(),
    })?;
    let input: Vec<LatticeVector2> = raw.vectors.into_iter().map(|[x, y]| LatticeVector2 { x: x.0, y: y.0 }).collect();
    let fan = validate_fan(input).map_err(|e| match e {
        HtError::ZeroVector { index } => located(text, index, e),
        HtError::DuplicateRay { second, .. } => located(text, second, e),
        HtError::NotComplete { first, .. } => located(text, first, e),
        e => e,
    })?;
    let n = fan.n();
    let basis = match raw.basis {
        None => None,
        Some(b) => Some(
            b.into_iter()
                .map(|i| {
                    (1..=n)
                        .contains(&i)
                        .then(|| i - 1)
                        .ok_or_else(|| HtError::InvalidBasis(format!("index {i} is not between 1 and {n}")))
                })
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let file = FanFile { name: raw.name, fan, basis };
    file.picard()?;
    Ok(file)
}

pub fn read_fan_file(path: &Path) -> Result<FanFile> {
    let text = std::fs::read_to_string(path).map_err(|e| HtError::Io(format!("{}: {e}", path.display())))?;
    parse_fan_str(&text)
}

/// The validated fan stored at `path`.
pub fn parse_fan_file(path: &Path) -> Result<StackyFan> {
    read_fan_file(path).map(|f| f.fan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projective_plane_file() {
        let f = parse_fan_str(r#"{"vectors": [[1,0],[0,1],[-1,-1]]}"#).unwrap();
        assert_eq!(f.fan, StackyFan::from_pairs(&[(1, 0), (0, 1), (-1, -1)]).unwrap());
        assert_eq!(f.picard().unwrap().free_rank(), 1);
    }

    #[test]
    fn example_file_with_basis() {
        let text = r#"{"name": "ex4", "vectors": [[1,1],[0,1],[-1,0],[0,-1],[1,-1]], "basis": [1,4,5]}"#;
        let f = parse_fan_str(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("ex4"));
        assert_eq!(f.basis, Some(vec![0, 3, 4]));
        let pic = f.picard().unwrap();
        let e2 = pic.generator(1);
        assert_eq!(e2.to_string(), "(-1,1,1)");
    }

    #[test]
    fn duplicate_ray_is_located() {
        let text = "{\"vectors\": [\n  [1,0],\n  [2,0],\n  [0,1]\n]}";
        let e = parse_fan_str(text).unwrap_err();
        assert_eq!(e.code(), "E_FAN_DUPLICATE_RAY");
        match e {
            HtError::Located { line, column, .. } => assert_eq!((line, column), (3, 3)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_fan_str("{\"vectors\": [[1,0],\n [0,1],, [-1,-1]]}").unwrap_err();
        match e {
            HtError::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert_eq!(parse_fan_str(r#"{"vectors": [[1,0]], "colour": 1}"#).unwrap_err().code(), "E_PARSE");
        assert_eq!(parse_fan_str(r#"{"vectors": [[1,0,2]]}"#).unwrap_err().code(), "E_PARSE");
        assert_eq!(parse_fan_str(r#"{"vectors": [[1.5,0]]}"#).unwrap_err().code(), "E_PARSE");
    }

    #[test]
    fn big_coordinates_as_strings() {
        let text = r#"{"vectors": [["100000000000000000000",1],[0,1],[-1,-1]]}"#;
        let f = parse_fan_str(text).unwrap();
        assert_eq!(parse_fan_str(&f.to_json()).unwrap(), f);
        assert!(f.to_json().contains("\"100000000000000000000\""));
    }

    #[test]
    fn bad_basis() {
        let text = r#"{"vectors": [[1,0],[0,1],[-1,-1]], "basis": [4]}"#;
        assert_eq!(parse_fan_str(text).unwrap_err().code(), "E_INVALID_BASIS");
    }

    proptest! {
        #[test]
        fn serialized_fans_round_trip(pts in prop::collection::vec((-6i64..=6, -6i64..=6), 3..8)) {
            let Ok(fan) = StackyFan::from_pairs(&pts) else { return Ok(()); };
            let file = FanFile { name: Some("t".into()), fan, basis: None };
            prop_assert_eq!(parse_fan_str(&file.to_json()).unwrap(), file);
        }
    }
}
