//! Reading input files, with errors anchored to a line and column.

use adjunction_core::lattice::Catalog;
use adjunction_core::wall_crossing::{BoundingCollection, WallCrossingCollection};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

/// A catalog together with an optional wall-crossing collection.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Bundle {
    pub catalog: Catalog,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<WallCrossingCollection>,
}

#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub position: Option<(usize, usize)>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self.position {
            Some((l, c)) => write!(f, "{}:{l}:{c}: {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError {
        path: path.display().to_string(),
        position: None,
        message: e.to_string(),
    })
}

fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError {
        path: path.display().to_string(),
        position: Some((e.line(), e.column())),
        message: strip_position(&e.to_string()),
    })
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Position of the first quoted occurrence of any backticked name in `message`.
pub fn anchor(text: &str, message: &str) -> Option<(usize, usize)> {
    let names: Vec<&str> = message.split('`').skip(1).step_by(2).collect();
    for name in names {
        if let Some(off) = text.find(&format!("\"{name}\"")) {
            let before = &text[..off];
            let line = before.matches('\n').count() + 1;
            let col = off - before.rfind('\n').map_or(0, |i| i + 1) + 1;
            return Some((line, col));
        }
    }
    None
}

pub fn load_bundle(path: &Path) -> Result<Bundle, InputError> {
    let text = read(path)?;
    let b: Bundle = parse(path, &text)?;
    b.catalog.validate().map_err(|e| {
        let message = e.to_string();
        InputError { path: path.display().to_string(), position: anchor(&text, &message), message }
    })?;
    Ok(b)
}

pub fn load_bounding(path: &Path) -> Result<BoundingCollection, InputError> {
    let text = read(path)?;
    parse(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_to_the_quoted_name() {
        let text = "{\n  \"a\": 1,\n    \"E99\": 2\n}";
        assert_eq!(anchor(text, "label `E99` is not part of the lattice basis"), Some((3, 5)));
        assert_eq!(anchor(text, "no names here"), None);
    }

    #[test]
    fn strips_serde_suffix() {
        assert_eq!(strip_position("expected value at line 3 column 7"), "expected value");
    }
}
