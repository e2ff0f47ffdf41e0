//! Group and connection-set files.
//!
//! A connection-set file lists elements as words or 0-based cycles:
//!
//! ```json
//! {"elements": ["a", "a^-1", "b*a^3", "(0,2)(1,3)"]}
//! ```

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{ConnectionSet, GraphError};
use crate::group::{GroupError, GroupSpec, GroupTable};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: {source}")]
    Group { path: String, source: GroupError },
    #[error("{path}: {source}")]
    Set { path: String, source: GraphError },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFile {
    pub elements: Vec<String>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, InputError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| InputError::Read {
        path: name.clone(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { path: name, source })
}

pub fn load_group(path: &Path) -> Result<GroupTable, InputError> {
    let spec: GroupSpec = read_json(path)?;
    spec.build().map_err(|source| InputError::Group {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_set(path: &Path, group: &GroupTable) -> Result<ConnectionSet, InputError> {
    let file: SetFile = read_json(path)?;
    ConnectionSet::parse(group, &file.elements).map_err(|source| InputError::Set {
        path: path.display().to_string(),
        source,
    })
}

/// Splits on commas outside parentheses, so cycle notation survives.
pub fn split_elements(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut current).trim().to_string());
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    if !current.trim().is_empty() {
        out.push(current.trim().to_string());
    }
    out.retain(|s| !s.is_empty());
    out
}
