//! Observation files and the embedded reference dataset.
//!
//! File format: UTF-8 text, one observation per line, decimal point only.
//! Blank lines are ignored and `#` starts a comment that runs to the end of
//! the line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

/// Minority electron mobility for p-type Ga(1−x)Al(x)As at mole fraction
/// x = 0.25 (NIST Semiconductor Electronics Division), in the published
/// order.
pub const MOBILITY_MOLE_FRACTION_025: [f64; 21] = [
    3.051, 2.779, 2.604, 2.371, 2.214, 2.045, 1.715, 1.525, 1.296, 1.154, 1.016, 0.7948, 0.7007,
    0.6292, 0.6175, 0.6449, 0.8881, 1.115, 1.397, 1.506, 1.528,
];

pub const EMBEDDED_NAME: &str = "mobility-mole-fraction-0.25";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "path", rename_all = "lowercase")]
pub enum DataSource {
    Embedded,
    File(PathBuf),
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{name}:{line}: cannot parse `{text}` as a number")]
    Parse {
        name: String,
        line: usize,
        text: String,
    },

    #[error("{name}:{line}: observation {value} is not positive")]
    NonPositive {
        name: String,
        line: usize,
        value: f64,
    },

    #[error("{name}: no observations")]
    Empty { name: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub name: String,
    pub values: Vec<f64>,
    pub source: DataSource,
}

impl Dataset {
    pub fn embedded() -> Self {
        Self {
            name: EMBEDDED_NAME.to_string(),
            values: MOBILITY_MOLE_FRACTION_025.to_vec(),
            source: DataSource::Embedded,
        }
    }

    pub fn parse(name: &str, text: &str, source: DataSource) -> Result<Self, DatasetError> {
        let mut values = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let value: f64 = content.parse().map_err(|_| DatasetError::Parse {
                name: name.to_string(),
                line,
                text: content.to_string(),
            })?;
            if !(value.is_finite() && value > 0.0) {
                return Err(DatasetError::NonPositive {
                    name: name.to_string(),
                    line,
                    value,
                });
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(DatasetError::Empty {
                name: name.to_string(),
            });
        }
        Ok(Self {
            name: name.to_string(),
            values,
            source,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self, DatasetError> {
        let text = fs::read_to_string(path).map_err(|source| DatasetError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Self::parse(&name, &text, DataSource::File(path.to_path_buf()))
    }

    /// Serialises in the file format above; values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        for v in &self.values {
            writeln!(out, "{v}").expect("writing to a String cannot fail");
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), DatasetError> {
        fs::write(path, self.to_text()).map_err(|source| DatasetError::Write {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}
