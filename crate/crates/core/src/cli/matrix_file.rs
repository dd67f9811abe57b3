//! JSON matrix files: `{"dim": n, "entries": [[[re, im], ...], ...]}`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::report::round_sig;
use crate::matkit::{c64, ComplexMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{}: cannot read file: {message}", path.display())]
    Io { path: PathBuf, message: String },

    #[error("{}: parse error at line {line}, column {column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{}: entries[{row}] has {found} entries, expected {expected}", path.display())]
    RaggedRow {
        path: PathBuf,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("{}: dim is {dim} but entries has {rows} rows", path.display())]
    DimensionMismatch { path: PathBuf, dim: usize, rows: usize },

    #[error("{}: {message}", path.display())]
    Invalid { path: PathBuf, message: String },
}

impl MatrixFile {
    /// Entries rounded to 12 significant digits.
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| [round_sig(m[(i, j)].re), round_sig(m[(i, j)].im)]).collect())
            .collect();
        Self { dim: m.rows(), entries }
    }

    pub fn to_matrix(&self, path: &Path) -> Result<ComplexMatrix, LoadError> {
        if self.entries.len() != self.dim {
            return Err(LoadError::DimensionMismatch {
                path: path.into(),
                dim: self.dim,
                rows: self.entries.len(),
            });
        }
        if let Some((row, r)) = self.entries.iter().enumerate().find(|(_, r)| r.len() != self.dim) {
            return Err(LoadError::RaggedRow {
                path: path.into(),
                row,
                expected: self.dim,
                found: r.len(),
            });
        }
        let data = self.entries.iter().flatten().map(|&[re, im]| c64(re, im)).collect();
        ComplexMatrix::new(self.dim, self.dim, data).map_err(|e| LoadError::Invalid {
            path: path.into(),
            message: e.to_string(),
        })
    }
}

pub fn parse_matrix(text: &str, path: &Path) -> Result<ComplexMatrix, LoadError> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_matrix(path)
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<ComplexMatrix, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LoadError::Io {
        path: path.into(),
        message: e.to_string(),
    })?;
    parse_matrix(&text, path)
}

/// Pretty JSON, one matrix row per line.
pub fn matrix_to_string(m: &ComplexMatrix) -> String {
    let file = MatrixFile::from_matrix(m);
    let rows: Vec<String> = file
        .entries
        .iter()
        .map(|r| format!("    {}", serde_json::to_string(r).expect("finite floats serialize")))
        .collect();
    format!("{{\n  \"dim\": {},\n  \"entries\": [\n{}\n  ]\n}}\n", file.dim, rows.join(",\n"))
}

pub fn save_matrix(path: impl AsRef<Path>, m: &ComplexMatrix) -> std::io::Result<()> {
    fs::write(path, matrix_to_string(m))
}
