use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use octder::{LinearMap, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub algebra: String,
    pub field: String,
    /// SHA-256 of the canonical algebra file text.
    pub input_digest: String,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub dimensions: BTreeMap<String, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool) -> Self {
        Check {
            name: name.to_string(),
            passed,
            dimensions: BTreeMap::new(),
            matrices: None,
            note: None,
        }
    }

    pub fn dim(mut self, key: &str, value: usize) -> Self {
        self.dimensions.insert(key.to_string(), value);
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn matrices(mut self, matrices: Vec<Vec<Vec<String>>>) -> Self {
        self.matrices = Some(matrices);
        self
    }
}

pub fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(ToString::to_string).collect())
        .collect()
}

/// Rows of the matrix whose column `j` is the image of `e_j`.
pub fn map_rows(t: &LinearMap) -> Vec<Vec<String>> {
    matrix_rows(t.matrix())
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self, elapsed: f64) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{}: algebra {} over {}: {verdict}",
            self.command, self.algebra, self.field
        );
        let _ = writeln!(out, "  input sha256 {}", self.input_digest);
        for check in &self.checks {
            let mark = if check.passed { "ok  " } else { "FAIL" };
            let dims: Vec<String> = check
                .dimensions
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(out, "  [{mark}] {} {}", check.name, dims.join(" "));
            if let Some(note) = &check.note {
                let _ = writeln!(out, "         {note}");
            }
            for (idx, m) in check.matrices.iter().flatten().enumerate() {
                let _ = writeln!(out, "    matrix {idx}:");
                let width = m.iter().flatten().map(String::len).max().unwrap_or(1);
                for row in m {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    let _ = writeln!(out, "      [{}]", cells.join(" "));
                }
            }
        }
        let _ = writeln!(out, "  elapsed {elapsed:.3} s");
        out
    }
}
