//! Experiment reports rendered as JSON and as aligned text.

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub experiment: String,
    pub config: Value,
    pub seed: Option<u64>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Key/value lines printed under the table.
    pub summary: Vec<(String, String)>,
    /// Overall verdict for check-style experiments.
    pub passed: Option<bool>,
    /// Full machine-readable result.
    pub data: Value,
}

impl Report {
    pub fn new(experiment: &str, config: Value, seed: Option<u64>) -> Self {
        Self {
            experiment: experiment.to_string(),
            config,
            seed,
            columns: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
            passed: None,
            data: Value::Null,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.experiment);
        out.push_str(&format!("config: {}\n", self.config));
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed: {seed}\n"));
        }
        if !self.columns.is_empty() {
            let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
            for row in &self.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
            };
            out.push_str(&line(&self.columns));
            out.push('\n');
            for row in &self.rows {
                out.push_str(&line(row));
                out.push('\n');
            }
        }
        let kw = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            out.push_str(&format!("{k:<kw$}  {v}\n"));
        }
        if let Some(p) = self.passed {
            out.push_str(if p { "result: PASS\n" } else { "result: FAIL\n" });
        }
        out
    }
}

/// Scientific notation used in report cells.
pub fn sci(x: f64) -> String {
    format!("{x:.3e}")
}
