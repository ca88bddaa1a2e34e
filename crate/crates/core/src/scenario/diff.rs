//! Margin-level comparison of two report artifacts.
//!
//! Two runs are comparable when they evaluated the same check rows in the
//! same order; the diff then reduces to the margin column. Everything else
//! (differing headers, row counts, or check tags) is a schema mismatch,
//! not a numeric difference.

use std::path::Path;

use super::ScenarioError;

/// Result of comparing the margin columns of two report files.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffSummary {
    /// Data rows compared (header excluded).
    pub rows: usize,
    /// Largest absolute margin difference; infinite when exactly one side
    /// of some row is non-finite.
    pub max_abs_margin_diff: f64,
    /// 1-based data row index and check tag of the worst row, if any
    /// difference was found.
    pub worst: Option<(usize, String)>,
}

fn mismatch(msg: String) -> ScenarioError {
    ScenarioError::SchemaMismatch(msg)
}

fn margin_of(line: &str, row: usize, path: &Path) -> Result<f64, ScenarioError> {
    let field = line.split(',').nth(5).ok_or_else(|| {
        mismatch(format!("{}: row {row} has no margin column", path.display()))
    })?;
    field.parse::<f64>().map_err(|_| {
        mismatch(format!("{}: row {row} margin {field:?} is not a number", path.display()))
    })
}

/// Compares two `reports.csv` files row by row on the margin column.
///
/// The margin difference of a row is zero when the values are equal or
/// both NaN, infinite when exactly one is non-finite, and the absolute
/// difference otherwise. Thresholding is left to the caller.
pub fn diff_reports(a: &Path, b: &Path) -> Result<DiffSummary, ScenarioError> {
    let text_a = std::fs::read_to_string(a)?;
    let text_b = std::fs::read_to_string(b)?;
    let mut lines_a = text_a.lines();
    let mut lines_b = text_b.lines();
    let header_a = lines_a.next().unwrap_or("");
    let header_b = lines_b.next().unwrap_or("");
    if header_a != header_b {
        return Err(mismatch(format!("headers differ: {header_a:?} vs {header_b:?}")));
    }
    let rows_a: Vec<&str> = lines_a.collect();
    let rows_b: Vec<&str> = lines_b.collect();
    if rows_a.len() != rows_b.len() {
        return Err(mismatch(format!(
            "row counts differ: {} vs {}",
            rows_a.len(),
            rows_b.len()
        )));
    }

    let mut summary = DiffSummary { rows: rows_a.len(), max_abs_margin_diff: 0.0, worst: None };
    for (pos, (row_a, row_b)) in rows_a.iter().zip(&rows_b).enumerate() {
        let row = pos + 1;
        let kind_a = row_a.split(',').nth(1).unwrap_or("");
        let kind_b = row_b.split(',').nth(1).unwrap_or("");
        if kind_a != kind_b {
            return Err(mismatch(format!(
                "check sets differ at row {row}: {kind_a:?} vs {kind_b:?}"
            )));
        }
        let ma = margin_of(row_a, row, a)?;
        let mb = margin_of(row_b, row, b)?;
        let diff = if ma == mb || (ma.is_nan() && mb.is_nan()) {
            0.0
        } else {
            let d = (ma - mb).abs();
            if d.is_finite() { d } else { f64::INFINITY }
        };
        if diff > summary.max_abs_margin_diff {
            summary.max_abs_margin_diff = diff;
            summary.worst = Some((row, kind_a.to_string()));
        }
    }
    Ok(summary)
}
