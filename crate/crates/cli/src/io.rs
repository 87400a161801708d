//! JSON matrix reading and text formatting.

use std::path::Path;

use lamdet::matrix::SquareMatrix;
use serde::Deserialize;

#[derive(Deserialize)]
struct MatrixJson {
    rows: Vec<Vec<String>>,
}

pub fn read_matrix(path: &Path) -> Result<SquareMatrix, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed: MatrixJson =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    SquareMatrix::from_exprs(&parsed.rows).map_err(|e| e.to_string())
}

pub fn matrix_rows(m: &SquareMatrix) -> Vec<Vec<String>> {
    (1..=m.order())
        .map(|i| (1..=m.order()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

pub fn matrix_to_text(m: &SquareMatrix) -> String {
    matrix_rows(m)
        .iter()
        .map(|r| format!("  [{}]", r.join(", ")))
        .collect::<Vec<_>>()
        .join("\n")
}
