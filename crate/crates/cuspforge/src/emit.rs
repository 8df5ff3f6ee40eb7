//! Output formats for matrices: JSON (round-trippable), text pretty-print,
//! and CSV of integer evaluations.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::engine::DeltaMatrix;
use crate::matrix::MatrixPoly;
use crate::poly::PolyZ;

/// JSON shape: `entries[i][j]` is the ascending coefficient list of the
/// (i, j) entry; the zero polynomial is the empty list.
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct MatrixJson {
    pub variant: String,
    pub r: usize,
    pub entries: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("coefficient at ({row}, {col}) does not fit in i64")]
    CoefficientOverflow { row: usize, col: usize },
    #[error("ragged entries: row {0} has wrong length")]
    Ragged(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub fn matrix_to_json(m: &DeltaMatrix) -> Result<MatrixJson, EmitError> {
    let mut entries = Vec::with_capacity(m.r);
    for i in 0..m.r {
        let mut row = Vec::with_capacity(m.r);
        for j in 0..m.r {
            let cs: Option<Vec<i64>> = m
                .body
                .get(i, j)
                .coeffs()
                .iter()
                .map(|c| i64::try_from(c).ok())
                .collect();
            row.push(cs.ok_or(EmitError::CoefficientOverflow { row: i, col: j })?);
        }
        entries.push(row);
    }
    Ok(MatrixJson {
        variant: m.variant.tag().to_string(),
        r: m.r,
        entries,
    })
}

pub fn matrix_to_json_string(m: &DeltaMatrix) -> Result<String, EmitError> {
    Ok(serde_json::to_string_pretty(&matrix_to_json(m)?)?)
}

/// Rebuild the polynomial matrix from its JSON form.
pub fn matrix_from_json(j: &MatrixJson) -> Result<MatrixPoly, EmitError> {
    let r = j.r;
    if j.entries.len() != r {
        return Err(EmitError::Ragged(j.entries.len()));
    }
    let mut m = MatrixPoly::zeros(r, r);
    for (i, row) in j.entries.iter().enumerate() {
        if row.len() != r {
            return Err(EmitError::Ragged(i));
        }
        for (jj, cs) in row.iter().enumerate() {
            m.set(i, jj, PolyZ::from_i64(cs));
        }
    }
    Ok(m)
}

/// Aligned text table of the polynomial entries.
pub fn matrix_to_text(m: &MatrixPoly) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|row| row[j].len()).max().unwrap_or(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push('[');
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(&" ".repeat(widths[j] - cell.len()));
            out.push_str(cell);
        }
        out.push_str("]\n");
    }
    out
}

/// CSV of the integer matrix obtained by evaluating every entry at `at`.
pub fn matrix_to_csv(m: &MatrixPoly, at: &BigInt) -> String {
    let rows = m.eval(at);
    rows.iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{build_m_delta, Variant};
    use crate::params::FieldParams;

    fn params(r: usize) -> FieldParams {
        FieldParams::new(3, 1, r).unwrap()
    }

    #[test]
    fn json_round_trip() {
        for variant in [Variant::Plain, Variant::Bold] {
            let m = build_m_delta(&params(5), variant).unwrap();
            let s = matrix_to_json_string(&m).unwrap();
            let parsed: MatrixJson = serde_json::from_str(&s).unwrap();
            let back = matrix_from_json(&parsed).unwrap();
            assert_eq!(back, m.body);
            assert_eq!(parsed.variant, variant.tag());
        }
    }

    #[test]
    fn zero_entry_is_empty_list() {
        let m = build_m_delta(&params(7), Variant::Plain).unwrap();
        let j = matrix_to_json(&m).unwrap();
        // (4, 6) is zero in the plain matrix at r = 7
        assert!(j.entries[4][6].is_empty());
    }

    #[test]
    fn text_format_smoke() {
        let m = build_m_delta(&params(2), Variant::Plain).unwrap();
        let t = matrix_to_text(&m.body);
        assert!(t.contains("P - 1"));
        assert_eq!(t.lines().count(), 2);
    }

    #[test]
    fn csv_eval() {
        let m = build_m_delta(&params(2), Variant::Plain).unwrap();
        let csv = matrix_to_csv(&m.body, &BigInt::from(3));
        assert_eq!(csv, "1,1\n2,3\n");
    }

    #[test]
    fn ragged_rejected() {
        let j = MatrixJson {
            variant: "plain".into(),
            r: 2,
            entries: vec![vec![vec![1], vec![1]]],
        };
        assert!(matrix_from_json(&j).is_err());
    }
}
