//! Verification reports and their tabular rendering.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::IsoClassSet;
use crate::graph::Graph;

/// Outcome of one exhaustive verification run at order `n`.
///
/// Optional fields are absent when the corresponding quantity does not
/// exist at this order (for instance `H(n,p,q)` needs `n >= q - 1 + p`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub p: usize,
    #[serde(rename = "F", with = "crate::blowup::graph6_serde")]
    pub f: Graph,
    pub q: usize,
    pub lambda: usize,
    pub ex_value: Option<usize>,
    pub ex_classes: IsoClassSet,
    pub spex_value: Option<f64>,
    pub spex_residual: Option<f64>,
    /// Every class whose certified interval meets the maximum's.
    pub spex_classes: IsoClassSet,
    pub spex_subset_ex: Option<bool>,
    pub rho_h_lower: Option<f64>,
    pub rho_h_upper: Option<f64>,
    pub spex_below_upper: Option<bool>,
    pub construction_free_ok: Option<bool>,
    pub sandwich_lower_ok: Option<bool>,
    pub enumerated_count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub runtime_seconds: Option<f64>,
}

impl SearchReport {
    /// The asserted checks: constructions are free and sit below `spex`.
    pub fn asserted_ok(&self) -> bool {
        self.construction_free_ok != Some(false) && self.sandwich_lower_ok != Some(false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

pub const TABLE_COLUMNS: [&str; 12] = [
    "n",
    "F",
    "p",
    "ex",
    "spex",
    "rho_H_lower",
    "rho_H_upper",
    "spex_subset_ex",
    "spex_below_upper",
    "construction_free",
    "sandwich_lower",
    "classes",
];

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn real(v: Option<f64>) -> String {
    cell(v.map(|x| format!("{x:.9}")))
}

fn row(r: &SearchReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        crate::graph6::graph6_encode(&r.f),
        r.p.to_string(),
        cell(r.ex_value),
        real(r.spex_value),
        real(r.rho_h_lower),
        real(r.rho_h_upper),
        cell(r.spex_subset_ex),
        cell(r.spex_below_upper),
        cell(r.construction_free_ok),
        cell(r.sandwich_lower_ok),
        r.enumerated_count.to_string(),
    ]
}

/// Renders reports as an aligned text table, CSV, or a JSON array.
/// Missing values are written as `-` in text and CSV.
pub fn emit_table(reports: &[SearchReport], format: TableFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::InvalidParameters("no reports to tabulate".into()));
    }
    match format {
        TableFormat::Json => {
            serde_json::to_string_pretty(reports).map_err(|e| Error::InternalInvariantViolation(e.to_string()))
        }
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::InternalInvariantViolation(e.to_string());
            w.write_record(TABLE_COLUMNS).map_err(io)?;
            for r in reports {
                w.write_record(row(r)).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InternalInvariantViolation(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::InternalInvariantViolation(e.to_string()))
        }
        TableFormat::Text => {
            let rows: Vec<Vec<String>> = reports.iter().map(row).collect();
            let widths: Vec<usize> = (0..TABLE_COLUMNS.len())
                .map(|c| rows.iter().map(|r| r[c].len()).chain([TABLE_COLUMNS[c].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let mut out = line(TABLE_COLUMNS.to_vec());
            out.push('\n');
            for r in &rows {
                out.push_str(&line(r.iter().map(String::as_str).collect()));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SearchReport {
        SearchReport {
            n: 8,
            p: 3,
            f: Graph::matching(2).unwrap(),
            q: 2,
            lambda: 1,
            ex_value: Some(22),
            ex_classes: IsoClassSet::new(),
            spex_value: Some(5.5),
            spex_residual: Some(1e-10),
            spex_classes: IsoClassSet::new(),
            spex_subset_ex: Some(true),
            rho_h_lower: Some(5.5),
            rho_h_upper: None,
            spex_below_upper: None,
            construction_free_ok: Some(true),
            sandwich_lower_ok: Some(true),
            enumerated_count: 100,
            runtime_seconds: None,
        }
    }

    #[test]
    fn csv_round_trip() {
        let text = emit_table(&[sample()], TableFormat::Csv).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        assert_eq!(rd.headers().unwrap().len(), TABLE_COLUMNS.len());
        let recs: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
        assert_eq!(recs.len(), 1);
        assert_eq!(&recs[0][0], "8");
        assert_eq!(&recs[0][6], "-");
    }

    #[test]
    fn text_single_row() {
        let text = emit_table(&[sample()], TableFormat::Text).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.lines().nth(1).unwrap().contains(" - "));
    }

    #[test]
    fn json_and_empty() {
        let text = emit_table(&[sample()], TableFormat::Json).unwrap();
        let back: Vec<SearchReport> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, vec![sample()]);
        assert!(emit_table(&[], TableFormat::Text).is_err());
        let mut bad = sample();
        bad.sandwich_lower_ok = Some(false);
        assert!(!bad.asserted_ok() && sample().asserted_ok());
    }
}
