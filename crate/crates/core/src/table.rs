//! Convergence tables and their CSV / JSON-lines encodings.
//!
//! Reals are written with 17 significant digits in Rust's locale-free
//! scientific notation, which round-trips every double exactly. Non-finite
//! values become `NaN`/`inf`/`-inf` in CSV and `null` in JSON.

use std::fmt::Write;

/// The CSV header for every convergence table.
pub const CSV_HEADER: &str = "k,estimate,reference,abs_err,rel_err";

/// Output encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Formats a real with 17 significant digits.
pub fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

pub fn json_real(x: f64) -> String {
    if x.is_finite() {
        real(x)
    } else {
        "null".to_owned()
    }
}

/// What the table's estimates are parameterized by.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameter {
    Alpha(f64),
    Ratio { p: u64, q: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableMetadata {
    /// Variant label, for example `even` or `wallis`.
    pub variant: String,
    pub parameter: Parameter,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    /// `None` marks an extrapolated `k → ∞` row.
    pub k: Option<u64>,
    pub estimate: f64,
    pub log_estimate: f64,
    pub reference: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    /// Exact coefficient as `numerator/denominator`, when computed.
    pub coefficient: Option<String>,
    /// Overrides the table variant for this row.
    pub variant: Option<String>,
}

impl TableRow {
    pub fn new(k: Option<u64>, estimate: f64, log_estimate: f64, reference: f64) -> Self {
        let abs_err = (estimate - reference).abs();
        Self {
            k,
            estimate,
            log_estimate,
            reference,
            abs_err,
            rel_err: abs_err / reference.abs(),
            coefficient: None,
            variant: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub metadata: TableMetadata,
    rows: Vec<TableRow>,
}

impl ConvergenceTable {
    pub fn new(metadata: TableMetadata) -> Self {
        Self {
            metadata,
            rows: Vec::new(),
        }
    }

    /// Appends a row. Rows must arrive in ascending `k`, with extrapolated
    /// rows (`k = None`) last.
    pub fn push(&mut self, row: TableRow) {
        if let Some(last) = self.rows.last() {
            let ordered = match (last.k, row.k) {
                (Some(a), Some(b)) => a < b,
                (_, None) => true,
                (None, Some(_)) => false,
            };
            assert!(ordered, "table rows must be sorted by k");
        }
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[TableRow] {
        &self.rows
    }

    fn has_coefficients(&self) -> bool {
        self.rows.iter().any(|r| r.coefficient.is_some())
    }

    pub fn to_csv(&self) -> String {
        let coefficients = self.has_coefficients();
        let mut out = String::from(CSV_HEADER);
        if coefficients {
            out.push_str(",coefficient");
        }
        out.push('\n');
        for row in &self.rows {
            let k = row.k.map_or_else(|| "inf".to_owned(), |k| k.to_string());
            let _ = write!(
                out,
                "{k},{},{},{},{}",
                real(row.estimate),
                real(row.reference),
                real(row.abs_err),
                real(row.rel_err)
            );
            if coefficients {
                let _ = write!(out, ",{}", row.coefficient.as_deref().unwrap_or(""));
            }
            out.push('\n');
        }
        out
    }

    /// One JSON object per row, newline separated.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let variant = row.variant.as_deref().unwrap_or(&self.metadata.variant);
            let _ = write!(out, "{{\"variant\":\"{variant}\",");
            match self.metadata.parameter {
                Parameter::Alpha(a) => {
                    let _ = write!(out, "\"alpha\":{},", json_real(a));
                }
                Parameter::Ratio { p, q } => {
                    let _ = write!(out, "\"p\":{p},\"q\":{q},");
                }
            }
            let k = row.k.map_or_else(|| "null".to_owned(), |k| k.to_string());
            let _ = write!(
                out,
                "\"k\":{k},\"estimate\":{},\"log_estimate\":{},\"reference\":{},\"rel_err\":{}",
                json_real(row.estimate),
                json_real(row.log_estimate),
                json_real(row.reference),
                json_real(row.rel_err)
            );
            if let Some(c) = &row.coefficient {
                let _ = write!(out, ",\"coefficient\":\"{c}\"");
            }
            if let Some(seed) = self.metadata.seed {
                let _ = write!(out, ",\"seed\":{seed}");
            }
            out.push_str("}\n");
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json_lines(),
        }
    }
}
