//! CSV and JSON rendering. CSV: comma-separated, '.' decimal, header row, LF.

use serde::{Deserialize, Serialize};

/// Formats `x` with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..15).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding can carry into a new leading digit (9.9999 -> 10.000).
        if s.trim_start_matches('-')
            .replace('.', "")
            .trim_start_matches('0')
            .len()
            > digits
            && decimals > 0
        {
            return format!("{:.*}", decimals - 1, x);
        }
        s
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

pub struct Csv {
    digits: usize,
    out: String,
}

pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Csv {
    pub fn new(digits: usize, header: &[&str]) -> Self {
        let mut out = header.join(",");
        out.push('\n');
        Self { digits, out }
    }

    /// `# key=value` line ahead of the header.
    pub fn with_comments(digits: usize, comments: &[String], header: &[&str]) -> Self {
        let mut out = String::new();
        for c in comments {
            out.push_str("# ");
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&header.join(","));
        out.push('\n');
        Self { digits, out }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        let rendered: Vec<String> = cells
            .into_iter()
            .map(|c| match c {
                Cell::Num(v) => sig(v, self.digits),
                Cell::Int(v) => v.to_string(),
                Cell::Text(s) => s,
                Cell::Bool(b) => b.to_string(),
            })
            .collect();
        self.out.push_str(&rendered.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

pub fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable document");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub n: usize,
    pub branch: String,
    pub energy_re: f64,
    pub energy_im: f64,
    pub l_re: f64,
    pub l_im: f64,
    pub source: String,
    pub negative_radicand: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelsDoc {
    pub command: String,
    pub units: String,
    /// Sign convention note for the A2 = A4 = 0 formula.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub levels: Vec<LevelRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub molecule: String,
    pub n: usize,
    pub energy_plus: f64,
    pub energy_minus: f64,
    pub published: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacingRecord {
    pub molecule: String,
    pub spacing: f64,
    pub published: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub command: String,
    pub units: String,
    pub rows: Vec<TableRecord>,
    pub spacings: Vec<SpacingRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub inverse_m: f64,
    pub m1_energy: f64,
    pub particle_re: f64,
    pub particle_im: f64,
    pub antiparticle_re: f64,
    pub antiparticle_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDoc {
    pub command: String,
    pub molecule: String,
    pub n: usize,
    pub units: String,
    pub rows: Vec<SweepRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMeta {
    pub n: usize,
    pub energy: ComplexValue,
    pub p: ComplexValue,
    pub q: ComplexValue,
    pub l: ComplexValue,
    pub signs: String,
    pub coefficients: Vec<ComplexValue>,
    pub tail: Vec<ComplexValue>,
    pub truncated_exactly: bool,
    pub determinant_residual: f64,
    pub normalizable_at_infinity: bool,
    pub norm_scale: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiSample {
    /// Non-finite values serialize as null.
    pub x: f64,
    pub re: Option<f64>,
    pub im: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefnDoc {
    pub command: String,
    pub series: SeriesMeta,
    pub samples: Vec<PsiSample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub n: usize,
    pub branch: String,
    pub closed_form: f64,
    pub oracle: Option<f64>,
    pub lambda: Option<f64>,
    pub abs_deviation: Option<f64>,
    pub rel_deviation: Option<f64>,
    pub oracle_decays: Option<bool>,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub command: String,
    pub molecule: String,
    pub units: String,
    pub grid_points: usize,
    pub x_max: f64,
    pub tolerance: f64,
    pub provenance: String,
    pub mismatches: usize,
    pub rows: Vec<VerifyRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateRecord {
    pub n: usize,
    pub exact: f64,
    pub raw: f64,
    pub richardson: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidateDoc {
    pub command: String,
    pub depth: f64,
    pub beta: f64,
    pub mass: f64,
    pub grid_points: usize,
    pub levels: Vec<ValidateRecord>,
    pub bound_states_found: usize,
    pub bound_states_expected: usize,
    pub box_convergence_ratio: f64,
    pub richardson_spread: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(663.8185798, 6), "663.819");
        assert_eq!(sig(1291.125950, 6), "1291.13");
        assert_eq!(sig(-1159.4151, 6), "-1159.42");
        assert_eq!(sig(0.00123456789, 6), "0.00123457");
        assert_eq!(sig(1e-6, 6), "1.00000e-6");
        assert_eq!(sig(0.0, 6), "0");
        assert_eq!(sig(9.9999996, 6), "10.0000");
        assert_eq!(sig(f64::INFINITY, 6), "inf");
    }

    #[test]
    fn csv_layout() {
        let mut c = Csv::new(3, &["a", "b"]);
        c.row(vec![1.23456.into(), "x".into()]);
        assert_eq!(c.finish(), "a,b\n1.23,x\n");
    }
}
