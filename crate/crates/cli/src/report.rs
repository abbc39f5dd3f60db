//! JSON, CSV and plain-text renderings of reports.
//!
//! Big integers are written as decimal strings. Masuda-Zieve bounds are
//! irrational in general and are written to six decimals, rounded outward.

use anyhow::Result;
use permbinom::closed::CountReport;
use serde::Serialize;

use crate::config::Format;
use crate::sweep::{Failure, SweepResult};

/// Column order of the CSV rendering.
pub const CSV_HEADER: [&str; 15] = [
    "q",
    "p",
    "k",
    "n",
    "r",
    "epsilon1",
    "epsilon2",
    "s_k",
    "closed_count",
    "criterion_count",
    "brute_count",
    "mz_lower",
    "mz_upper",
    "cor_lower",
    "cor_upper",
];

const BOUND_DIGITS: u32 = 6;

#[derive(Serialize)]
pub struct CellRecord {
    pub q: u64,
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub r: u64,
    pub epsilon1: Option<i64>,
    pub epsilon2: Option<i64>,
    pub s_k: Option<String>,
    pub closed_count: String,
    pub criterion_count: Option<u64>,
    pub brute_count: Option<u64>,
    pub mz_lower: String,
    pub mz_upper: String,
    pub cor_lower: Option<String>,
    pub cor_upper: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_values: Option<Vec<String>>,
}

impl CellRecord {
    pub fn new(rep: &CountReport, with_values: bool) -> Self {
        CellRecord {
            q: rep.q,
            p: rep.p,
            k: rep.k,
            n: rep.n,
            r: rep.r,
            epsilon1: rep.epsilon1,
            epsilon2: rep.epsilon2,
            s_k: rep.s_k.as_ref().map(ToString::to_string),
            closed_count: rep.closed_count.to_string(),
            criterion_count: rep.criterion_count,
            brute_count: rep.brute_count,
            mz_lower: rep.mz_lower.to_decimal_floor(BOUND_DIGITS),
            mz_upper: rep.mz_upper.to_decimal_ceil(BOUND_DIGITS),
            cor_lower: rep.cor_lower.as_ref().map(ToString::to_string),
            cor_upper: rep.cor_upper.as_ref().map(ToString::to_string),
            a_values: if with_values {
                rep.a_values.as_ref().map(|v| v.iter().map(ToString::to_string).collect())
            } else {
                None
            },
        }
    }

    fn csv_row(&self) -> [String; 15] {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        let num = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
        let unum = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.q.to_string(),
            self.p.to_string(),
            self.k.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            num(self.epsilon1),
            num(self.epsilon2),
            opt(&self.s_k),
            self.closed_count.clone(),
            unum(self.criterion_count),
            unum(self.brute_count),
            self.mz_lower.clone(),
            self.mz_upper.clone(),
            opt(&self.cor_lower),
            opt(&self.cor_upper),
        ]
    }

    fn text_line(&self) -> String {
        let mut line = format!(
            "q={} n={} r={} closed={}",
            self.q, self.n, self.r, self.closed_count
        );
        if let Some(c) = self.criterion_count {
            line += &format!(" criterion={c}");
        }
        if let Some(b) = self.brute_count {
            line += &format!(" brute={b}");
        }
        if let (Some(e1), Some(e2), Some(s)) = (self.epsilon1, self.epsilon2, &self.s_k) {
            line += &format!(" eps=({e1},{e2}) s_k={s}");
        }
        line += &format!(" mz=[{}, {}]", self.mz_lower, self.mz_upper);
        if let (Some(lo), Some(hi)) = (&self.cor_lower, &self.cor_upper) {
            line += &format!(" cor=[{lo}, {hi}]");
        }
        if let Some(v) = &self.a_values {
            line += &format!(" a={{{}}}", v.join(","));
        }
        line
    }
}

#[derive(Serialize)]
pub struct FailureRecord {
    pub q: u64,
    pub n: u64,
    pub r: u64,
    pub route_a: String,
    pub route_b: String,
    pub diff: String,
}

impl From<&Failure> for FailureRecord {
    fn from(f: &Failure) -> Self {
        FailureRecord {
            q: f.q,
            n: f.n,
            r: f.r,
            route_a: f.route_a.clone(),
            route_b: f.route_b.clone(),
            diff: f.diff.clone(),
        }
    }
}

impl FailureRecord {
    pub fn text_line(&self) -> String {
        format!(
            "FAIL q={} n={} r={} {} vs {}: {}",
            self.q, self.n, self.r, self.route_a, self.route_b, self.diff
        )
    }
}

#[derive(Serialize)]
struct SweepRecord {
    cells: Vec<CellRecord>,
    failures: Vec<FailureRecord>,
    elapsed_ms: Option<u128>,
}

/// Serializes a sweep. `elapsed_ms` is null unless `timing` is set, so
/// that repeated runs produce identical bytes.
pub fn emit_report(result: &SweepResult, format: Format, timing: bool) -> Result<Vec<u8>> {
    let cells: Vec<CellRecord> = result.cells.iter().map(|c| CellRecord::new(c, true)).collect();
    let failures: Vec<FailureRecord> = result.failures.iter().map(FailureRecord::from).collect();
    let elapsed_ms = timing.then(|| result.elapsed.as_millis());
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&SweepRecord { cells, failures, elapsed_ms })?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => cells_csv(&cells),
        Format::Text => {
            let mut out = String::new();
            for c in &cells {
                out += &c.text_line();
                out.push('\n');
            }
            for f in &failures {
                out += &f.text_line();
                out.push('\n');
            }
            out += &format!("{} cells, {} failures", cells.len(), failures.len());
            if let Some(ms) = elapsed_ms {
                out += &format!(", {ms} ms");
            }
            out.push('\n');
            Ok(out.into_bytes())
        }
    }
}

/// Header line plus one row per cell.
pub fn cells_csv(cells: &[CellRecord]) -> Result<Vec<u8>> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(CSV_HEADER)?;
    for c in cells {
        wtr.write_record(c.csv_row())?;
    }
    Ok(wtr.into_inner()?)
}

/// One count report in the requested format.
pub fn emit_count(rep: &CountReport, format: Format) -> Result<Vec<u8>> {
    let rec = CellRecord::new(rep, true);
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(&rec)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => cells_csv(&[rec]),
        Format::Text => Ok(format!("{}\n", rec.text_line()).into_bytes()),
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(value)?;
    out.push(b'\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_verify_sweep, SweepConfig};

    #[test]
    fn empty_json() {
        let res = SweepResult::default();
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&res, Format::Json, true).unwrap()).unwrap();
        assert_eq!(v["cells"], serde_json::json!([]));
        assert_eq!(v["failures"], serde_json::json!([]));
        assert!(v["elapsed_ms"].is_u64());
        let v: serde_json::Value = serde_json::from_slice(&emit_report(&res, Format::Json, false).unwrap()).unwrap();
        assert!(v["elapsed_ms"].is_null());
    }

    #[test]
    fn one_cell_csv() {
        let cfg = SweepConfig { q_max: 4, r_set: vec![3], ..SweepConfig::default() };
        let res = run_verify_sweep(&cfg).unwrap();
        assert_eq!(res.cells.len(), 3);
        let text = String::from_utf8(emit_report(&res, Format::Csv, false).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert!(lines[1].starts_with("4,2,2,1,3,-2,1,-4,1,1,1,"), "{}", lines[1]);
    }

    #[test]
    fn json_field_order() {
        let cfg = SweepConfig { q_max: 4, r_set: vec![3], ..SweepConfig::default() };
        let res = run_verify_sweep(&cfg).unwrap();
        let text = String::from_utf8(emit_report(&res, Format::Json, false).unwrap()).unwrap();
        let keys = ["\"q\"", "\"p\"", "\"k\"", "\"n\"", "\"r\"", "\"epsilon1\"", "\"s_k\"", "\"closed_count\"", "\"cor_upper\""];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(text.contains("\"closed_count\": \"1\""));
    }

    #[test]
    fn empty_csv_has_header() {
        let text = String::from_utf8(emit_report(&SweepResult::default(), Format::Csv, false).unwrap()).unwrap();
        assert_eq!(text.trim_end(), CSV_HEADER.join(","));
    }
}
