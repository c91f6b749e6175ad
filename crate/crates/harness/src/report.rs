//! Machine-readable verification reports.
//!
//! Two formats share the same records: flat CSV (RFC-4180 quoting, one row
//! per case) and nested JSON. Report bodies are deterministic for a fixed
//! config and seed; the generation timestamp lives in a separate header (the
//! leading `#` line of the CSV, the `header` object of the JSON) so bodies
//! can be compared byte for byte.

use crate::config::ExperimentConfig;
use serde::Serialize;

/// One verified case. Fields that do not apply to a given experiment stay
/// empty in CSV and null in JSON.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub experiment: String,
    pub n: usize,
    pub k: Option<u32>,
    pub j: Option<usize>,
    /// Member index, dictionary exponent, or other per-family integer.
    pub i: Option<i64>,
    pub x: Option<Vec<f64>>,
    pub s: Option<f64>,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CaseRecord {
    pub fn new(experiment: impl Into<String>, n: usize, value: f64, tolerance: f64) -> Self {
        CaseRecord {
            experiment: experiment.into(),
            n,
            k: None,
            j: None,
            i: None,
            x: None,
            s: None,
            value,
            tolerance,
            pass: value.abs() <= tolerance,
        }
    }

    pub fn with_k(mut self, k: u32) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_j(mut self, j: usize) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_i(mut self, i: i64) -> Self {
        self.i = Some(i);
        self
    }

    pub fn with_x(mut self, x: &[f64]) -> Self {
        self.x = Some(x.to_vec());
        self
    }

    pub fn with_s(mut self, s: f64) -> Self {
        self.s = Some(s);
        self
    }

    /// Override the derived pass flag (for cases whose criterion is not
    /// `|value| <= tolerance`).
    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub records: Vec<CaseRecord>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, records: Vec<CaseRecord>) -> Self {
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total: records.len(),
            passed,
            failed: records.len() - passed,
        };
        SuiteReport {
            suite: suite.into(),
            records,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Serialize)]
pub struct JsonHeader {
    pub generated_at_unix: u64,
    pub tool: String,
}

/// Deterministic JSON body: configuration echo plus nested suites.
#[derive(Debug, Serialize)]
pub struct JsonBody<'a> {
    pub config: &'a ExperimentConfig,
    pub suites: &'a [SuiteReport],
}

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub header: JsonHeader,
    pub body: JsonBody<'a>,
}

pub fn now_unix() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn to_json(cfg: &ExperimentConfig, suites: &[SuiteReport]) -> String {
    let report = JsonReport {
        header: JsonHeader {
            generated_at_unix: now_unix(),
            tool: format!("hypermeans {}", env!("CARGO_PKG_VERSION")),
        },
        body: JsonBody {
            config: cfg,
            suites,
        },
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports always serialize");
    text.push('\n');
    text
}

fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

fn float_field(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// CSV report: a `# generated_at_unix` header line, `# config` echo lines,
/// the column header, then one row per record in suite order. Everything
/// after the first line is deterministic.
pub fn to_csv(cfg: &ExperimentConfig, suites: &[SuiteReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!("# generated_at_unix: {}\n", now_unix()));
    for line in cfg.echo_lines() {
        out.push_str(&format!("# config: {line}\n"));
    }
    out.push_str("experiment,n,k,j,i,x,s,value,tolerance,pass\n");
    for suite in suites {
        for r in &suite.records {
            let x_joined = r
                .x
                .as_ref()
                .map(|coords| {
                    coords
                        .iter()
                        .map(|c| float_field(*c))
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default();
            let row = [
                csv_field(&r.experiment),
                r.n.to_string(),
                r.k.map(|k| k.to_string()).unwrap_or_default(),
                r.j.map(|j| j.to_string()).unwrap_or_default(),
                r.i.map(|i| i.to_string()).unwrap_or_default(),
                csv_field(&x_joined),
                r.s.map(float_field).unwrap_or_default(),
                float_field(r.value),
                float_field(r.tolerance),
                r.pass.to_string(),
            ];
            out.push_str(&row.join(","));
            out.push('\n');
        }
    }
    out
}

/// The deterministic part of a CSV report: everything after the timestamp
/// header line.
pub fn csv_body(full: &str) -> &str {
    match full.split_once('\n') {
        Some((_first, rest)) => rest,
        None => full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_pass_derivation() {
        let r = CaseRecord::new("x", 2, 0.5e-8, 1e-8);
        assert!(r.pass);
        let r = CaseRecord::new("x", 2, 2e-8, 1e-8);
        assert!(!r.pass);
    }

    #[test]
    fn csv_quoting_and_shape() {
        let cfg = ExperimentConfig::default();
        let rec = CaseRecord::new("weird,name", 2, 1.0, 2.0)
            .with_x(&[0.1, -0.2])
            .with_s(1.5)
            .with_k(3)
            .with_j(1)
            .with_i(-4);
        let suite = SuiteReport::new("demo", vec![rec]);
        let csv = to_csv(&cfg, &[suite]);
        let body = csv_body(&csv);
        assert!(body.contains("\"weird,name\",2,3,1,-4,0.1;-0.2,1.5,1,2,true"));
        assert!(csv.starts_with("# generated_at_unix: "));
        let header_line = body
            .lines()
            .find(|l| !l.starts_with('#'))
            .unwrap();
        assert_eq!(header_line, "experiment,n,k,j,i,x,s,value,tolerance,pass");
    }

    #[test]
    fn summaries_count_consistently() {
        let recs = vec![
            CaseRecord::new("a", 2, 0.0, 1.0),
            CaseRecord::new("b", 2, 2.0, 1.0),
            CaseRecord::new("c", 2, 0.5, 1.0),
        ];
        let suite = SuiteReport::new("demo", recs);
        assert_eq!(suite.summary.total, 3);
        assert_eq!(suite.summary.passed, 2);
        assert_eq!(suite.summary.failed, 1);
        assert!(!suite.all_passed());
    }
}
