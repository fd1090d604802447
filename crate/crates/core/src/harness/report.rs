use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::VerificationCase;

const COLUMNS: [&str; 7] = [
    "theorem", "instance", "expected", "got", "method", "millis", "verdict",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!(
                "unknown report format `{other}` (markdown, csv, json)"
            )),
        }
    }
}

fn row(c: &VerificationCase) -> [String; 7] {
    [
        c.theorem.clone(),
        c.instance.clone(),
        c.expected.clone(),
        c.got.clone(),
        c.method_label(),
        c.millis.to_string(),
        if c.passed { "pass" } else { "FAIL" }.to_string(),
    ]
}

/// Renders `cases` in a fixed column order. Output depends only on the
/// input, so equal case lists give equal documents.
pub fn report(format: ReportFormat, cases: &[VerificationCase]) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(cases).expect("cases serialize");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(COLUMNS).expect("in-memory write");
            for c in cases {
                w.write_record(row(c)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        ReportFormat::Markdown => {
            let mut s = String::new();
            let _ = writeln!(s, "| {} |", COLUMNS.join(" | "));
            let _ = writeln!(s, "|{}", "---|".repeat(COLUMNS.len()));
            for c in cases {
                let cells: Vec<String> = row(c).iter().map(|f| f.replace('|', "\\|")).collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
            s
        }
    }
}
