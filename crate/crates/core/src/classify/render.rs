use std::fmt::Write;

use super::{validate_lattice, ClassificationReport, Verdict};
use crate::error::Result;

/// Pretty JSON with fields in a fixed order; rejects lattice violations.
pub fn render_json(report: &ClassificationReport) -> Result<String> {
    validate_lattice(&report.properties)?;
    let mut out = serde_json::to_string_pretty(report)?;
    out.push('\n');
    Ok(out)
}

pub fn render_text(report: &ClassificationReport) -> Result<String> {
    validate_lattice(&report.properties)?;
    let mut out = String::new();
    let _ = writeln!(out, "ring  {}", report.ring);
    let _ = writeln!(out, "size  {}", report.size);
    let _ = writeln!(out);
    let _ = writeln!(out, "{:<20} {:<8} {:>5}  detail", "property", "verdict", "index");
    for (p, r) in &report.properties.0 {
        let verdict = match r.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Skipped => "skipped",
        };
        let index = r.index.map_or_else(|| "-".to_string(), |k| k.to_string());
        let detail = match (&r.counterexample, &r.reason, &r.witnesses) {
            (Some(c), _, _) => format!("counterexample {c}"),
            (_, Some(reason), _) => reason.clone(),
            (_, _, Some(w)) => format!("{} witnesses", w.len()),
            _ => String::new(),
        };
        let _ = writeln!(out, "{:<20} {:<8} {:>5}  {}", p.name(), verdict, index, detail.trim_end());
    }
    let _ = writeln!(out);
    match report.drnc_index {
        Some(k) => {
            let _ = writeln!(out, "drnc index: {k}");
        }
        None => {
            let _ = writeln!(out, "drnc index: -");
        }
    }
    if !report.caveats.is_empty() {
        let _ = writeln!(out, "caveats:");
        for c in &report.caveats {
            let _ = writeln!(out, "  - {c}");
        }
    }
    Ok(out)
}
