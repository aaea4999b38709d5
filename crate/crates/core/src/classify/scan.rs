use std::collections::BTreeMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{classify_property, ClassifyOptions, Property, Verdict};
use crate::dsl::parse_ring_template;
use crate::error::{Error, Result};
use crate::ring::{Limits, Ring};

/// Values of one template variable: `var=lo..hi` (inclusive) or
/// `var=v1,v2,…`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRange {
    pub var: String,
    pub values: Vec<u64>,
}

impl FromStr for ScanRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("range `{s}` is not of the form var=lo..hi or var=v1,v2"));
        let (var, rest) = s.split_once('=').ok_or_else(bad)?;
        let var = var.trim();
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphabetic()) {
            return Err(bad());
        }
        let values: Vec<u64> = if let Some((lo, hi)) = rest.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            (lo..=hi).collect()
        } else {
            rest.split(',')
                .map(|v| v.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        Ok(ScanRange {
            var: var.to_string(),
            values,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Look for instances where the property holds.
    Holds,
    /// Look for instances where the property fails.
    Fails,
}

#[derive(Debug, Clone)]
pub struct ScanJob {
    pub template: String,
    pub ranges: Vec<ScanRange>,
    pub property: Property,
    pub mode: ScanMode,
    pub limits: Limits,
    pub options: ClassifyOptions,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub spec: String,
    pub bindings: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u32>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// The verdict is the one the scan mode is looking for.
    pub matches: bool,
}

fn instantiations(ranges: &[ScanRange]) -> Vec<BTreeMap<String, u64>> {
    let mut out = vec![BTreeMap::new()];
    for r in ranges {
        out = out
            .into_iter()
            .flat_map(|b| {
                r.values.iter().map(move |&v| {
                    let mut b = b.clone();
                    b.insert(r.var.clone(), v);
                    b
                })
            })
            .collect();
    }
    out
}

/// Instantiates the template for every combination of range values (the
/// first range varies slowest) and decides the property on each ring.
/// Results are in instantiation order.
pub fn scan(job: &ScanJob) -> Result<Vec<ScanEntry>> {
    let bindings = instantiations(&job.ranges);
    if let Some(first) = bindings.first() {
        parse_ring_template(&job.template, first)?;
    }
    bindings
        .into_par_iter()
        .map(|b| run_instance(job, b))
        .collect()
}

fn run_instance(job: &ScanJob, bindings: BTreeMap<String, u64>) -> Result<ScanEntry> {
    let spec = parse_ring_template(&job.template, &bindings)?;
    let text = spec.to_string();
    let soft = |reason: String| ScanEntry {
        spec: text.clone(),
        bindings: bindings.clone(),
        size: None,
        verdict: Verdict::Skipped,
        index: None,
        counterexample: None,
        reason: Some(reason),
        matches: false,
    };
    let ring = match Ring::realize(&spec, job.limits) {
        Ok(r) => r,
        Err(e @ Error::Defect(_)) => return Err(e),
        Err(e) => return Ok(soft(e.to_string())),
    };
    let options = ClassifyOptions {
        elide_witnesses: true,
        ..job.options
    };
    let report = classify_property(&ring, job.property, options)?;
    let matches = match job.mode {
        ScanMode::Holds => report.verdict == Verdict::Holds,
        ScanMode::Fails => report.verdict == Verdict::Fails,
    };
    Ok(ScanEntry {
        spec: text,
        bindings,
        size: Some(ring.size()),
        verdict: report.verdict,
        index: report.index,
        counterexample: report.counterexample,
        reason: report.reason,
        matches,
    })
}
