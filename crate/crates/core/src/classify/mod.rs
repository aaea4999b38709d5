//! Whole-ring classification across the property lattice, parameterized
//! family scans, rendering and re-verification of certificates.

mod property;
mod record;
mod render;
mod scan;
mod verify;

pub use property::Property;
pub use record::{confirm_counterexample, element_witness, WitnessRecord};
pub use render::{render_json, render_text};
pub use scan::{scan, ScanEntry, ScanJob, ScanMode, ScanRange};
pub use verify::{certify_element, verify_document, ElementCertificate, VerifySummary};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub verdict: Verdict,
    /// Largest per-element index, for index-carrying properties that hold.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    /// One record per element (per idempotent for `abelian`), in canonical
    /// order; absent when elided.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessRecord>>,
}

impl PropertyReport {
    fn skipped(reason: String) -> Self {
        PropertyReport {
            verdict: Verdict::Skipped,
            index: None,
            counterexample: None,
            reason: Some(reason),
            witnesses: None,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

/// Property verdicts in report order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PropertyMap(pub Vec<(Property, PropertyReport)>);

impl PropertyMap {
    pub fn get(&self, p: Property) -> Option<&PropertyReport> {
        self.0.iter().find(|(q, _)| *q == p).map(|(_, r)| r)
    }
}

impl Serialize for PropertyMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (p, r) in &self.0 {
            map.serialize_entry(p.name(), r)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PropertyMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PropertyMap;
            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("a map from property name to verdict")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut m: A) -> std::result::Result<PropertyMap, A::Error> {
                let mut out = Vec::new();
                while let Some((name, report)) = m.next_entry::<String, PropertyReport>()? {
                    let p = name.parse::<Property>().map_err(de::Error::custom)?;
                    out.push((p, report));
                }
                Ok(PropertyMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub ring: String,
    pub size: u32,
    pub properties: PropertyMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub drnc_index: Option<u32>,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Report least-index witnesses for `rnc` (the ring-level `drnc`
    /// index is always the least one).
    pub minimize_index: bool,
    /// Leave per-element witness records out of the report.
    pub elide_witnesses: bool,
}

/// Edges `(p, q, both_ways)`: `p ⇒ q`, or `p ⟺ q` when `both_ways`.
pub const LATTICE: [(Property, Property, bool); 11] = [
    (Property::Regular, Property::PiRegular, false),
    (Property::StronglyPiRegular, Property::PiRegular, false),
    (Property::NilClean, Property::Clean, false),
    (Property::Drnc, Property::Rnc, false),
    (Property::Rnc, Property::ExchangeGn, false),
    (Property::ExchangeGn, Property::ExchangeKln, true),
    (Property::UnitRegular, Property::Regular, false),
    (Property::StronglyRegular, Property::UnitRegular, false),
    (Property::StronglyClean, Property::Clean, false),
    (Property::StronglyNilClean, Property::NilClean, false),
    (Property::UtumiSymmetric, Property::Utumi, false),
];

/// Rejects reports in which a decided implication is violated.
pub fn validate_lattice(properties: &PropertyMap) -> Result<()> {
    for (p, q, both) in LATTICE {
        let (Some(rp), Some(rq)) = (properties.get(p), properties.get(q)) else {
            continue;
        };
        if rp.verdict == Verdict::Skipped || rq.verdict == Verdict::Skipped {
            continue;
        }
        if rp.holds() && !rq.holds() {
            return Err(Error::defect(format!("lattice violation: {p} holds but {q} fails")));
        }
        if both && rq.holds() && !rp.holds() {
            return Err(Error::defect(format!("lattice violation: {q} holds but {p} fails")));
        }
    }
    Ok(())
}

fn subjects(ring: &Ring, property: Property) -> Vec<Element> {
    if property.over_idempotents() {
        ring.idempotents()
    } else {
        ring.elements().collect()
    }
}

/// Decides one property over the whole ring. Size overruns become a
/// skipped verdict; every other error propagates.
pub fn classify_property(ring: &Ring, property: Property, options: ClassifyOptions) -> Result<PropertyReport> {
    match ring.require_classify_size() {
        Ok(()) => {}
        Err(Error::SizeExceeded { size, max_size }) => {
            return Ok(PropertyReport::skipped(format!(
                "ring size {size} exceeds the classification cap of {max_size}"
            )))
        }
        Err(e) => return Err(e),
    }
    let minimize = property == Property::Drnc || options.minimize_index;
    let subjects = subjects(ring, property);
    let found: Vec<Option<WitnessRecord>> = subjects
        .par_iter()
        .map(|&a| element_witness(ring, a, property, minimize))
        .collect::<Result<_>>()?;
    if let Some(pos) = found.iter().position(Option::is_none) {
        return Ok(PropertyReport {
            verdict: Verdict::Fails,
            index: None,
            counterexample: Some(ring.format(subjects[pos])),
            reason: None,
            witnesses: None,
        });
    }
    let witnesses: Vec<WitnessRecord> = found.into_iter().flatten().collect();
    let index = witnesses.iter().filter_map(WitnessRecord::index).max();
    Ok(PropertyReport {
        verdict: Verdict::Holds,
        index,
        counterexample: None,
        reason: None,
        witnesses: (!options.elide_witnesses).then_some(witnesses),
    })
}

pub(crate) fn caveats(ring: &Ring, properties: &PropertyMap) -> Vec<String> {
    let mut out = vec![
        "finite truncation: verdicts are exhaustive over this finite ring only and do not transfer \
         to infinite products or other infinite rings built from it"
            .to_string(),
    ];
    if ring.spec().has_product() {
        out.push(
            "truncated product: a finite product is decided componentwise; properties that fail only \
             for infinitely many factors (such as pi-regularity) cannot be observed here"
                .to_string(),
        );
    }
    let skipped: Vec<&str> = properties
        .0
        .iter()
        .filter(|(_, r)| r.verdict == Verdict::Skipped)
        .map(|(p, _)| p.name())
        .collect();
    if !skipped.is_empty() {
        out.push(format!("skipped (size cap): {}", skipped.join(", ")));
    }
    out
}

pub fn classify(ring: &Ring, options: ClassifyOptions) -> Result<ClassificationReport> {
    let mut properties = PropertyMap::default();
    for p in Property::ALL {
        properties.0.push((p, classify_property(ring, p, options)?));
    }
    validate_lattice(&properties)?;
    let drnc_index = properties.get(Property::Drnc).filter(|r| r.holds()).and_then(|r| r.index);
    Ok(ClassificationReport {
        ring: ring.spec().to_string(),
        size: ring.size(),
        caveats: caveats(ring, &properties),
        properties,
        drnc_index,
    })
}

/// Per-property verdicts keyed by name, for comparing two reports.
pub fn verdict_table(report: &ClassificationReport) -> BTreeMap<&'static str, (Verdict, Option<u32>)> {
    report
        .properties
        .0
        .iter()
        .map(|(p, r)| (p.name(), (r.verdict, r.index)))
        .collect()
}

#[cfg(test)]
mod tests;
