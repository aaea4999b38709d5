use serde::{Deserialize, Serialize};

use super::record::confirm_counterexample;
use super::{element_witness, subjects, validate_lattice, ClassificationReport, Property, Verdict, WitnessRecord};
use crate::dsl::parse_ring_spec;
use crate::error::{Error, Result};
use crate::ring::{Element, Limits, Ring};

/// The verdict for one element, as emitted by the `witness` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementCertificate {
    pub ring: String,
    pub property: Property,
    pub element: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

pub fn certify_element(ring: &Ring, a: Element, property: Property, minimize: bool) -> Result<ElementCertificate> {
    let witness = element_witness(ring, a, property, minimize)?;
    Ok(ElementCertificate {
        ring: ring.spec().to_string(),
        property,
        element: ring.format(a),
        verdict: if witness.is_some() { Verdict::Holds } else { Verdict::Fails },
        witness,
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifySummary {
    /// Individual records and counterexamples re-checked.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }
}

fn realize(spec: &str, limits: Limits) -> Result<Ring> {
    Ring::realize(&parse_ring_spec(spec)?, limits)
}

/// Re-checks a witness document: a single element certificate, a list of
/// them, or a full classification report.
pub fn verify_document(text: &str, limits: Limits) -> Result<VerifySummary> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let mut summary = VerifySummary::default();
    match &value {
        serde_json::Value::Array(items) => {
            for item in items {
                let cert: ElementCertificate = serde_json::from_value(item.clone())?;
                verify_certificate(&cert, limits, &mut summary)?;
            }
        }
        serde_json::Value::Object(map) if map.contains_key("properties") => {
            let report: ClassificationReport = serde_json::from_value(value)?;
            verify_report(&report, limits, &mut summary)?;
        }
        serde_json::Value::Object(_) => {
            let cert: ElementCertificate = serde_json::from_value(value)?;
            verify_certificate(&cert, limits, &mut summary)?;
        }
        _ => {
            return Err(Error::Precondition(
                "witness document must be an object or a list".into(),
            ))
        }
    }
    Ok(summary)
}

fn verify_certificate(cert: &ElementCertificate, limits: Limits, summary: &mut VerifySummary) -> Result<()> {
    let ring = realize(&cert.ring, limits)?;
    let a = ring.parse_element(&cert.element)?;
    summary.checked += 1;
    let ctx = format!("{} {} at {}", cert.ring, cert.property, cert.element);
    match (cert.verdict, &cert.witness) {
        (Verdict::Holds, Some(w)) => {
            if ring.parse_element(w.subject()).ok() != Some(a) {
                summary.fail(format!("{ctx}: witness is about a different element"));
            } else if let Err(m) = w.check(&ring, cert.property) {
                summary.fail(format!("{ctx}: {m}"));
            }
        }
        (Verdict::Fails, None) => {
            if let Err(m) = confirm_counterexample(&ring, cert.property, a) {
                summary.fail(format!("{ctx}: {m}"));
            }
        }
        _ => summary.fail(format!("{ctx}: verdict and witness are inconsistent")),
    }
    Ok(())
}

fn verify_report(report: &ClassificationReport, limits: Limits, summary: &mut VerifySummary) -> Result<()> {
    let ring = realize(&report.ring, limits)?;
    if ring.size() != report.size {
        summary.fail(format!("{}: size {} != {}", report.ring, report.size, ring.size()));
    }
    if let Err(e) = validate_lattice(&report.properties) {
        summary.fail(e.to_string());
    }
    for (p, r) in &report.properties.0 {
        let ctx = format!("{} {p}", report.ring);
        match r.verdict {
            Verdict::Skipped => {}
            Verdict::Fails => {
                summary.checked += 1;
                let Some(c) = &r.counterexample else {
                    summary.fail(format!("{ctx}: fails without a counterexample"));
                    continue;
                };
                let c = ring.parse_element(c)?;
                if let Err(m) = confirm_counterexample(&ring, *p, c) {
                    summary.fail(format!("{ctx}: {m}"));
                }
            }
            Verdict::Holds => {
                let Some(ws) = &r.witnesses else { continue };
                let expected = subjects(&ring, *p);
                if ws.len() != expected.len() {
                    summary.fail(format!("{ctx}: {} witnesses for {} elements", ws.len(), expected.len()));
                    continue;
                }
                for (w, &a) in ws.iter().zip(&expected) {
                    summary.checked += 1;
                    if ring.parse_element(w.subject()).ok() != Some(a) {
                        summary.fail(format!("{ctx}: witness for {} is out of order", w.subject()));
                    } else if let Err(m) = w.check(&ring, *p) {
                        summary.fail(format!("{ctx} at {}: {m}", w.subject()));
                    }
                }
                let index = ws.iter().filter_map(WitnessRecord::index).max();
                if index != r.index {
                    summary.fail(format!("{ctx}: recorded index {:?} != {:?}", r.index, index));
                }
            }
        }
    }
    let drnc = report.properties.get(Property::Drnc).filter(|r| r.holds()).and_then(|r| r.index);
    if report.drnc_index != drnc {
        summary.fail(format!("{}: drnc_index disagrees with the drnc verdict", report.ring));
    }
    Ok(())
}
