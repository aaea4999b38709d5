use super::{Element, Ring};
use crate::error::Result;

/// Units, idempotents and nilpotents of a ring, each in canonical order.
#[derive(Debug, Clone)]
pub struct SpecialSets {
    pub units: Vec<Element>,
    pub idempotents: Vec<Element>,
    /// Nilpotent elements with their minimal index.
    pub nilpotents: Vec<(Element, u32)>,
}

pub fn special_sets(ring: &Ring) -> Result<SpecialSets> {
    ring.require_classify_size()?;
    let mut sets = SpecialSets {
        units: Vec::new(),
        idempotents: ring.idempotents(),
        nilpotents: Vec::new(),
    };
    for a in ring.elements() {
        if ring.inverse_idx(a.index()).is_some() {
            sets.units.push(a);
        }
        if let Some(k) = ring.nil_index_idx(a.index()) {
            sets.nilpotents.push((a, k));
        }
    }
    Ok(sets)
}

impl Ring {
    /// `Id(R)` in canonical order.
    pub fn idempotents(&self) -> Vec<Element> {
        self.idempotent_indices().iter().map(|&i| self.el(i)).collect()
    }
}
