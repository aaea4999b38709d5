//! Two-sided ideals, the Jacobson radical, and derived rings (center,
//! corner, quotient).

use rayon::prelude::*;

use super::{Element, Ring, RingSpec};
use crate::error::{Error, Result};

/// A materialized two-sided ideal.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    members: Vec<u32>,
    mask: Vec<bool>,
}

impl Ideal {
    fn from_mask(ring: &Ring, mask: Vec<bool>) -> Ideal {
        let members = (0..ring.size()).filter(|&i| mask[i as usize]).collect();
        Ideal {
            ring: ring.clone(),
            members,
            mask,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.ring.contains(e) && self.mask[e.index() as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().map(|&i| self.ring.el(i))
    }

    pub(crate) fn member_indices(&self) -> &[u32] {
        &self.members
    }

    /// A small generating set: members taken in canonical order whenever
    /// they are not already in the ideal generated by the earlier picks.
    pub fn generators(&self) -> Result<Vec<Element>> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.ring.size() as usize];
        span[0] = true;
        for &m in &self.members {
            if !span[m as usize] {
                gens.push(self.ring.el(m));
                span = ideal_generated(&self.ring, &gens)?.mask;
            }
        }
        Ok(gens)
    }

    /// Checks `0 ∈ I`, `I + I ⊆ I` and `R I ∪ I R ⊆ I`.
    pub fn is_two_sided_ideal(&self) -> bool {
        let r = &self.ring;
        let n = r.size();
        self.mask[0]
            && self
                .members
                .par_iter()
                .all(|&i| self.members.iter().all(|&j| self.mask[r.add_idx(i, j) as usize]))
            && self.members.par_iter().all(|&i| {
                (0..n).all(|x| self.mask[r.mul_idx(x, i) as usize] && self.mask[r.mul_idx(i, x) as usize])
            })
    }
}

/// The two-sided ideal generated by `gens`, closed to a fixpoint.
pub fn ideal_generated(ring: &Ring, gens: &[Element]) -> Result<Ideal> {
    let n = ring.size();
    let mut mask = vec![false; n as usize];
    let mut members = vec![0u32];
    mask[0] = true;
    let mut queue: Vec<u32> = Vec::new();
    for &g in gens {
        let g = ring.check(g)?;
        if !mask[g as usize] {
            mask[g as usize] = true;
            members.push(g);
            queue.push(g);
        }
    }
    while let Some(x) = queue.pop() {
        let mut fresh = Vec::new();
        for r in 0..n {
            fresh.push(ring.mul_idx(r, x));
            fresh.push(ring.mul_idx(x, r));
        }
        for &y in &members {
            fresh.push(ring.add_idx(x, y));
        }
        for z in fresh {
            if !mask[z as usize] {
                mask[z as usize] = true;
                members.push(z);
                queue.push(z);
            }
        }
    }
    Ok(Ideal::from_mask(ring, mask))
}

/// `J(R) = { x : 1 - r x is a unit for every r }`.
pub fn jacobson_radical(ring: &Ring) -> Result<Ideal> {
    ring.require_classify_size()?;
    let n = ring.size();
    let one = ring.one_idx();
    let mask: Vec<bool> = (0..n)
        .into_par_iter()
        .map(|x| (0..n).all(|r| ring.inverse_idx(ring.sub_idx(one, ring.mul_idx(r, x))).is_some()))
        .collect();
    let ideal = Ideal::from_mask(ring, mask);
    if !ideal.is_two_sided_ideal() {
        return Err(Error::defect(format!(
            "quasi-regular set of {} is not a two-sided ideal",
            ring.spec()
        )));
    }
    Ok(ideal)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilVerdict {
    pub nil: bool,
    /// Largest nilpotency index over the ideal, when it is nil.
    pub max_index: Option<u32>,
    pub counterexample: Option<Element>,
}

pub fn is_nil_ideal(ideal: &Ideal) -> NilVerdict {
    let ring = ideal.ring();
    let mut max_index = 1;
    for &x in ideal.member_indices() {
        match ring.nil_index_idx(x) {
            Some(k) => max_index = max_index.max(k),
            None => {
                return NilVerdict {
                    nil: false,
                    max_index: None,
                    counterexample: Some(ring.el(x)),
                }
            }
        }
    }
    NilVerdict {
        nil: true,
        max_index: Some(max_index),
        counterexample: None,
    }
}

/// The center `{ c : c r = r c for all r }` as a ring.
pub fn center(ring: &Ring) -> Result<Ring> {
    Ring::build_center(ring, RingSpec::center(ring.spec().clone()))
}

/// The corner ring `eRe`, whose identity is `e`.
pub fn corner(ring: &Ring, e: Element) -> Result<Ring> {
    let idx = ring.check(e)?;
    if ring.mul_idx(idx, idx) != idx {
        return Err(Error::NotIdempotent(ring.format(e)));
    }
    let spec = RingSpec::corner(ring.spec().clone(), ring.literal(e));
    Ring::build_corner(ring, e, spec)
}

/// `R / I`, with elements the minimal representatives of the cosets.
pub fn quotient(ring: &Ring, ideal: &Ideal) -> Result<Ring> {
    if ideal.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let gens = ideal.generators()?;
    if gens.is_empty() {
        return Err(Error::Precondition(
            "quotient by the zero ideal; use the ring itself".into(),
        ));
    }
    let spec = RingSpec::quotient(
        ring.spec().clone(),
        gens.iter().map(|&g| ring.literal(g)).collect(),
    );
    Ring::build_quotient(ring, ideal.member_indices(), spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::realize_str;

    #[test]
    fn radical_of_z4() {
        let r = realize_str("Z4").unwrap();
        let j = jacobson_radical(&r).unwrap();
        let elems: Vec<String> = j.elements().map(|e| r.format(e)).collect();
        assert_eq!(elems, ["0", "2"]);
        assert_eq!(j.generators().unwrap().len(), 1);
    }

    #[test]
    fn generated_ideal_in_z6() {
        let r = realize_str("Z6").unwrap();
        let i = ideal_generated(&r, &[r.from_int(4)]).unwrap();
        let elems: Vec<u32> = i.elements().map(|e| e.index()).collect();
        assert_eq!(elems, [0, 2, 4]);
        assert!(i.is_two_sided_ideal());
    }

    #[test]
    fn corner_rejects_non_idempotents() {
        let r = realize_str("Z6").unwrap();
        assert!(matches!(corner(&r, r.from_int(2)), Err(Error::NotIdempotent(_))));
        assert!(matches!(corner(&r, r.zero()), Err(Error::ZeroCorner)));
    }

    #[test]
    fn quotient_by_whole_ring_is_rejected() {
        let r = realize_str("Z4").unwrap();
        let i = ideal_generated(&r, &[r.one()]).unwrap();
        assert!(matches!(quotient(&r, &i), Err(Error::ZeroRing)));
    }

    #[test]
    fn nil_verdict_of_z8_radical() {
        let r = realize_str("Z8").unwrap();
        let j = jacobson_radical(&r).unwrap();
        assert_eq!(j.len(), 4);
        let v = is_nil_ideal(&j);
        assert!(v.nil);
        assert_eq!(v.max_index, Some(3));
    }
}
