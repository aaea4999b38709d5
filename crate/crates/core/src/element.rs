//! Element-level certificates: idempotency, nilpotency, inverses,
//! (unit-)regularity, strong π-regularity and clean / nil-clean
//! decompositions.
//!
//! All searches walk the ring in canonical order and return the first
//! candidate found, so witnesses are reproducible.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

pub fn is_idempotent(ring: &Ring, a: Element) -> bool {
    ring.mul(a, a) == a
}

/// Least `k` with `a^k = 0`; `None` if the powers of `a` cycle without reaching zero.
pub fn nilpotency_index(ring: &Ring, a: Element) -> Option<u32> {
    ring.nil_index_idx(ring.idx(a))
}

pub fn unit_inverse(ring: &Ring, a: Element) -> Option<Element> {
    ring.inverse_idx(ring.idx(a)).map(|i| ring.el(i))
}

pub fn is_unit(ring: &Ring, a: Element) -> bool {
    unit_inverse(ring, a).is_some()
}

/// Number of distinct powers `a, a², …` before the sequence repeats.
pub fn power_orbit_len(ring: &Ring, a: Element) -> u32 {
    let mut seen = HashSet::new();
    let mut p = a;
    while seen.insert(p) {
        p = ring.mul(p, a);
    }
    seen.len() as u32
}

/// Certificate that `a = a b a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityWitness {
    pub a: Element,
    pub b: Element,
    /// `b a b = b` also holds.
    pub reflexive: bool,
    /// `a = a² b` with `a b = b a`.
    pub strong: bool,
}

impl RegularityWitness {
    fn new(ring: &Ring, a: Element, b: Element) -> Self {
        let reflexive = ring.mul3(b, a, b) == b;
        let strong = ring.mul3(a, a, b) == a && ring.mul(a, b) == ring.mul(b, a);
        RegularityWitness {
            a,
            b,
            reflexive,
            strong,
        }
    }

    pub fn verify(&self, ring: &Ring) -> bool {
        ring.mul3(self.a, self.b, self.a) == self.a
            && (!self.reflexive || ring.mul3(self.b, self.a, self.b) == self.b)
            && (!self.strong
                || (ring.mul3(self.a, self.a, self.b) == self.a
                    && ring.mul(self.a, self.b) == ring.mul(self.b, self.a)))
    }
}

/// Replaces an inner inverse `b` of `a` by `b a b`, which is both an
/// inner inverse and a reflexive one.
pub fn normalize_reflexive(ring: &Ring, a: Element, b: Element) -> Result<RegularityWitness> {
    ring.check(a)?;
    ring.check(b)?;
    if ring.mul3(a, b, a) != a {
        return Err(Error::Precondition(format!(
            "a·b·a != a for a = {}, b = {}",
            ring.format(a),
            ring.format(b)
        )));
    }
    let b2 = ring.mul3(b, a, b);
    let w = RegularityWitness::new(ring, a, b2);
    if !w.reflexive || ring.mul3(a, b2, a) != a {
        return Err(Error::defect("reflexive normalization failed"));
    }
    Ok(w)
}

/// First `b` with `a b a = a`, normalized to a reflexive inverse.
pub fn regular_witness(ring: &Ring, a: Element) -> Result<Option<RegularityWitness>> {
    let ai = ring.check(a)?;
    let found = (0..ring.size()).find(|&b| ring.mul_idx(ring.mul_idx(ai, b), ai) == ai);
    found
        .map(|b| normalize_reflexive(ring, a, ring.el(b)))
        .transpose()
}

/// First unit `b` with `a b a = a`.
pub fn unit_regular_witness(ring: &Ring, a: Element) -> Result<Option<RegularityWitness>> {
    let ai = ring.check(a)?;
    let found = (0..ring.size())
        .filter(|&b| ring.mul_idx(ring.mul_idx(ai, b), ai) == ai)
        .find(|&b| ring.inverse_idx(b).is_some());
    Ok(found.map(|b| RegularityWitness::new(ring, a, ring.el(b))))
}

/// First `b` with `a = a² b` and `a b = b a`.
pub fn strongly_regular_witness(ring: &Ring, a: Element) -> Result<Option<RegularityWitness>> {
    let ai = ring.check(a)?;
    let a2 = ring.mul_idx(ai, ai);
    let found = (0..ring.size())
        .find(|&b| ring.mul_idx(a2, b) == ai && ring.mul_idx(ai, b) == ring.mul_idx(b, ai));
    Ok(found.map(|b| {
        let w = RegularityWitness::new(ring, a, ring.el(b));
        debug_assert!(w.strong);
        w
    }))
}

/// Certificate that `a^n` is regular, for the least such `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiRegularWitness {
    pub a: Element,
    pub n: u32,
    pub power: RegularityWitness,
}

pub fn pi_regular_witness(ring: &Ring, a: Element) -> Result<Option<PiRegularWitness>> {
    ring.check(a)?;
    for n in 1..=power_orbit_len(ring, a) {
        let an = ring.pow(a, n);
        if let Some(power) = regular_witness(ring, an)? {
            return Ok(Some(PiRegularWitness { a, n, power }));
        }
    }
    Ok(None)
}

/// Certificate of strong π-regularity: `a^n = a^{2n} x = a^n x a^n`.
///
/// `left` and `right` certify the membership form
/// `a^n ∈ a^{n+1} R ∩ R a^{n+1}`: `a^{n+1} left = a^n = right a^{n+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrongPiWitness {
    pub a: Element,
    pub n: u32,
    pub x: Element,
    /// `a x = x a`; when false only the membership form was found.
    pub commuting: bool,
    pub left: Element,
    pub right: Element,
}

impl StrongPiWitness {
    pub fn verify(&self, ring: &Ring) -> bool {
        let an = ring.pow(self.a, self.n);
        let an1 = ring.mul(an, self.a);
        let membership = ring.mul(an1, self.left) == an && ring.mul(self.right, an1) == an;
        if !self.commuting {
            return membership;
        }
        membership
            && ring.mul(self.a, self.x) == ring.mul(self.x, self.a)
            && ring.mul(ring.mul(an, an), self.x) == an
            && ring.mul3(an, self.x, an) == an
    }
}

/// Least `n` admitting a commuting `x` with `a^n = a^{2n} x`; the first
/// such `x` in canonical order is returned. If no commuting form exists
/// the search falls back to the bare membership certificate.
pub fn strongly_pi_regular_witness(ring: &Ring, a: Element) -> Result<Option<StrongPiWitness>> {
    let ai = ring.check(a)?;
    let size = ring.size();
    let orbit = power_orbit_len(ring, a);
    for n in 1..=orbit {
        let an = ring.pow_idx(ai, n);
        let a2n = ring.mul_idx(an, an);
        let x = (0..size).find(|&x| {
            ring.mul_idx(ai, x) == ring.mul_idx(x, ai) && ring.mul_idx(a2n, x) == an
        });
        if let Some(x) = x {
            let x = ring.el(x);
            // a^{n+1} · a^{n-1} x = a^{2n} x = a^n, and symmetrically since x commutes
            let cert = ring.mul(ring.pow(a, n - 1), x);
            let w = StrongPiWitness {
                a,
                n,
                x,
                commuting: true,
                left: cert,
                right: cert,
            };
            if !w.verify(ring) {
                return Err(Error::defect("strong pi-regular certificate failed to verify"));
            }
            return Ok(Some(w));
        }
    }
    for n in 1..=orbit {
        let an = ring.pow_idx(ai, n);
        let an1 = ring.mul_idx(an, ai);
        let left = (0..size).find(|&s| ring.mul_idx(an1, s) == an);
        let right = (0..size).find(|&t| ring.mul_idx(t, an1) == an);
        if let (Some(s), Some(t)) = (left, right) {
            return Ok(Some(StrongPiWitness {
                a,
                n,
                x: ring.el(s),
                commuting: false,
                left: ring.el(s),
                right: ring.el(t),
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    Clean,
    NilClean,
}

/// `a = other + e` with `e` idempotent and `other` a unit (clean) or a
/// nilpotent (nil-clean).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub a: Element,
    pub e: Element,
    pub other: Element,
    /// Nilpotency index of `other` for nil-clean decompositions.
    pub index: Option<u32>,
    pub commuting: bool,
}

impl Decomposition {
    pub fn verify(&self, ring: &Ring) -> bool {
        let kind_ok = match self.kind {
            DecompositionKind::Clean => is_unit(ring, self.other),
            DecompositionKind::NilClean => {
                let k = nilpotency_index(ring, self.other);
                k.is_some() && k == self.index
            }
        };
        kind_ok
            && ring.add(self.other, self.e) == self.a
            && is_idempotent(ring, self.e)
            && self.commuting == (ring.mul(self.e, self.other) == ring.mul(self.other, self.e))
    }
}

pub fn decompose(
    ring: &Ring,
    a: Element,
    kind: DecompositionKind,
    require_commuting: bool,
) -> Result<Option<Decomposition>> {
    let ai = ring.check(a)?;
    for &e in ring.idempotent_indices() {
        let other = ring.sub_idx(ai, e);
        let index = match kind {
            DecompositionKind::Clean => {
                if ring.inverse_idx(other).is_none() {
                    continue;
                }
                None
            }
            DecompositionKind::NilClean => match ring.nil_index_idx(other) {
                Some(k) => Some(k),
                None => continue,
            },
        };
        let commuting = ring.mul_idx(e, other) == ring.mul_idx(other, e);
        if require_commuting && !commuting {
            continue;
        }
        return Ok(Some(Decomposition {
            kind,
            a,
            e: ring.el(e),
            other: ring.el(other),
            index,
            commuting,
        }));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::realize_str;

    #[test]
    fn basic_element_tests() {
        let z4 = realize_str("Z4").unwrap();
        assert_eq!(nilpotency_index(&z4, z4.from_int(2)), Some(2));
        assert_eq!(nilpotency_index(&z4, z4.zero()), Some(1));
        assert_eq!(nilpotency_index(&z4, z4.from_int(3)), None);
        assert_eq!(unit_inverse(&z4, z4.from_int(3)), Some(z4.from_int(3)));
        assert_eq!(unit_inverse(&z4, z4.from_int(2)), None);

        let m = realize_str("M(2,Z2)").unwrap();
        let jordan = m.parse_element("[0,1;0,0]").unwrap();
        assert_eq!(nilpotency_index(&m, jordan), Some(2));
        assert!(is_idempotent(&m, m.parse_element("[1,0;0,0]").unwrap()));
    }

    #[test]
    fn regular_witness_examples() {
        let z4 = realize_str("Z4").unwrap();
        let w = regular_witness(&z4, z4.zero()).unwrap().unwrap();
        assert_eq!(w.b, z4.zero());
        assert!(regular_witness(&z4, z4.from_int(2)).unwrap().is_none());

        let m = realize_str("M(2,Z2)").unwrap();
        for a in m.elements() {
            let w = regular_witness(&m, a).unwrap().expect("M2(Z2) is regular");
            assert!(w.reflexive && w.verify(&m));
        }
    }

    #[test]
    fn normalize_reflexive_examples() {
        let z6 = realize_str("Z6").unwrap();
        let e = z6.from_int(4);
        let w = normalize_reflexive(&z6, e, z6.one()).unwrap();
        assert_eq!(w.b, e);
        let w = normalize_reflexive(&z6, z6.one(), z6.one()).unwrap();
        assert_eq!(w.b, z6.one());
        assert!(normalize_reflexive(&z6, z6.from_int(2), z6.one()).is_err());
        let again = normalize_reflexive(&z6, w.a, w.b).unwrap();
        assert_eq!(again.b, w.b);
    }

    #[test]
    fn unit_regular_examples() {
        let m = realize_str("M(2,Z2)").unwrap();
        let u = m.parse_element("[1,1;0,1]").unwrap();
        let w = unit_regular_witness(&m, u).unwrap().unwrap();
        assert_eq!(Some(w.b), unit_inverse(&m, u));
        let e11 = m.parse_element("[1,0;0,0]").unwrap();
        let w = unit_regular_witness(&m, e11).unwrap().unwrap();
        assert!(is_unit(&m, w.b) && w.verify(&m));
    }

    #[test]
    fn strong_pi_examples() {
        let z4 = realize_str("Z4").unwrap();
        let w = strongly_pi_regular_witness(&z4, z4.from_int(2)).unwrap().unwrap();
        assert_eq!((w.n, w.x), (2, z4.zero()));
        assert!(w.commuting && w.verify(&z4));

        let m = realize_str("M(3,Z2)").unwrap();
        let j = m.parse_element("[0,1,0;0,0,1;0,0,0]").unwrap();
        let w = strongly_pi_regular_witness(&m, j).unwrap().unwrap();
        assert_eq!((w.n, w.x), (3, m.zero()));
    }

    #[test]
    fn decomposition_examples() {
        let z6 = realize_str("Z6").unwrap();
        let d = decompose(&z6, z6.one(), DecompositionKind::Clean, false).unwrap().unwrap();
        assert_eq!((d.other, d.e), (z6.one(), z6.zero()));
        let d = decompose(&z6, z6.one(), DecompositionKind::NilClean, false).unwrap().unwrap();
        assert_eq!((d.other, d.e, d.index), (z6.zero(), z6.one(), Some(1)));
        let d = decompose(&z6, z6.from_int(2), DecompositionKind::Clean, false).unwrap().unwrap();
        assert_eq!((d.other, d.e), (z6.one(), z6.one()));
        assert!(d.verify(&z6));
        // 2 in Z6 is not nil-clean: 2 - e ∈ {2, 1, 5, 4}, none nilpotent
        assert!(decompose(&z6, z6.from_int(2), DecompositionKind::NilClean, false).unwrap().is_none());
    }
}
