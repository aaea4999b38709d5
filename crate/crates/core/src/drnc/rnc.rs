use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `e ∈ Ra`, certified by `e = s a`.
    Left,
    /// `e ∈ aR`, certified by `e = a s`.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RncWitness {
    pub a: Element,
    pub e: Element,
    pub s: Element,
    pub side: Side,
    /// Nilpotency index of `a(1-e)`.
    pub k: u32,
}

impl RncWitness {
    pub fn check(&self, ring: &Ring) -> std::result::Result<(), String> {
        if ring.mul(self.e, self.e) != self.e {
            return Err("e is not idempotent".into());
        }
        let product = match self.side {
            Side::Left => ring.mul(self.s, self.a),
            Side::Right => ring.mul(self.a, self.s),
        };
        if product != self.e {
            return Err(format!("side equation fails for the {:?} form", self.side));
        }
        let q = ring.mul(self.a, ring.sub(ring.one(), self.e));
        if self.k == 0 || ring.pow(q, self.k) != ring.zero() || ring.pow(q, self.k - 1) == ring.zero() {
            return Err(format!("{} is not the index of a(1-e)", self.k));
        }
        Ok(())
    }

    pub fn verify(&self, ring: &Ring) -> bool {
        self.check(ring).is_ok()
    }
}

/// First `s` in canonical order with `e = s a` (left) or `e = a s`
/// (right) idempotent and `a(1-e)` nilpotent; with `minimize`, the first
/// one attaining the least index.
pub fn rnc_witness_brute(ring: &Ring, a: Element, side: Side, minimize: bool) -> Result<Option<RncWitness>> {
    let ai = ring.check(a)?;
    let one = ring.one_idx();
    let mut best: Option<RncWitness> = None;
    for s in 0..ring.size() {
        let e = match side {
            Side::Left => ring.mul_idx(s, ai),
            Side::Right => ring.mul_idx(ai, s),
        };
        if ring.mul_idx(e, e) != e {
            continue;
        }
        let q = ring.mul_idx(ai, ring.sub_idx(one, e));
        let Some(k) = ring.nil_index_idx(q) else {
            continue;
        };
        if best.is_none_or(|b| k < b.k) {
            best = Some(RncWitness {
                a,
                e: ring.el(e),
                s: ring.el(s),
                side,
                k,
            });
            if !minimize || k == 1 {
                break;
            }
        }
    }
    Ok(best)
}
