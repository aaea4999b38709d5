use crate::element::nilpotency_index;
use crate::error::Result;
use crate::ring::{Element, Ring};

/// `x - x² y` is nilpotent of index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UtumiWitness {
    pub x: Element,
    pub y: Element,
    pub n: u32,
    /// Guaranteed bound `n + 2` for the index of `x - y x²`.
    pub symmetric_index: u32,
}

/// First `y` in canonical order with `x - x² y` nilpotent.
pub fn utumi_witness(ring: &Ring, x: Element) -> Result<Option<UtumiWitness>> {
    let xi = ring.check(x)?;
    let x2 = ring.mul_idx(xi, xi);
    for y in 0..ring.size() {
        let d = ring.sub_idx(xi, ring.mul_idx(x2, y));
        if let Some(n) = ring.nil_index_idx(d) {
            return Ok(Some(UtumiWitness {
                x,
                y: ring.el(y),
                n,
                symmetric_index: n + 2,
            }));
        }
    }
    Ok(None)
}

/// Outcome of checking the chain
/// `(x - x²y)^n = 0 ⇒ (x - xyx)^{n+1} = 0 ⇒ (x - yx²)^{n+2} = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UtumiChain {
    pub premise: bool,
    pub middle: bool,
    pub symmetric: bool,
    /// Actual index of `x - x y x`, if nilpotent.
    pub middle_index: Option<u32>,
    /// Actual index of `x - y x²`, if nilpotent.
    pub symmetric_index: Option<u32>,
}

impl UtumiChain {
    /// The implication holds (vacuously when the premise fails).
    pub fn holds(&self) -> bool {
        !self.premise || (self.middle && self.symmetric)
    }
}

pub fn utumi_symmetry_verify(ring: &Ring, x: Element, y: Element, n: u32) -> UtumiChain {
    let zero = ring.zero();
    let x2 = ring.mul(x, x);
    let left = ring.sub(x, ring.mul(x2, y));
    let middle = ring.sub(x, ring.mul3(x, y, x));
    let right = ring.sub(x, ring.mul(y, x2));
    UtumiChain {
        premise: ring.pow(left, n) == zero,
        middle: ring.pow(middle, n + 1) == zero,
        symmetric: ring.pow(right, n + 2) == zero,
        middle_index: nilpotency_index(ring, middle),
        symmetric_index: nilpotency_index(ring, right),
    }
}
