//! Element-wise exchange criteria.
//!
//! * `gn`: for every `r` there is an idempotent `e = r s` with
//!   `1 - e = (1 - r) t`.
//! * `kln`: for every `r` there is an idempotent `e = r s r` with
//!   `1 - e = (1 - r) t (1 - r)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ring::{Element, Ring};

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeCriterion {
    Gn,
    Kln,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExchangeWitness {
    pub criterion: ExchangeCriterion,
    pub r: Element,
    pub e: Element,
    pub s: Element,
    pub t: Element,
}

impl ExchangeWitness {
    pub fn verify(&self, ring: &Ring) -> bool {
        let one = ring.one();
        let c = ring.sub(one, self.r);
        let (e, complement) = match self.criterion {
            ExchangeCriterion::Gn => (ring.mul(self.r, self.s), ring.mul(c, self.t)),
            ExchangeCriterion::Kln => (ring.mul3(self.r, self.s, self.r), ring.mul3(c, self.t, c)),
        };
        e == self.e && ring.mul(e, e) == e && complement == ring.sub(one, e)
    }
}

/// First `s` in canonical order (and the first matching `t`) for `r`.
pub fn exchange_element(ring: &Ring, r: Element, criterion: ExchangeCriterion) -> Result<Option<ExchangeWitness>> {
    let ri = ring.check(r)?;
    let one = ring.one_idx();
    let c = ring.sub_idx(one, ri);
    let n = ring.size();
    // first t hitting each value of (1-r) t [(1-r)]
    let mut first_t = vec![NONE; n as usize];
    for t in 0..n {
        let v = match criterion {
            ExchangeCriterion::Gn => ring.mul_idx(c, t),
            ExchangeCriterion::Kln => ring.mul_idx(ring.mul_idx(c, t), c),
        };
        if first_t[v as usize] == NONE {
            first_t[v as usize] = t;
        }
    }
    for s in 0..n {
        let e = match criterion {
            ExchangeCriterion::Gn => ring.mul_idx(ri, s),
            ExchangeCriterion::Kln => ring.mul_idx(ring.mul_idx(ri, s), ri),
        };
        if ring.mul_idx(e, e) != e {
            continue;
        }
        let t = first_t[ring.sub_idx(one, e) as usize];
        if t != NONE {
            return Ok(Some(ExchangeWitness {
                criterion,
                r,
                e: ring.el(e),
                s: ring.el(s),
                t: ring.el(t),
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct ExchangeVerdict {
    pub criterion: ExchangeCriterion,
    pub witnesses: Vec<ExchangeWitness>,
    pub counterexample: Option<Element>,
}

impl ExchangeVerdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

pub fn exchange_check(ring: &Ring, criterion: ExchangeCriterion) -> Result<ExchangeVerdict> {
    ring.require_classify_size()?;
    let results: Vec<Option<ExchangeWitness>> = ring
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|r| exchange_element(ring, r, criterion))
        .collect::<Result<_>>()?;
    let mut verdict = ExchangeVerdict {
        criterion,
        witnesses: Vec::with_capacity(results.len()),
        counterexample: None,
    };
    for (r, w) in ring.elements().zip(results) {
        match w {
            Some(w) => verdict.witnesses.push(w),
            None => {
                verdict.counterexample = Some(r);
                verdict.witnesses.clear();
                break;
            }
        }
    }
    Ok(verdict)
}
