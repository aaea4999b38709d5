//! Certificates for (D-)regularly nil clean elements and rings.
//!
//! A D-RNC witness for `a` is an idempotent `e = a r a` with
//! `[a(1-e)]^k = 0`. Witnesses come from exhaustive search or from one of
//! the constructive routes (a regular power of `a`, a strongly π-regular
//! certificate, or the linear-algebra constructions in [`crate::endo`]).

mod exchange;
mod identity;
mod rnc;
mod utumi;

pub use exchange::{exchange_check, exchange_element, ExchangeCriterion, ExchangeVerdict, ExchangeWitness};
pub use identity::{identity_xn_minus_x, IdentityVerdict};
pub use rnc::{rnc_witness_brute, RncWitness, Side};
pub use utumi::{utumi_symmetry_verify, utumi_witness, UtumiChain, UtumiWitness};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::{self, StrongPiWitness};
use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DrncPath {
    Brute,
    RegularPower,
    StrongPi,
    EndoVs,
    EndoLift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DrncWitness {
    pub a: Element,
    pub e: Element,
    /// Certifies `e ∈ aRa` via `e = a r a`.
    pub r: Element,
    /// Nilpotency index of `a(1-e)`.
    pub k: u32,
    pub path: DrncPath,
    /// Upper bound on `k` promised by the constructive route, if any.
    pub bound: Option<u32>,
}

impl DrncWitness {
    /// Recomputes every defining equation.
    pub fn check(&self, ring: &Ring) -> std::result::Result<(), String> {
        check_drnc(ring, self.a, self.e, self.r, self.k)?;
        if let Some(bound) = self.bound {
            if self.k > bound {
                return Err(format!("index {} exceeds the route bound {bound}", self.k));
            }
        }
        Ok(())
    }

    pub fn verify(&self, ring: &Ring) -> bool {
        self.check(ring).is_ok()
    }

    /// The same idempotent read as a left (`e = (a r) a`) or right
    /// (`e = a (r a)`) regularly-nil-clean certificate.
    pub fn to_rnc(&self, ring: &Ring, side: Side) -> RncWitness {
        let s = match side {
            Side::Left => ring.mul(self.a, self.r),
            Side::Right => ring.mul(self.r, self.a),
        };
        RncWitness {
            a: self.a,
            e: self.e,
            s,
            side,
            k: self.k,
        }
    }
}

/// Checks `e² = e`, `e = a r a`, that `k` is the exact index of `a(1-e)`
/// and that `[(1-e)a]^{k+1} = 0`.
pub fn check_drnc(ring: &Ring, a: Element, e: Element, r: Element, k: u32) -> std::result::Result<(), String> {
    if ring.mul(e, e) != e {
        return Err("e is not idempotent".into());
    }
    if ring.mul3(a, r, a) != e {
        return Err("e != a·r·a".into());
    }
    let one_minus_e = ring.sub(ring.one(), e);
    let q = ring.mul(a, one_minus_e);
    if k == 0 || ring.pow(q, k) != ring.zero() {
        return Err(format!("[a(1-e)]^{k} != 0"));
    }
    if ring.pow(q, k - 1) == ring.zero() {
        return Err(format!("[a(1-e)]^{} is already 0; index is not {k}", k - 1));
    }
    if ring.pow(ring.mul(one_minus_e, a), k + 1) != ring.zero() {
        return Err(format!("[(1-e)a]^{} != 0", k + 1));
    }
    Ok(())
}

/// Exhaustive search over `r` in canonical order for an idempotent
/// `e = a r a` with `a(1-e)` nilpotent.
///
/// Without `minimize` the first accepted `r` is returned; with it, the
/// first `r` attaining the least possible index. Product rings are
/// searched componentwise, which selects the same witness as the flat
/// search.
pub fn drnc_witness_brute(ring: &Ring, a: Element, minimize: bool) -> Result<Option<DrncWitness>> {
    let ai = ring.check(a)?;
    if ai == 0 {
        return Ok(Some(DrncWitness {
            a,
            e: ring.zero(),
            r: ring.zero(),
            k: 1,
            path: DrncPath::Brute,
            bound: None,
        }));
    }
    let found = match ring.components() {
        Some(parts) => product_search(ring, parts, a, minimize)?,
        None => flat_search(ring, ai, minimize),
    };
    Ok(found.map(|(r, e, k)| DrncWitness {
        a,
        e: ring.el(e),
        r: ring.el(r),
        k,
        path: DrncPath::Brute,
        bound: None,
    }))
}

/// `(r, e, k)` for the accepted candidates, in canonical order of `r`.
fn candidates(ring: &Ring, a: u32) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
    let one = ring.one_idx();
    (0..ring.size()).filter_map(move |r| {
        let e = ring.mul_idx(ring.mul_idx(a, r), a);
        if ring.mul_idx(e, e) != e {
            return None;
        }
        let q = ring.mul_idx(a, ring.sub_idx(one, e));
        ring.nil_index_idx(q).map(|k| (r, e, k))
    })
}

fn flat_search(ring: &Ring, a: u32, minimize: bool) -> Option<(u32, u32, u32)> {
    if !minimize {
        return candidates(ring, a).next();
    }
    let mut best: Option<(u32, u32, u32)> = None;
    for c in candidates(ring, a) {
        if best.is_none_or(|b| c.2 < b.2) {
            best = Some(c);
            if c.2 == 1 {
                break;
            }
        }
    }
    best
}

fn product_search(ring: &Ring, parts: &[Ring], a: Element, minimize: bool) -> Result<Option<(u32, u32, u32)>> {
    let coords = ring.project(a).expect("product ring");
    let mut chosen = Vec::with_capacity(parts.len());
    for (p, &c) in parts.iter().zip(&coords) {
        match flat_or_zero(p, c, minimize) {
            Some(hit) => chosen.push(hit),
            None => return Ok(None),
        }
    }
    if minimize {
        // the product index is the max over components, so any component
        // may use its first candidate within that max
        let target = chosen.iter().map(|c| c.2).max().unwrap_or(1);
        for (slot, (p, &c)) in chosen.iter_mut().zip(parts.iter().zip(&coords)) {
            *slot = first_within(p, c, target).expect("minimal candidate exists");
        }
    }
    let r = ring.tuple(&chosen.iter().zip(parts).map(|(c, p)| p.el(c.0)).collect::<Vec<_>>())?;
    let e = ring.tuple(&chosen.iter().zip(parts).map(|(c, p)| p.el(c.1)).collect::<Vec<_>>())?;
    let k = chosen.iter().map(|c| c.2).max().unwrap_or(1);
    Ok(Some((ring.idx(r), ring.idx(e), k)))
}

fn flat_or_zero(ring: &Ring, a: Element, minimize: bool) -> Option<(u32, u32, u32)> {
    match drnc_witness_brute(ring, a, minimize) {
        Ok(Some(w)) => Some((ring.idx(w.r), ring.idx(w.e), w.k)),
        _ => None,
    }
}

fn first_within(ring: &Ring, a: Element, target: u32) -> Option<(u32, u32, u32)> {
    let ai = ring.idx(a);
    if ai == 0 {
        return Some((0, 0, 1));
    }
    if let Some(parts) = ring.components() {
        let coords = ring.project(a)?;
        let picks = parts
            .iter()
            .zip(&coords)
            .map(|(p, &c)| first_within(p, c, target))
            .collect::<Option<Vec<_>>>()?;
        let r = ring.tuple(&picks.iter().zip(parts).map(|(c, p)| p.el(c.0)).collect::<Vec<_>>()).ok()?;
        let e = ring.tuple(&picks.iter().zip(parts).map(|(c, p)| p.el(c.1)).collect::<Vec<_>>()).ok()?;
        let k = picks.iter().map(|c| c.2).max().unwrap_or(1);
        return Some((ring.idx(r), ring.idx(e), k));
    }
    candidates(ring, ai).find(|c| c.2 <= target)
}

/// Route A: from a regular power `a^n = a^n b a^n` with `n >= 2`, take a
/// reflexive `b` and set `e = a b a^{n-1}`, certified by `r = b a^{n-2}`.
pub fn drnc_from_regular_power(ring: &Ring, a: Element, n: u32) -> Result<DrncWitness> {
    ring.check(a)?;
    if n < 2 {
        return Err(Error::Precondition(format!("power must be at least 2, got {n}")));
    }
    let an = ring.pow(a, n);
    let inner = element::regular_witness(ring, an)?.ok_or(Error::NoRegularPower(n))?;
    let b = element::normalize_reflexive(ring, an, inner.b)?.b;
    let e = ring.mul3(a, b, ring.pow(a, n - 1));
    let r = ring.mul(b, ring.pow(a, n - 2));
    finish_constructive(ring, a, e, r, n, DrncPath::RegularPower)
}

/// Tries route A for `n = 2, 3, …` up to twice the power orbit of `a`
/// (by then some power is idempotent, hence regular).
pub fn drnc_path_regular_power(ring: &Ring, a: Element) -> Result<Option<(u32, DrncWitness)>> {
    let limit = (2 * element::power_orbit_len(ring, a)).max(2);
    for n in 2..=limit {
        match drnc_from_regular_power(ring, a, n) {
            Ok(w) => return Ok(Some((n, w))),
            Err(Error::NoRegularPower(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// Route B: from `a^n = a^{2n} x` with `a x = x a`, the idempotent is
/// `e = a^n x = a^{2n} x²`.
pub fn drnc_from_strong_pi(ring: &Ring, a: Element) -> Result<DrncWitness> {
    let w = element::strongly_pi_regular_witness(ring, a)?.ok_or(Error::NoStrongPiWitness)?;
    drnc_from_strong_pi_witness(ring, &w)
}

pub fn drnc_from_strong_pi_witness(ring: &Ring, w: &StrongPiWitness) -> Result<DrncWitness> {
    if !w.commuting || !w.verify(ring) {
        return Err(Error::NoStrongPiWitness);
    }
    let (a, n, x) = (w.a, w.n, w.x);
    let e = ring.mul(ring.pow(a, n), x);
    let x2 = ring.mul(x, x);
    let r = if n == 1 {
        // a x = x a gives a² x² = a x² a
        x2
    } else {
        ring.mul3(ring.pow(a, n - 2), x2, ring.pow(a, n))
    };
    finish_constructive(ring, a, e, r, n, DrncPath::StrongPi)
}

pub(crate) fn finish_constructive(
    ring: &Ring,
    a: Element,
    e: Element,
    r: Element,
    bound: u32,
    path: DrncPath,
) -> Result<DrncWitness> {
    let q = ring.mul(a, ring.sub(ring.one(), e));
    let k = element::nilpotency_index(ring, q).ok_or_else(|| {
        Error::defect(format!(
            "{path:?}: a(1-e) is not nilpotent for a = {}",
            ring.format(a)
        ))
    })?;
    let w = DrncWitness {
        a,
        e,
        r,
        k,
        path,
        bound: Some(bound),
    };
    w.check(ring).map_err(|m| {
        Error::defect(format!("{path:?} witness for a = {}: {m}", ring.format(a)))
    })?;
    Ok(w)
}

#[derive(Debug, Clone)]
pub struct DrncRingReport {
    /// Largest per-element minimal index, when every element has a witness.
    pub max_index: Option<u32>,
    /// One minimal-index witness per element, in canonical order.
    pub witnesses: Vec<DrncWitness>,
    pub counterexample: Option<Element>,
}

impl DrncRingReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Decides D-regular nil cleanness of the whole ring. The reported index
/// is the least `k` that works for every element, so each element's
/// witness is the first one attaining that element's minimal index.
pub fn ring_is_drnc(ring: &Ring) -> Result<DrncRingReport> {
    ring.require_classify_size()?;
    let results: Vec<Option<DrncWitness>> = ring
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|a| drnc_witness_brute(ring, a, true))
        .collect::<Result<_>>()?;
    let mut report = DrncRingReport {
        max_index: None,
        witnesses: Vec::with_capacity(results.len()),
        counterexample: None,
    };
    for (a, w) in ring.elements().zip(results) {
        match w {
            Some(w) => report.witnesses.push(w),
            None => {
                report.counterexample = Some(a);
                report.witnesses.clear();
                return Ok(report);
            }
        }
    }
    report.max_index = report.witnesses.iter().map(|w| w.k).max();
    Ok(report)
}
