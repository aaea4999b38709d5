//! Serializable per-element certificates and their standalone checkers.
//!
//! Elements are stored as literals of the ring they belong to, so a record
//! together with its ring spec can be re-checked without the search code.

use serde::{Deserialize, Serialize};

use super::Property;
use crate::drnc::{
    drnc_witness_brute, exchange_element, rnc_witness_brute, utumi_symmetry_verify, utumi_witness, DrncPath,
    ExchangeCriterion, Side,
};
use crate::element::{self, DecompositionKind};
use crate::error::{Error, Result};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WitnessRecord {
    /// `a b a = a`.
    Regular { a: String, b: String, reflexive: bool },
    /// `a b a = a` with `b` a unit.
    UnitRegular { a: String, b: String },
    /// `a = a² b` with `a b = b a`.
    StronglyRegular { a: String, b: String },
    /// `a^n b a^n = a^n`.
    PiRegular { a: String, n: u32, b: String },
    /// `a^{n+1} left = a^n = right a^{n+1}`; with `commuting`, also
    /// `a^n = a^{2n} x` and `a x = x a`.
    StronglyPiRegular {
        a: String,
        n: u32,
        x: String,
        commuting: bool,
        left: String,
        right: String,
    },
    /// `a = other + e`.
    Decomposition {
        a: String,
        kind: DecompositionKind,
        e: String,
        other: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        index: Option<u32>,
        commuting: bool,
    },
    Exchange {
        criterion: ExchangeCriterion,
        r: String,
        e: String,
        s: String,
        t: String,
    },
    /// `(x - x² y)^n = 0`.
    Utumi { x: String, y: String, n: u32 },
    /// A Utumi witness together with the observed indices of `x - x y x`
    /// and `x - y x²`.
    UtumiSymmetric {
        x: String,
        y: String,
        n: u32,
        middle_index: u32,
        symmetric_index: u32,
    },
    Rnc {
        a: String,
        e: String,
        s: String,
        side: Side,
        k: u32,
    },
    Drnc {
        a: String,
        e: String,
        r: String,
        k: u32,
        path: DrncPath,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<u32>,
    },
    /// The idempotent `e` commutes with every element.
    Central { e: String },
}

impl WitnessRecord {
    /// The element the record certifies.
    pub fn subject(&self) -> &str {
        match self {
            WitnessRecord::Regular { a, .. }
            | WitnessRecord::UnitRegular { a, .. }
            | WitnessRecord::StronglyRegular { a, .. }
            | WitnessRecord::PiRegular { a, .. }
            | WitnessRecord::StronglyPiRegular { a, .. }
            | WitnessRecord::Decomposition { a, .. }
            | WitnessRecord::Rnc { a, .. }
            | WitnessRecord::Drnc { a, .. } => a,
            WitnessRecord::Exchange { r, .. } => r,
            WitnessRecord::Utumi { x, .. } | WitnessRecord::UtumiSymmetric { x, .. } => x,
            WitnessRecord::Central { e } => e,
        }
    }

    /// The index carried by the record, where the property has one.
    pub fn index(&self) -> Option<u32> {
        match self {
            WitnessRecord::PiRegular { n, .. }
            | WitnessRecord::StronglyPiRegular { n, .. }
            | WitnessRecord::Utumi { n, .. }
            | WitnessRecord::UtumiSymmetric { n, .. } => Some(*n),
            WitnessRecord::Decomposition { index, .. } => *index,
            WitnessRecord::Rnc { k, .. } | WitnessRecord::Drnc { k, .. } => Some(*k),
            _ => None,
        }
    }

    /// Recomputes every defining equation of the record for `property`.
    pub fn check(&self, ring: &Ring, property: Property) -> std::result::Result<(), String> {
        let el = |s: &str| ring.parse_element(s).map_err(|e| e.to_string());
        let zero = ring.zero();
        let one = ring.one();
        let ensure = |ok: bool, msg: &str| if ok { Ok(()) } else { Err(msg.to_string()) };
        let mismatch = || Err(format!("record type does not certify {property}"));
        match (property, self) {
            (Property::Regular, WitnessRecord::Regular { a, b, reflexive }) => {
                let (a, b) = (el(a)?, el(b)?);
                ensure(ring.mul3(a, b, a) == a, "a·b·a != a")?;
                ensure(!reflexive || ring.mul3(b, a, b) == b, "b·a·b != b")
            }
            (Property::UnitRegular, WitnessRecord::UnitRegular { a, b }) => {
                let (a, b) = (el(a)?, el(b)?);
                ensure(ring.mul3(a, b, a) == a, "a·b·a != a")?;
                ensure(is_unit(ring, b), "b is not a unit")
            }
            (Property::StronglyRegular, WitnessRecord::StronglyRegular { a, b }) => {
                let (a, b) = (el(a)?, el(b)?);
                ensure(ring.mul3(a, a, b) == a, "a²·b != a")?;
                ensure(ring.mul(a, b) == ring.mul(b, a), "a and b do not commute")
            }
            (Property::PiRegular, WitnessRecord::PiRegular { a, n, b }) => {
                let (a, b) = (el(a)?, el(b)?);
                ensure(*n >= 1, "n must be positive")?;
                let an = ring.pow(a, *n);
                ensure(ring.mul3(an, b, an) == an, "a^n·b·a^n != a^n")
            }
            (
                Property::StronglyPiRegular,
                WitnessRecord::StronglyPiRegular {
                    a,
                    n,
                    x,
                    commuting,
                    left,
                    right,
                },
            ) => {
                let (a, x, left, right) = (el(a)?, el(x)?, el(left)?, el(right)?);
                ensure(*n >= 1, "n must be positive")?;
                let an = ring.pow(a, *n);
                let an1 = ring.mul(an, a);
                ensure(ring.mul(an1, left) == an, "a^{n+1}·left != a^n")?;
                ensure(ring.mul(right, an1) == an, "right·a^{n+1} != a^n")?;
                if *commuting {
                    ensure(ring.mul(a, x) == ring.mul(x, a), "a and x do not commute")?;
                    ensure(ring.mul3(an, an, x) == an, "a^{2n}·x != a^n")?;
                }
                Ok(())
            }
            (
                Property::Clean | Property::StronglyClean | Property::NilClean | Property::StronglyNilClean,
                WitnessRecord::Decomposition {
                    a,
                    kind,
                    e,
                    other,
                    index,
                    commuting,
                },
            ) => {
                let (a, e, other) = (el(a)?, el(e)?, el(other)?);
                let want_kind = match property {
                    Property::Clean | Property::StronglyClean => DecompositionKind::Clean,
                    _ => DecompositionKind::NilClean,
                };
                ensure(*kind == want_kind, "wrong decomposition kind")?;
                ensure(ring.add(other, e) == a, "other + e != a")?;
                ensure(ring.mul(e, e) == e, "e is not idempotent")?;
                let commutes = ring.mul(e, other) == ring.mul(other, e);
                ensure(*commuting == commutes, "commuting flag is wrong")?;
                if matches!(property, Property::StronglyClean | Property::StronglyNilClean) {
                    ensure(commutes, "e and the other summand do not commute")?;
                }
                match kind {
                    DecompositionKind::Clean => ensure(is_unit(ring, other), "other is not a unit"),
                    DecompositionKind::NilClean => ensure(
                        index.is_some() && nil_index(ring, other) == *index,
                        "other is not nilpotent of the recorded index",
                    ),
                }
            }
            (
                Property::ExchangeGn | Property::ExchangeKln,
                WitnessRecord::Exchange { criterion, r, e, s, t },
            ) => {
                let want = if property == Property::ExchangeGn {
                    ExchangeCriterion::Gn
                } else {
                    ExchangeCriterion::Kln
                };
                ensure(*criterion == want, "wrong exchange criterion")?;
                let (r, e, s, t) = (el(r)?, el(e)?, el(s)?, el(t)?);
                let c = ring.sub(one, r);
                let (lhs, rhs) = match criterion {
                    ExchangeCriterion::Gn => (ring.mul(r, s), ring.mul(c, t)),
                    ExchangeCriterion::Kln => (ring.mul3(r, s, r), ring.mul3(c, t, c)),
                };
                ensure(lhs == e, "e is not generated by r as recorded")?;
                ensure(ring.mul(e, e) == e, "e is not idempotent")?;
                ensure(rhs == ring.sub(one, e), "1 - e is not generated by 1 - r as recorded")
            }
            (Property::Utumi, WitnessRecord::Utumi { x, y, n }) => {
                let (x, y) = (el(x)?, el(y)?);
                let d = ring.sub(x, ring.mul3(x, x, y));
                ensure(nil_index(ring, d) == Some(*n), "x - x²y is not nilpotent of index n")
            }
            (
                Property::UtumiSymmetric,
                WitnessRecord::UtumiSymmetric {
                    x,
                    y,
                    n,
                    middle_index,
                    symmetric_index,
                },
            ) => {
                let (x, y) = (el(x)?, el(y)?);
                let x2 = ring.mul(x, x);
                ensure(
                    nil_index(ring, ring.sub(x, ring.mul(x2, y))) == Some(*n),
                    "x - x²y is not nilpotent of index n",
                )?;
                let middle = ring.sub(x, ring.mul3(x, y, x));
                let sym = ring.sub(x, ring.mul(y, x2));
                ensure(nil_index(ring, middle) == Some(*middle_index), "wrong index of x - xyx")?;
                ensure(nil_index(ring, sym) == Some(*symmetric_index), "wrong index of x - yx²")?;
                ensure(ring.pow(middle, n + 1) == zero, "(x - xyx)^{n+1} != 0")?;
                ensure(ring.pow(sym, n + 2) == zero, "(x - yx²)^{n+2} != 0")
            }
            (Property::Rnc, WitnessRecord::Rnc { a, e, s, side, k }) => {
                let (a, e, s) = (el(a)?, el(e)?, el(s)?);
                let product = match side {
                    Side::Left => ring.mul(s, a),
                    Side::Right => ring.mul(a, s),
                };
                ensure(product == e, "side equation fails")?;
                ensure(ring.mul(e, e) == e, "e is not idempotent")?;
                let q = ring.mul(a, ring.sub(one, e));
                ensure(nil_index(ring, q) == Some(*k), "a(1-e) is not nilpotent of index k")
            }
            (Property::Drnc, WitnessRecord::Drnc { a, e, r, k, bound, .. }) => {
                let (a, e, r) = (el(a)?, el(e)?, el(r)?);
                ensure(ring.mul3(a, r, a) == e, "e != a·r·a")?;
                ensure(ring.mul(e, e) == e, "e is not idempotent")?;
                let one_minus_e = ring.sub(one, e);
                let q = ring.mul(a, one_minus_e);
                ensure(nil_index(ring, q) == Some(*k), "a(1-e) is not nilpotent of index k")?;
                ensure(
                    ring.pow(ring.mul(one_minus_e, a), k + 1) == zero,
                    "[(1-e)a]^{k+1} != 0",
                )?;
                ensure(bound.is_none_or(|b| *k <= b), "index exceeds the route bound")
            }
            (Property::Abelian, WitnessRecord::Central { e }) => {
                let e = el(e)?;
                ensure(ring.mul(e, e) == e, "e is not idempotent")?;
                ensure(
                    ring.elements().all(|x| ring.mul(e, x) == ring.mul(x, e)),
                    "e is not central",
                )
            }
            _ => mismatch(),
        }
    }
}

fn is_unit(ring: &Ring, x: Element) -> bool {
    let one = ring.one();
    ring.elements().any(|y| ring.mul(x, y) == one && ring.mul(y, x) == one)
}

/// Index of nilpotency by plain repeated multiplication.
pub(crate) fn nil_index(ring: &Ring, x: Element) -> Option<u32> {
    let zero = ring.zero();
    let mut p = x;
    for k in 1..=ring.size().saturating_add(1) {
        if p == zero {
            return Some(k);
        }
        p = ring.mul(p, x);
        if p == x {
            return None;
        }
    }
    None
}

/// Distinct positive powers of `x`.
fn powers(ring: &Ring, x: Element) -> Vec<Element> {
    let mut seen = Vec::new();
    let mut p = x;
    while !seen.contains(&p) {
        seen.push(p);
        p = ring.mul(p, x);
    }
    seen
}

fn regular_in(ring: &Ring, a: Element) -> bool {
    ring.elements().any(|b| ring.mul3(a, b, a) == a)
}

/// Confirms, by a search independent of the engine, that `c` has no
/// certificate for `property`.
pub fn confirm_counterexample(ring: &Ring, property: Property, c: Element) -> std::result::Result<(), String> {
    let one = ring.one();
    let elems: Vec<Element> = ring.elements().collect();
    let idempotents: Vec<Element> = elems.iter().copied().filter(|&e| ring.mul(e, e) == e).collect();
    let witness_found = match property {
        Property::Regular => regular_in(ring, c),
        Property::UnitRegular => elems
            .iter()
            .any(|&b| ring.mul3(c, b, c) == c && is_unit(ring, b)),
        Property::StronglyRegular => elems
            .iter()
            .any(|&b| ring.mul3(c, c, b) == c && ring.mul(c, b) == ring.mul(b, c)),
        Property::PiRegular => powers(ring, c).into_iter().any(|p| regular_in(ring, p)),
        Property::StronglyPiRegular => powers(ring, c).into_iter().any(|p| {
            let p1 = ring.mul(p, c);
            elems.iter().any(|&s| ring.mul(p1, s) == p) && elems.iter().any(|&t| ring.mul(t, p1) == p)
        }),
        Property::Clean | Property::StronglyClean | Property::NilClean | Property::StronglyNilClean => {
            idempotents.iter().any(|&e| {
                let other = ring.sub(c, e);
                let kind_ok = match property {
                    Property::Clean | Property::StronglyClean => is_unit(ring, other),
                    _ => nil_index(ring, other).is_some(),
                };
                let strong = matches!(property, Property::StronglyClean | Property::StronglyNilClean);
                kind_ok && (!strong || ring.mul(e, other) == ring.mul(other, e))
            })
        }
        Property::ExchangeGn | Property::ExchangeKln => {
            let d = ring.sub(one, c);
            let gn = property == Property::ExchangeGn;
            let reachable: Vec<Element> = elems
                .iter()
                .map(|&t| if gn { ring.mul(d, t) } else { ring.mul3(d, t, d) })
                .collect();
            elems.iter().any(|&s| {
                let e = if gn { ring.mul(c, s) } else { ring.mul3(c, s, c) };
                ring.mul(e, e) == e && reachable.contains(&ring.sub(one, e))
            })
        }
        Property::Utumi | Property::UtumiSymmetric => {
            let c2 = ring.mul(c, c);
            elems
                .iter()
                .any(|&y| nil_index(ring, ring.sub(c, ring.mul(c2, y))).is_some())
        }
        Property::Rnc => elems.iter().any(|&s| {
            let e = ring.mul(s, c);
            ring.mul(e, e) == e && nil_index(ring, ring.mul(c, ring.sub(one, e))).is_some()
        }),
        Property::Drnc => elems.iter().any(|&r| {
            let e = ring.mul3(c, r, c);
            ring.mul(e, e) == e && nil_index(ring, ring.mul(c, ring.sub(one, e))).is_some()
        }),
        Property::Abelian => {
            if ring.mul(c, c) != c {
                return Err("counterexample is not an idempotent".into());
            }
            elems.iter().all(|&x| ring.mul(c, x) == ring.mul(x, c))
        }
    };
    if witness_found {
        Err(format!("{} is not a counterexample for {property}", ring.format(c)))
    } else {
        Ok(())
    }
}

/// Searches for a certificate of `property` at `a`; `None` means `a` is a
/// counterexample. With `minimize`, index-carrying searches return the
/// first certificate of least index.
pub fn element_witness(ring: &Ring, a: Element, property: Property, minimize: bool) -> Result<Option<WitnessRecord>> {
    let f = |x: Element| ring.format(x);
    let rec = match property {
        Property::Regular => element::regular_witness(ring, a)?.map(|w| WitnessRecord::Regular {
            a: f(a),
            b: f(w.b),
            reflexive: w.reflexive,
        }),
        Property::UnitRegular => element::unit_regular_witness(ring, a)?.map(|w| WitnessRecord::UnitRegular {
            a: f(a),
            b: f(w.b),
        }),
        Property::StronglyRegular => {
            element::strongly_regular_witness(ring, a)?.map(|w| WitnessRecord::StronglyRegular {
                a: f(a),
                b: f(w.b),
            })
        }
        Property::PiRegular => element::pi_regular_witness(ring, a)?.map(|w| WitnessRecord::PiRegular {
            a: f(a),
            n: w.n,
            b: f(w.power.b),
        }),
        Property::StronglyPiRegular => {
            element::strongly_pi_regular_witness(ring, a)?.map(|w| WitnessRecord::StronglyPiRegular {
                a: f(a),
                n: w.n,
                x: f(w.x),
                commuting: w.commuting,
                left: f(w.left),
                right: f(w.right),
            })
        }
        Property::Clean | Property::StronglyClean | Property::NilClean | Property::StronglyNilClean => {
            let kind = match property {
                Property::Clean | Property::StronglyClean => DecompositionKind::Clean,
                _ => DecompositionKind::NilClean,
            };
            let strong = matches!(property, Property::StronglyClean | Property::StronglyNilClean);
            element::decompose(ring, a, kind, strong)?.map(|d| WitnessRecord::Decomposition {
                a: f(a),
                kind,
                e: f(d.e),
                other: f(d.other),
                index: d.index,
                commuting: d.commuting,
            })
        }
        Property::ExchangeGn | Property::ExchangeKln => {
            let criterion = if property == Property::ExchangeGn {
                ExchangeCriterion::Gn
            } else {
                ExchangeCriterion::Kln
            };
            exchange_element(ring, a, criterion)?.map(|w| WitnessRecord::Exchange {
                criterion,
                r: f(a),
                e: f(w.e),
                s: f(w.s),
                t: f(w.t),
            })
        }
        Property::Utumi => utumi_witness(ring, a)?.map(|w| WitnessRecord::Utumi {
            x: f(a),
            y: f(w.y),
            n: w.n,
        }),
        Property::UtumiSymmetric => match utumi_witness(ring, a)? {
            None => None,
            Some(w) => {
                let chain = utumi_symmetry_verify(ring, a, w.y, w.n);
                let (Some(middle_index), Some(symmetric_index)) = (chain.middle_index, chain.symmetric_index)
                else {
                    return Err(Error::defect(format!("Utumi chain broken at x = {}", f(a))));
                };
                if !chain.holds() {
                    return Err(Error::defect(format!("Utumi chain broken at x = {}", f(a))));
                }
                Some(WitnessRecord::UtumiSymmetric {
                    x: f(a),
                    y: f(w.y),
                    n: w.n,
                    middle_index,
                    symmetric_index,
                })
            }
        },
        Property::Rnc => rnc_witness_brute(ring, a, Side::Left, minimize)?.map(|w| WitnessRecord::Rnc {
            a: f(a),
            e: f(w.e),
            s: f(w.s),
            side: w.side,
            k: w.k,
        }),
        Property::Drnc => drnc_witness_brute(ring, a, minimize)?.map(|w| WitnessRecord::Drnc {
            a: f(a),
            e: f(w.e),
            r: f(w.r),
            k: w.k,
            path: w.path,
            bound: w.bound,
        }),
        Property::Abelian => {
            if ring.mul(a, a) != a {
                return Err(Error::NotIdempotent(f(a)));
            }
            let central = ring.elements().all(|x| ring.mul(a, x) == ring.mul(x, a));
            central.then(|| WitnessRecord::Central { e: f(a) })
        }
    };
    Ok(rec)
}
