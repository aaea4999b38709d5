//! Realized finite rings with exact arithmetic and canonical enumeration.
//!
//! Every realized ring numbers its elements `0..size` in canonical order:
//! residues ascending, matrices row-major lexicographic, products
//! lexicographic by component, subrings by the order of the ambient ring
//! and cosets by their minimal representative. Index 0 is always zero.
//! Arithmetic is carried out on these indices.

pub mod ideal;
mod special;
pub mod spec;
mod arith;

use std::collections::HashSet;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use smallvec::SmallVec;

use crate::error::{Error, Result};
pub use spec::{ElementLiteral, RingSpec};
pub use special::{special_sets, SpecialSets};

/// Default cap for rings handled element by element.
pub const DEFAULT_MAX_SIZE: u64 = 1 << 16;
/// Default cap for whole-ring, quadratic-cost operations.
pub const DEFAULT_MAX_CLASSIFY_SIZE: u64 = 1 << 12;

const NONE: u32 = u32::MAX;

static NEXT_RING_ID: AtomicU32 = AtomicU32::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingId(u32);

/// A ring element: a position in the canonical order of its ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    ring: RingId,
    index: u32,
}

impl Element {
    pub fn ring_id(self) -> RingId {
        self.ring
    }

    /// Position in the canonical order.
    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_size: u64,
    pub max_classify_size: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_size: DEFAULT_MAX_SIZE,
            max_classify_size: DEFAULT_MAX_CLASSIFY_SIZE,
        }
    }
}

/// Decoded value of an element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Residue(u64),
    Matrix { n: usize, entries: Vec<Value> },
    Tuple(Vec<Value>),
}

/// Shared handle to a realized ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

struct RingData {
    id: RingId,
    spec: RingSpec,
    size: u32,
    one: u32,
    limits: Limits,
    kind: Kind,
    idempotents: OnceLock<Vec<u32>>,
    inverses: OnceLock<Vec<u32>>,
    nil_indices: OnceLock<Vec<u32>>,
}

enum Kind {
    Zm {
        modulus: u64,
    },
    Matrix {
        n: usize,
        base: Ring,
        /// Set when the base is `Zm`, enabling direct integer arithmetic.
        modulus: Option<u64>,
    },
    Product {
        parts: Vec<Ring>,
    },
    /// Corner rings and centers: a subset of the base closed under the
    /// operations, with its own identity.
    Sub {
        base: Ring,
        members: Vec<u32>,
        identity: u32,
    },
    Quotient {
        base: Ring,
        reps: Vec<u32>,
        coset: Vec<u32>,
        ideal: Vec<u32>,
    },
}

type Digits = SmallVec<[u32; 16]>;

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("spec", &self.0.spec.to_string())
            .field("size", &self.0.size)
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Ring {}

fn size_check(size: u128, limits: &Limits) -> Result<u32> {
    let cap = limits.max_size.min(u64::from(u32::MAX - 1));
    if size > u128::from(cap) {
        return Err(Error::SizeExceeded {
            size,
            max_size: limits.max_size,
        });
    }
    Ok(size as u32)
}

impl Ring {
    /// Builds a ring from its description, failing if it exceeds `limits.max_size`.
    pub fn realize(spec: &RingSpec, limits: Limits) -> Result<Ring> {
        spec.validate().map_err(Error::Malformed)?;
        match spec {
            RingSpec::Zm(m) => {
                let size = size_check(u128::from(*m), &limits)?;
                Ok(Ring::from_parts(spec.clone(), size, limits, Kind::Zm { modulus: *m }))
            }
            RingSpec::Matrix(n, base_spec) => {
                let base = Ring::realize(base_spec, limits)?;
                let size = (n * n)
                    .try_into()
                    .ok()
                    .and_then(|e: u32| u128::from(base.size()).checked_pow(e))
                    .unwrap_or(u128::MAX);
                let size = size_check(size, &limits)?;
                let modulus = match base.0.kind {
                    Kind::Zm { modulus } => Some(modulus),
                    _ => None,
                };
                Ok(Ring::from_parts(
                    spec.clone(),
                    size,
                    limits,
                    Kind::Matrix { n: *n, base, modulus },
                ))
            }
            RingSpec::Product(part_specs) => {
                let parts = part_specs
                    .iter()
                    .map(|s| Ring::realize(s, limits))
                    .collect::<Result<Vec<_>>>()?;
                let size = parts
                    .iter()
                    .try_fold(1u128, |acc, p| acc.checked_mul(u128::from(p.size())))
                    .unwrap_or(u128::MAX);
                let size = size_check(size, &limits)?;
                Ok(Ring::from_parts(spec.clone(), size, limits, Kind::Product { parts }))
            }
            RingSpec::Corner(base_spec, lit) => {
                let base = Ring::realize(base_spec, limits)?;
                let e = base.from_literal(lit)?;
                Ring::build_corner(&base, e, spec.clone())
            }
            RingSpec::Center(base_spec) => {
                let base = Ring::realize(base_spec, limits)?;
                Ring::build_center(&base, spec.clone())
            }
            RingSpec::Quotient(base_spec, gens) => {
                let base = Ring::realize(base_spec, limits)?;
                let gens = gens
                    .iter()
                    .map(|g| base.from_literal(g))
                    .collect::<Result<Vec<_>>>()?;
                let ideal = ideal::ideal_generated(&base, &gens)?;
                Ring::build_quotient(&base, ideal.member_indices(), spec.clone())
            }
        }
    }

    fn from_parts(spec: RingSpec, size: u32, limits: Limits, kind: Kind) -> Ring {
        let mut data = RingData {
            id: RingId(NEXT_RING_ID.fetch_add(1, Ordering::Relaxed)),
            spec,
            size,
            one: 0,
            limits,
            kind,
            idempotents: OnceLock::new(),
            inverses: OnceLock::new(),
            nil_indices: OnceLock::new(),
        };
        data.one = data.compute_one();
        Ring(Arc::new(data))
    }

    pub(crate) fn build_corner(base: &Ring, e: Element, spec: RingSpec) -> Result<Ring> {
        let e = base.check(e)?;
        if base.mul_idx(e, e) != e {
            return Err(Error::InvalidCornerIdempotent(base.format_idx(e)));
        }
        if e == 0 {
            return Err(Error::ZeroCorner);
        }
        let mut members: Vec<u32> = (0..base.0.size)
            .map(|r| base.mul_idx(base.mul_idx(e, r), e))
            .collect();
        members.sort_unstable();
        members.dedup();
        let size = members.len() as u32;
        let ring = Ring::from_parts(
            spec,
            size,
            base.0.limits,
            Kind::Sub {
                base: base.clone(),
                members,
                identity: e,
            },
        );
        Ok(ring)
    }

    pub(crate) fn build_center(base: &Ring, spec: RingSpec) -> Result<Ring> {
        base.require_classify_size()?;
        let n = base.0.size;
        let members: Vec<u32> = (0..n)
            .into_par_iter()
            .filter(|&c| (0..n).all(|r| base.mul_idx(c, r) == base.mul_idx(r, c)))
            .collect();
        let size = members.len() as u32;
        Ok(Ring::from_parts(
            spec,
            size,
            base.0.limits,
            Kind::Sub {
                base: base.clone(),
                members,
                identity: base.one_idx(),
            },
        ))
    }

    /// Quotient by an ideal given as sorted base indices. Quotients of
    /// quotients are flattened onto the innermost base ring.
    pub(crate) fn build_quotient(base: &Ring, ideal_members: &[u32], spec: RingSpec) -> Result<Ring> {
        if let Kind::Quotient {
            base: root,
            reps,
            ideal: inner,
            ..
        } = &base.0.kind
        {
            let mut gens: Vec<Element> = inner.iter().map(|&i| root.element(i)).collect();
            gens.extend(ideal_members.iter().map(|&i| root.element(reps[i as usize])));
            let flat = ideal::ideal_generated(root, &gens)?;
            return Ring::build_quotient(root, flat.member_indices(), spec);
        }
        let n = base.0.size as usize;
        if ideal_members.len() == n {
            return Err(Error::ZeroRing);
        }
        let mut coset = vec![NONE; n];
        let mut reps = Vec::new();
        for x in 0..n as u32 {
            if coset[x as usize] != NONE {
                continue;
            }
            let q = reps.len() as u32;
            reps.push(x);
            for &i in ideal_members {
                coset[base.add_idx(x, i) as usize] = q;
            }
        }
        let size = reps.len() as u32;
        Ok(Ring::from_parts(
            spec,
            size,
            base.0.limits,
            Kind::Quotient {
                base: base.clone(),
                reps,
                coset,
                ideal: ideal_members.to_vec(),
            },
        ))
    }

    pub fn id(&self) -> RingId {
        self.0.id
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn limits(&self) -> Limits {
        self.0.limits
    }

    /// The underlying ring for corners, centers and quotients.
    pub fn base(&self) -> Option<&Ring> {
        match &self.0.kind {
            Kind::Sub { base, .. } | Kind::Quotient { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn components(&self) -> Option<&[Ring]> {
        match &self.0.kind {
            Kind::Product { parts } => Some(parts),
            _ => None,
        }
    }

    /// `(n, m)` when this is `Matrix(n, Zm)`.
    pub fn matrix_over_zm(&self) -> Option<(usize, u64)> {
        match &self.0.kind {
            Kind::Matrix {
                n,
                modulus: Some(m),
                ..
            } => Some((*n, *m)),
            _ => None,
        }
    }

    pub(crate) fn require_classify_size(&self) -> Result<()> {
        if u64::from(self.0.size) > self.0.limits.max_classify_size {
            return Err(Error::SizeExceeded {
                size: u128::from(self.0.size),
                max_size: self.0.limits.max_classify_size,
            });
        }
        Ok(())
    }

    pub(crate) fn within_classify_size(&self) -> bool {
        u64::from(self.0.size) <= self.0.limits.max_classify_size
    }

    // ---- elements -------------------------------------------------------

    pub fn element(&self, index: u32) -> Element {
        assert!(index < self.0.size, "index {index} out of range");
        Element {
            ring: self.0.id,
            index,
        }
    }

    pub fn zero(&self) -> Element {
        self.element(0)
    }

    pub fn one(&self) -> Element {
        self.element(self.0.one)
    }

    /// All elements in canonical order, starting with zero.
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> + '_ {
        let id = self.0.id;
        (0..self.0.size).map(move |index| Element { ring: id, index })
    }

    pub fn contains(&self, e: Element) -> bool {
        e.ring == self.0.id
    }

    pub(crate) fn check(&self, e: Element) -> Result<u32> {
        if e.ring != self.0.id {
            return Err(Error::RingMismatch);
        }
        Ok(e.index)
    }

    #[inline]
    pub(crate) fn idx(&self, e: Element) -> u32 {
        assert_eq!(e.ring, self.0.id, "element belongs to a different ring");
        e.index
    }

    #[inline]
    pub(crate) fn el(&self, index: u32) -> Element {
        Element {
            ring: self.0.id,
            index,
        }
    }

    // ---- arithmetic on elements ----------------------------------------
    //
    // The plain methods panic when handed an element of another ring; the
    // `try_` forms report `RingMismatch` instead.

    pub fn add(&self, a: Element, b: Element) -> Element {
        self.el(self.add_idx(self.idx(a), self.idx(b)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.el(self.sub_idx(self.idx(a), self.idx(b)))
    }

    pub fn neg(&self, a: Element) -> Element {
        self.el(self.neg_idx(self.idx(a)))
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.el(self.mul_idx(self.idx(a), self.idx(b)))
    }

    pub fn mul3(&self, a: Element, b: Element, c: Element) -> Element {
        self.mul(self.mul(a, b), c)
    }

    pub fn pow(&self, a: Element, k: u32) -> Element {
        self.el(self.pow_idx(self.idx(a), k))
    }

    pub fn try_add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.el(self.add_idx(self.check(a)?, self.check(b)?)))
    }

    pub fn try_sub(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.el(self.sub_idx(self.check(a)?, self.check(b)?)))
    }

    pub fn try_neg(&self, a: Element) -> Result<Element> {
        Ok(self.el(self.neg_idx(self.check(a)?)))
    }

    pub fn try_mul(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.el(self.mul_idx(self.check(a)?, self.check(b)?)))
    }

    /// `k · 1`.
    pub fn from_int(&self, k: u64) -> Element {
        self.el(self.int_idx(k))
    }

    // ---- index-level arithmetic ------------------------------------------

    pub(crate) fn one_idx(&self) -> u32 {
        self.0.one
    }

    pub(crate) fn add_idx(&self, a: u32, b: u32) -> u32 {
        match &self.0.kind {
            Kind::Zm { modulus } => ((u64::from(a) + u64::from(b)) % modulus) as u32,
            Kind::Matrix { base, modulus, .. } => {
                let bs = base.size();
                let (x, y) = (self.decode(a), self.decode(b));
                let sum: Digits = x
                    .iter()
                    .zip(&y)
                    .map(|(&p, &q)| match modulus {
                        Some(m) => ((u64::from(p) + u64::from(q)) % m) as u32,
                        None => base.add_idx(p, q),
                    })
                    .collect();
                encode(&sum, bs)
            }
            Kind::Product { parts } => {
                let (x, y) = (self.decode(a), self.decode(b));
                let sum: Digits = parts
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(p, (&s, &t))| p.add_idx(s, t))
                    .collect();
                self.encode_product(&sum)
            }
            Kind::Sub { base, members, .. } => {
                let s = base.add_idx(members[a as usize], members[b as usize]);
                sub_position(members, s)
            }
            Kind::Quotient {
                base, reps, coset, ..
            } => coset[base.add_idx(reps[a as usize], reps[b as usize]) as usize],
        }
    }

    pub(crate) fn neg_idx(&self, a: u32) -> u32 {
        match &self.0.kind {
            Kind::Zm { modulus } => ((modulus - u64::from(a)) % modulus) as u32,
            Kind::Matrix { base, .. } => {
                let x = self.decode(a);
                let neg: Digits = x.iter().map(|&p| base.neg_idx(p)).collect();
                encode(&neg, base.size())
            }
            Kind::Product { parts } => {
                let x = self.decode(a);
                let neg: Digits = parts.iter().zip(&x).map(|(p, &s)| p.neg_idx(s)).collect();
                self.encode_product(&neg)
            }
            Kind::Sub { base, members, .. } => {
                sub_position(members, base.neg_idx(members[a as usize]))
            }
            Kind::Quotient {
                base, reps, coset, ..
            } => coset[base.neg_idx(reps[a as usize]) as usize],
        }
    }

    pub(crate) fn sub_idx(&self, a: u32, b: u32) -> u32 {
        self.add_idx(a, self.neg_idx(b))
    }

    pub(crate) fn mul_idx(&self, a: u32, b: u32) -> u32 {
        match &self.0.kind {
            Kind::Zm { modulus } => ((u64::from(a) * u64::from(b)) % modulus) as u32,
            Kind::Matrix { n, base, modulus } => {
                let n = *n;
                let (x, y) = (self.decode(a), self.decode(b));
                let mut out: Digits = SmallVec::with_capacity(n * n);
                for i in 0..n {
                    for j in 0..n {
                        let entry = match modulus {
                            Some(m) => {
                                let mut acc = 0u64;
                                for k in 0..n {
                                    acc = (acc
                                        + u64::from(x[i * n + k]) * u64::from(y[k * n + j]))
                                        % m;
                                }
                                acc as u32
                            }
                            None => (0..n).fold(0, |acc, k| {
                                base.add_idx(acc, base.mul_idx(x[i * n + k], y[k * n + j]))
                            }),
                        };
                        out.push(entry);
                    }
                }
                encode(&out, base.size())
            }
            Kind::Product { parts } => {
                let (x, y) = (self.decode(a), self.decode(b));
                let prod: Digits = parts
                    .iter()
                    .zip(x.iter().zip(&y))
                    .map(|(p, (&s, &t))| p.mul_idx(s, t))
                    .collect();
                self.encode_product(&prod)
            }
            Kind::Sub { base, members, .. } => {
                sub_position(members, base.mul_idx(members[a as usize], members[b as usize]))
            }
            Kind::Quotient {
                base, reps, coset, ..
            } => coset[base.mul_idx(reps[a as usize], reps[b as usize]) as usize],
        }
    }

    pub(crate) fn pow_idx(&self, a: u32, mut k: u32) -> u32 {
        let mut result = self.0.one;
        let mut base = a;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_idx(result, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_idx(base, base);
            }
        }
        result
    }

    pub(crate) fn int_idx(&self, k: u64) -> u32 {
        if let Kind::Zm { modulus } = self.0.kind {
            return (k % modulus) as u32;
        }
        let mut result = 0;
        let mut addend = self.0.one;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.add_idx(result, addend);
            }
            k >>= 1;
            if k > 0 {
                addend = self.add_idx(addend, addend);
            }
        }
        result
    }

    /// Digits of a matrix (row-major entries) or product (components).
    pub(crate) fn decode(&self, a: u32) -> Digits {
        match &self.0.kind {
            Kind::Matrix { n, base, .. } => {
                let bs = base.size();
                let mut out: Digits = smallvec::smallvec![0; n * n];
                let mut rest = a;
                for slot in out.iter_mut().rev() {
                    *slot = rest % bs;
                    rest /= bs;
                }
                out
            }
            Kind::Product { parts } => {
                let mut out: Digits = smallvec::smallvec![0; parts.len()];
                let mut rest = a;
                for (slot, p) in out.iter_mut().zip(parts).rev() {
                    *slot = rest % p.size();
                    rest /= p.size();
                }
                out
            }
            _ => smallvec::smallvec![a],
        }
    }

    fn encode_product(&self, digits: &[u32]) -> u32 {
        match &self.0.kind {
            Kind::Product { parts } => parts
                .iter()
                .zip(digits)
                .fold(0, |acc, (p, &d)| acc * p.size() + d),
            _ => unreachable!("encode_product on a non-product ring"),
        }
    }

    /// Entries of a `Matrix(n, Zm)` element as residues.
    pub fn matrix_entries(&self, a: Element) -> Option<Vec<u64>> {
        match &self.0.kind {
            Kind::Matrix {
                modulus: Some(_), ..
            } => Some(self.decode(self.idx(a)).iter().map(|&d| u64::from(d)).collect()),
            _ => None,
        }
    }

    /// The `Matrix(n, Zm)` element with the given row-major residues.
    pub fn matrix_from_residues(&self, entries: &[u64]) -> Option<Element> {
        match &self.0.kind {
            Kind::Matrix {
                n,
                modulus: Some(m),
                ..
            } if entries.len() == n * n => {
                let digits: Digits = entries.iter().map(|&v| (v % m) as u32).collect();
                Some(self.el(encode(&digits, *m as u32)))
            }
            _ => None,
        }
    }

    /// The element of a product ring with the given components.
    pub fn tuple(&self, parts: &[Element]) -> Result<Element> {
        match &self.0.kind {
            Kind::Product { parts: rings } if rings.len() == parts.len() => {
                let digits = rings
                    .iter()
                    .zip(parts)
                    .map(|(r, &e)| r.check(e))
                    .collect::<Result<Digits>>()?;
                Ok(self.el(self.encode_product(&digits)))
            }
            _ => Err(Error::Precondition(format!(
                "{} is not a product with {} components",
                self.0.spec,
                parts.len()
            ))),
        }
    }

    /// Components of a product element.
    pub fn project(&self, a: Element) -> Option<Vec<Element>> {
        match &self.0.kind {
            Kind::Product { parts } => {
                let digits = self.decode(self.idx(a));
                Some(parts.iter().zip(&digits).map(|(p, &d)| p.el(d)).collect())
            }
            _ => None,
        }
    }

    /// The base-ring element represented by a corner, center or coset element.
    pub fn embed(&self, a: Element) -> Option<Element> {
        let i = self.idx(a);
        self.base().map(|b| b.el(self.embed_idx(i)))
    }

    pub(crate) fn embed_idx(&self, a: u32) -> u32 {
        match &self.0.kind {
            Kind::Sub { members, .. } => members[a as usize],
            Kind::Quotient { reps, .. } => reps[a as usize],
            _ => a,
        }
    }

    /// The coset of a base element, for quotient rings.
    pub fn coset_of(&self, x: Element) -> Option<Element> {
        match &self.0.kind {
            Kind::Quotient { base, coset, .. } => Some(self.el(coset[base.idx(x) as usize])),
            _ => None,
        }
    }

    /// The position of a base element inside a corner or center, if it lies there.
    pub fn restrict(&self, x: Element) -> Option<Element> {
        match &self.0.kind {
            Kind::Sub { base, members, .. } => {
                members.binary_search(&base.idx(x)).ok().map(|p| self.el(p as u32))
            }
            _ => None,
        }
    }

    // ---- values and literals -------------------------------------------

    pub fn value(&self, a: Element) -> Value {
        self.value_idx(self.idx(a))
    }

    fn value_idx(&self, a: u32) -> Value {
        match &self.0.kind {
            Kind::Zm { .. } => Value::Residue(u64::from(a)),
            Kind::Matrix { n, base, .. } => Value::Matrix {
                n: *n,
                entries: self.decode(a).iter().map(|&d| base.value_idx(d)).collect(),
            },
            Kind::Product { parts } => Value::Tuple(
                parts
                    .iter()
                    .zip(&self.decode(a))
                    .map(|(p, &d)| p.value_idx(d))
                    .collect(),
            ),
            Kind::Sub { base, members, .. } => base.value_idx(members[a as usize]),
            Kind::Quotient { base, reps, .. } => base.value_idx(reps[a as usize]),
        }
    }

    pub fn literal(&self, a: Element) -> ElementLiteral {
        self.literal_idx(self.idx(a))
    }

    fn literal_idx(&self, a: u32) -> ElementLiteral {
        match &self.0.kind {
            Kind::Zm { .. } => ElementLiteral::Int(u64::from(a)),
            Kind::Matrix { n, base, .. } => {
                let digits = self.decode(a);
                ElementLiteral::Matrix(
                    digits
                        .chunks(*n)
                        .map(|row| row.iter().map(|&d| base.literal_idx(d)).collect())
                        .collect(),
                )
            }
            Kind::Product { parts } => ElementLiteral::Tuple(
                parts
                    .iter()
                    .zip(&self.decode(a))
                    .map(|(p, &d)| p.literal_idx(d))
                    .collect(),
            ),
            Kind::Sub { base, members, .. } => base.literal_idx(members[a as usize]),
            Kind::Quotient { base, reps, .. } => base.literal_idx(reps[a as usize]),
        }
    }

    /// The element in DSL literal syntax.
    pub fn format(&self, a: Element) -> String {
        self.literal(a).to_string()
    }

    pub(crate) fn format_idx(&self, a: u32) -> String {
        self.literal_idx(a).to_string()
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let lit = crate::dsl::parse_element(text)?;
        self.from_literal(&lit)
    }

    pub fn from_literal(&self, lit: &ElementLiteral) -> Result<Element> {
        self.literal_to_idx(lit).map(|i| self.el(i))
    }

    fn literal_error(&self, lit: &ElementLiteral, reason: impl Into<String>) -> Error {
        Error::Literal {
            literal: lit.to_string(),
            ring: self.0.spec.to_string(),
            reason: reason.into(),
        }
    }

    fn literal_to_idx(&self, lit: &ElementLiteral) -> Result<u32> {
        if let ElementLiteral::Int(k) = lit {
            if !matches!(self.0.kind, Kind::Sub { .. } | Kind::Quotient { .. }) {
                return Ok(self.int_idx(*k));
            }
        }
        match (&self.0.kind, lit) {
            (Kind::Matrix { n, base, .. }, ElementLiteral::Matrix(rows)) => {
                if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                    return Err(self.literal_error(lit, format!("expected a {n}x{n} matrix")));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|e| base.literal_to_idx(e))
                    .collect::<Result<Digits>>()?;
                Ok(encode(&entries, base.size()))
            }
            (Kind::Product { parts }, ElementLiteral::Tuple(items)) => {
                if items.len() != parts.len() {
                    return Err(self.literal_error(
                        lit,
                        format!("expected a tuple with {} components", parts.len()),
                    ));
                }
                let digits = parts
                    .iter()
                    .zip(items)
                    .map(|(p, e)| p.literal_to_idx(e))
                    .collect::<Result<Digits>>()?;
                Ok(self.encode_product(&digits))
            }
            (Kind::Sub { base, members, .. }, _) => {
                let x = match lit {
                    ElementLiteral::Int(k) => return Ok(self.int_idx(*k)),
                    _ => base.literal_to_idx(lit)?,
                };
                members
                    .binary_search(&x)
                    .map(|p| p as u32)
                    .map_err(|_| self.literal_error(lit, "not a member of the subring"))
            }
            (Kind::Quotient { base, coset, .. }, _) => {
                let x = base.literal_to_idx(lit)?;
                Ok(coset[x as usize])
            }
            _ => Err(self.literal_error(lit, "literal shape does not match the ring")),
        }
    }

    // ---- cached element data -----------------------------------------------

    pub(crate) fn idempotent_indices(&self) -> &[u32] {
        self.0.idempotents.get_or_init(|| {
            (0..self.0.size)
                .into_par_iter()
                .filter(|&e| self.mul_idx(e, e) == e)
                .collect()
        })
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub(crate) fn inverse_idx(&self, a: u32) -> Option<u32> {
        if self.within_classify_size() {
            let table = self.0.inverses.get_or_init(|| self.inverse_table());
            let inv = table[a as usize];
            return (inv != NONE).then_some(inv);
        }
        self.compute_inverse(a)
    }

    fn inverse_table(&self) -> Vec<u32> {
        let n = self.0.size;
        match &self.0.kind {
            Kind::Sub { .. } | Kind::Quotient { .. } => {
                let one = self.0.one;
                let mut table = vec![NONE; n as usize];
                for a in 0..n {
                    if table[a as usize] != NONE {
                        continue;
                    }
                    if let Some(b) = (0..n).find(|&b| self.mul_idx(a, b) == one) {
                        table[a as usize] = b;
                        table[b as usize] = a;
                    }
                }
                table
            }
            _ => (0..n)
                .into_par_iter()
                .map(|a| self.compute_inverse(a).unwrap_or(NONE))
                .collect(),
        }
    }

    fn compute_inverse(&self, a: u32) -> Option<u32> {
        match &self.0.kind {
            Kind::Zm { modulus } => arith::mod_inverse(u64::from(a), *modulus).map(|v| v as u32),
            Kind::Matrix {
                n,
                modulus: Some(m),
                ..
            } => {
                let entries: Vec<u64> = self.decode(a).iter().map(|&d| u64::from(d)).collect();
                let inv = arith::matrix_inverse_mod(&entries, *n, *m)?;
                let digits: Digits = inv.iter().map(|&v| v as u32).collect();
                Some(encode(&digits, *m as u32))
            }
            Kind::Product { parts } => {
                let digits = self.decode(a);
                let inv = parts
                    .iter()
                    .zip(&digits)
                    .map(|(p, &d)| p.inverse_idx(d))
                    .collect::<Option<Digits>>()?;
                Some(self.encode_product(&inv))
            }
            _ => {
                let one = self.0.one;
                (0..self.0.size).find(|&b| self.mul_idx(a, b) == one)
            }
        }
    }

    /// Least `k` with `a^k = 0` (with `0^1 = 0`), or `None` when not nilpotent.
    pub(crate) fn nil_index_idx(&self, a: u32) -> Option<u32> {
        if self.within_classify_size() {
            let table = self.0.nil_indices.get_or_init(|| {
                (0..self.0.size)
                    .into_par_iter()
                    .map(|x| self.compute_nil_index(x).unwrap_or(0))
                    .collect()
            });
            let k = table[a as usize];
            return (k != 0).then_some(k);
        }
        self.compute_nil_index(a)
    }

    fn compute_nil_index(&self, a: u32) -> Option<u32> {
        let mut power = a;
        let mut seen = HashSet::new();
        for k in 1..=self.0.size {
            if power == 0 {
                return Some(k);
            }
            if !seen.insert(power) {
                return None;
            }
            power = self.mul_idx(power, a);
        }
        None
    }

    pub(crate) fn is_nilpotent_idx(&self, a: u32) -> bool {
        self.nil_index_idx(a).is_some()
    }
}

impl RingData {
    fn compute_one(&self) -> u32 {
        match &self.kind {
            Kind::Zm { .. } => 1,
            Kind::Matrix { n, base, .. } => {
                let mut digits: Digits = smallvec::smallvec![0; n * n];
                for i in 0..*n {
                    digits[i * n + i] = base.one_idx();
                }
                encode(&digits, base.size())
            }
            Kind::Product { parts } => parts.iter().fold(0, |acc, p| acc * p.size() + p.one_idx()),
            Kind::Sub {
                members, identity, ..
            } => sub_position(members, *identity),
            Kind::Quotient { base, coset, .. } => coset[base.one_idx() as usize],
        }
    }
}

#[inline]
fn encode(digits: &[u32], radix: u32) -> u32 {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

#[inline]
fn sub_position(members: &[u32], x: u32) -> u32 {
    members
        .binary_search(&x)
        .expect("subring is closed under the ring operations") as u32
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.spec)
    }
}

/// Realizes a ring from DSL text under default caps.
pub fn realize_str(text: &str) -> Result<Ring> {
    let spec = crate::dsl::parse_ring_spec(text)?;
    Ring::realize(&spec, Limits::default())
}
