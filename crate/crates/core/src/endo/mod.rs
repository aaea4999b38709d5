//! Idempotents for matrix rings built from linear algebra: the
//! four-subspace projection over `F_p` and its lift to `Z/p²Z`.

mod fp;

pub use fp::{image_basis, is_prime, kernel_basis, preimage, ModMatrix, Subspace};

use crate::drnc::{finish_constructive, DrncPath, DrncWitness};
use crate::error::{Error, Result};
use crate::ring::{Element, Ring};
use fp::require_prime;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VsDecomposition {
    pub a: ModMatrix,
    /// `ker a ∩ im a`.
    pub v1: Subspace,
    /// Complement of `V1` in `im a`.
    pub v2: Subspace,
    /// Complement of `V1` in `ker a`.
    pub v3: Subspace,
    /// Complement of `ker a + im a` in the whole space.
    pub v4: Subspace,
    pub r: ModMatrix,
    pub e: ModMatrix,
}

impl VsDecomposition {
    /// `a(1-e)`, which squares to zero.
    pub fn defect(&self) -> ModMatrix {
        let n = self.a.dim();
        let p = self.a.modulus();
        self.a.mul(&ModMatrix::identity(n, p).sub(&self.e))
    }

    /// Re-derives every structural claim; returns the first failure.
    pub fn check(&self) -> std::result::Result<(), String> {
        let a = &self.a;
        let (n, p) = (a.dim(), a.modulus());
        let ker = kernel_basis(a, p).map_err(|e| e.to_string())?;
        let im = image_basis(a, p).map_err(|e| e.to_string())?;
        if ker.dim() + im.dim() != n {
            return Err("rank-nullity fails".into());
        }
        if self.v1 != ker.intersect(&im) {
            return Err("V1 is not ker a ∩ im a".into());
        }
        let direct = |u: &Subspace, w: &Subspace, target: &Subspace| {
            u.dim() + w.dim() == target.dim() && &u.sum(w) == target
        };
        if !direct(&self.v1, &self.v2, &im) {
            return Err("V1 ⊕ V2 != im a".into());
        }
        if !direct(&self.v1, &self.v3, &ker) {
            return Err("V1 ⊕ V3 != ker a".into());
        }
        let all = self.v1.sum(&self.v2).sum(&self.v3).sum(&self.v4);
        let dims = self.v1.dim() + self.v2.dim() + self.v3.dim() + self.v4.dim();
        if dims != n || all != Subspace::full(n, p) {
            return Err("V1 ⊕ V2 ⊕ V3 ⊕ V4 is not the whole space".into());
        }
        let ra = self.r.mul(a);
        let ara = a.mul(&ra);
        if ara != self.e {
            return Err("e != a·r·a".into());
        }
        if self.v2.basis().iter().any(|v| ara.apply(v) != *v) {
            return Err("a·r·a·v != v on B2".into());
        }
        if self.v4.basis().iter().any(|v| ra.apply(v).iter().any(|&x| x != 0)) {
            return Err("r·a·v != 0 on B4".into());
        }
        if self.e.mul(&self.e) != self.e {
            return Err("e is not idempotent".into());
        }
        let kills = |m: &ModMatrix, s: &Subspace| s.basis().iter().all(|v| m.apply(v).iter().all(|&x| x == 0));
        if !(kills(&self.e, &self.v1) && kills(&self.e, &self.v3) && kills(&self.e, &self.v4)) {
            return Err("e is not zero on V1 ⊕ V3 ⊕ V4".into());
        }
        let q = self.defect();
        if !(kills(&q, &self.v1) && kills(&q, &self.v2) && kills(&q, &self.v3)) {
            return Err("a(1-e) does not kill V1, V2 and V3".into());
        }
        if self.v4.basis().iter().any(|v| !im.contains(&q.apply(v))) {
            return Err("a(1-e) does not map V4 into V1 ⊕ V2".into());
        }
        if !q.mul(&q).is_zero() {
            return Err("(a(1-e))² != 0".into());
        }
        Ok(())
    }
}

/// Splits `F_p^n` into `V1..V4` for `a` and builds `r` so that `e = a r a`
/// projects onto `V2` along `V1 ⊕ V3 ⊕ V4`.
pub fn vs_idempotent(a: &ModMatrix, p: u64) -> Result<VsDecomposition> {
    require_prime(p)?;
    let a = a.reduce(p);
    let n = a.dim();
    let ker = kernel_basis(&a, p)?;
    let im = image_basis(&a, p)?;
    if ker.dim() + im.dim() != n {
        return Err(Error::defect("rank-nullity fails"));
    }
    let v1 = ker.intersect(&im);
    let v2 = v1.complement_in(&im)?;
    let v3 = v1.complement_in(&ker)?;
    let v4 = ker.sum(&im).complement_to_full();

    // r is prescribed on a·v for v in B2 ∪ B4 and zero on a complement
    let mut sources = Vec::new();
    let mut targets = Vec::new();
    for v in v2.basis() {
        let x = preimage(&a, v, p).ok_or_else(|| Error::defect("vector of im a has no preimage"))?;
        sources.push(a.apply(v));
        targets.push(x);
    }
    for v in v4.basis() {
        sources.push(a.apply(v));
        targets.push(vec![0; n]);
    }
    let spanned = Subspace::span(sources.clone(), n, p);
    if spanned.dim() != sources.len() {
        return Err(Error::defect("images of B2 ∪ B4 are dependent"));
    }
    for c in spanned.complement_to_full().basis() {
        sources.push(c.clone());
        targets.push(vec![0; n]);
    }
    let basis = ModMatrix::from_columns(&sources, p);
    let inv = basis
        .inverse_mod_prime()
        .ok_or_else(|| Error::defect("change of basis is singular"))?;
    let r = ModMatrix::from_columns(&targets, p).mul(&inv);
    let e = a.mul(&r).mul(&a);
    let d = VsDecomposition { a, v1, v2, v3, v4, r, e };
    d.check().map_err(Error::defect)?;
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftCertificate {
    /// Over `Z/p²Z`.
    pub a: ModMatrix,
    pub p: u64,
    /// The decomposition of `a mod p`.
    pub base: VsDecomposition,
    /// Canonical lift of the `F_p` inner element.
    pub r_hat: ModMatrix,
    /// `a r̂ a`, idempotent modulo `p`.
    pub e0: ModMatrix,
    /// `p·b = e0² - e0`.
    pub b: ModMatrix,
    pub e_prime: ModMatrix,
    /// `e' = a w a`.
    pub w: ModMatrix,
    /// Index of `a(1-e')`.
    pub index: u32,
}

impl LiftCertificate {
    pub fn check(&self) -> std::result::Result<(), String> {
        let (a, p) = (&self.a, self.p);
        let n = a.dim();
        let m = p * p;
        let one = ModMatrix::identity(n, m);
        let e0 = &self.e0;
        if *e0 != a.mul(&self.r_hat).mul(a) {
            return Err("e0 != a·r̂·a".into());
        }
        let eb = self.b.scale(p);
        if eb != e0.mul(e0).sub(e0) {
            return Err("p·b != e0² - e0".into());
        }
        if eb.mul(e0) != e0.mul(&eb) {
            return Err("p·b does not commute with e0".into());
        }
        let expected = e0.sub(&e0.mul(&eb).scale(2)).add(&eb);
        if self.e_prime != expected {
            return Err("e' != e0 - 2·e0·(p·b) + p·b".into());
        }
        if self.e_prime.mul(&self.e_prime) != self.e_prime {
            return Err("e' is not idempotent".into());
        }
        if a.mul(&self.w).mul(a) != self.e_prime {
            return Err("e' != a·w·a".into());
        }
        let q = a.mul(&one.sub(&self.e_prime));
        let q2 = q.mul(&q);
        if q2.entries().iter().any(|&v| v % p != 0) {
            return Err("(a(1-e'))² is not divisible by p".into());
        }
        if !q2.mul(&q2).is_zero() {
            return Err("(a(1-e'))⁴ != 0".into());
        }
        if q.nilpotency_index(4) != Some(self.index) {
            return Err("recorded index is wrong".into());
        }
        Ok(())
    }
}

/// Lifts the `F_p` idempotent of `a mod p` to an idempotent `e' ∈ aRa`
/// over `Z/p²Z` with `(a(1-e'))⁴ = 0`.
pub fn cr_lift(a: &ModMatrix, p: u64) -> Result<LiftCertificate> {
    require_prime(p)?;
    let m = p * p;
    let a = a.reduce(m);
    let n = a.dim();
    let base = vs_idempotent(&a, p)?;
    let r_hat = base.r.lift(m);
    let e0 = a.mul(&r_hat).mul(&a);
    let diff = e0.mul(&e0).sub(&e0);
    if diff.entries().iter().any(|&v| v % p != 0) {
        return Err(Error::defect("e0² - e0 is not divisible by p"));
    }
    let b = ModMatrix::from_entries(n, m, &diff.entries().iter().map(|&v| v / p).collect::<Vec<_>>())?;
    let eb = b.scale(p);
    let e_prime = e0.sub(&e0.mul(&eb).scale(2)).add(&eb);
    let raa = r_hat.mul(&a).mul(&a);
    let w1 = raa.mul(&r_hat).sub(&r_hat);
    let w = r_hat.sub(&raa.mul(&w1).scale(2)).add(&w1);
    let q = a.mul(&ModMatrix::identity(n, m).sub(&e_prime));
    let index = q
        .nilpotency_index(4)
        .ok_or_else(|| Error::defect("(a(1-e'))⁴ != 0"))?;
    let cert = LiftCertificate {
        a,
        p,
        base,
        r_hat,
        e0,
        b,
        e_prime,
        w,
        index,
    };
    cert.check().map_err(Error::defect)?;
    Ok(cert)
}

fn matrix_of(ring: &Ring, a: Element) -> Result<(usize, u64, ModMatrix)> {
    ring.check(a)?;
    let (n, m) = ring
        .matrix_over_zm()
        .ok_or_else(|| Error::Precondition(format!("{} is not a matrix ring over Z_m", ring.spec())))?;
    let entries = ring.matrix_entries(a).expect("matrix ring element");
    Ok((n, m, ModMatrix::from_entries(n, m, &entries)?))
}

fn element_of(ring: &Ring, m: &ModMatrix) -> Element {
    ring.matrix_from_residues(m.entries()).expect("matrix of the ring's shape")
}

/// D-RNC witness of index at most 2 for `a ∈ M_n(F_p)`.
pub fn drnc_from_vs(ring: &Ring, a: Element) -> Result<DrncWitness> {
    let (_, p, am) = matrix_of(ring, a)?;
    let d = vs_idempotent(&am, p)?;
    finish_constructive(ring, a, element_of(ring, &d.e), element_of(ring, &d.r), 2, DrncPath::EndoVs)
}

/// D-RNC witness of index at most 4 for `a ∈ M_n(Z/p²Z)`.
pub fn drnc_from_lift(ring: &Ring, a: Element) -> Result<DrncWitness> {
    let (_, m, am) = matrix_of(ring, a)?;
    let p = (1..=m).find(|p| p * p >= m).filter(|p| p * p == m && is_prime(*p));
    let p = p.ok_or_else(|| Error::Precondition(format!("modulus {m} is not the square of a prime")))?;
    let c = cr_lift(&am, p)?;
    finish_constructive(
        ring,
        a,
        element_of(ring, &c.e_prime),
        element_of(ring, &c.w),
        4,
        DrncPath::EndoLift,
    )
}
