//! Dense square matrices over `Z/mZ` and subspaces of `F_p^n` in reduced
//! row-echelon form.

use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; callers only pass nonzero residues of a prime modulus
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// An `n × n` matrix with entries in `Z/mZ`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    n: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zero(n: usize, modulus: u64) -> Self {
        ModMatrix {
            n,
            modulus,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = ModMatrix::zero(n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    /// Row-major entries, reduced modulo `modulus`.
    pub fn from_entries(n: usize, modulus: u64, entries: &[u64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Precondition(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(ModMatrix {
            n,
            modulus,
            data: entries.iter().map(|&v| v % modulus).collect(),
        })
    }

    /// Builds the matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<u64>], modulus: u64) -> Self {
        let n = cols.len();
        let mut m = ModMatrix::zero(n, modulus);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m.data[i * n + j] = v % modulus;
            }
        }
        m
    }

    /// Parses `rows` written as `a,b;c,d` (optionally bracketed).
    pub fn parse(text: &str, modulus: u64) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('[').trim_end_matches(']');
        let rows: Vec<Vec<u64>> = trimmed
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|v| {
                        v.trim().parse::<u64>().map_err(|_| {
                            Error::Precondition(format!("bad matrix entry `{}`", v.trim()))
                        })
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("matrix must be square".into()));
        }
        ModMatrix::from_entries(n, modulus, &rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        let (n, m) = (self.n, self.modulus);
        let mut out = ModMatrix::zero(n, m);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out.data[idx] = (out.data[idx] + a * other.data[k * n + j]) % m;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ModMatrix) -> ModMatrix {
        let m = self.modulus;
        ModMatrix {
            n: self.n,
            modulus: m,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + b) % m)
                .collect(),
        }
    }

    pub fn sub(&self, other: &ModMatrix) -> ModMatrix {
        let m = self.modulus;
        ModMatrix {
            n: self.n,
            modulus: m,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| (a + m - b) % m)
                .collect(),
        }
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let m = self.modulus;
        ModMatrix {
            n: self.n,
            modulus: m,
            data: self.data.iter().map(|&a| a * (c % m) % m).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ModMatrix {
        (0..k).fold(ModMatrix::identity(self.n, self.modulus), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let n = self.n;
        (0..n)
            .map(|i| (0..n).fold(0, |acc, j| (acc + self.data[i * n + j] * v[j]) % self.modulus))
            .collect()
    }

    /// Entrywise reduction to a smaller modulus dividing this one.
    pub fn reduce(&self, modulus: u64) -> ModMatrix {
        ModMatrix {
            n: self.n,
            modulus,
            data: self.data.iter().map(|&v| v % modulus).collect(),
        }
    }

    /// Reinterprets the entries (taken in `0..modulus`) in a larger modulus.
    pub fn lift(&self, modulus: u64) -> ModMatrix {
        ModMatrix {
            n: self.n,
            modulus,
            data: self.data.clone(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.data.chunks(self.n).map(<[u64]>::to_vec).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.get(i, j)).collect())
            .collect()
    }

    /// Least `k` with `self^k = 0`, searching up to `limit`.
    pub fn nilpotency_index(&self, limit: u32) -> Option<u32> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    /// Inverse over a prime field by Gauss–Jordan elimination.
    pub fn inverse_mod_prime(&self) -> Option<ModMatrix> {
        let (n, p) = (self.n, self.modulus);
        let mut aug: Vec<Vec<u64>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
            aug.swap(col, pivot);
            let inv = inv_mod_p(aug[col][col], p);
            for v in aug[col].iter_mut() {
                *v = *v * inv % p;
            }
            let pivot_row = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && row[col] != 0 {
                    let f = row[col];
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + p * p - f * y % p) % p;
                    }
                }
            }
        }
        let entries: Vec<u64> = aug.iter().flat_map(|row| row[n..].to_vec()).collect();
        ModMatrix::from_entries(n, p, &entries).ok()
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.data.chunks(self.n).enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            f.write_str(&cells.join(","))?;
        }
        f.write_str("]")
    }
}

/// Reduced row-echelon form of `rows` over `F_p`; returns the nonzero
/// rows and their pivot columns.
pub(crate) fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod_p(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v % p * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_multiple_of(p) {
                let f = row[col] % p;
                for (x, y) in row.iter_mut().zip(&pivot_row).take(width) {
                    *x = (*x % p + p - f * y % p) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Basis of `{ x : M x = 0 }` for an `m × c` matrix given by rows.
pub(crate) fn null_space(rows: Vec<Vec<u64>>, width: usize, p: u64) -> Vec<Vec<u64>> {
    let (reduced, pivots) = rref(rows, p);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![0u64; width];
            x[free] = 1;
            for (row, &pc) in reduced.iter().zip(&pivots) {
                x[pc] = (p - row[free] % p) % p;
            }
            x
        })
        .collect()
}

/// A subspace of `F_p^n`, stored as its canonical reduced-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    field_modulus: u64,
    basis: Vec<Vec<u64>>,
}

impl Subspace {
    pub fn zero(n: usize, p: u64) -> Self {
        Subspace {
            ambient_dim: n,
            field_modulus: p,
            basis: Vec::new(),
        }
    }

    pub fn full(n: usize, p: u64) -> Self {
        Subspace::span((0..n).map(|i| unit_vector(n, i)).collect(), n, p)
    }

    pub fn span(vectors: Vec<Vec<u64>>, n: usize, p: u64) -> Self {
        let vectors: Vec<Vec<u64>> = vectors.into_iter().filter(|v| v.len() == n).collect();
        let basis = if vectors.is_empty() {
            Vec::new()
        } else {
            rref(vectors, p).0
        };
        Subspace {
            ambient_dim: n,
            field_modulus: p,
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field_modulus(&self) -> u64 {
        self.field_modulus
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(rows, self.field_modulus).0.len() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(vs, self.ambient_dim, self.field_modulus)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let (n, p) = (self.ambient_dim, self.field_modulus);
        let (k, l) = (self.dim(), other.dim());
        if k == 0 || l == 0 {
            return Subspace::zero(n, p);
        }
        // kernel of [u_1 … u_k | -w_1 … -w_l]; each kernel vector (α, β)
        // yields the common vector Σ α_i u_i
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|u| u[i])
                    .chain(other.basis.iter().map(|w| (p - w[i]) % p))
                    .collect()
            })
            .collect();
        let common = null_space(rows, k + l, p)
            .into_iter()
            .map(|coeffs| {
                (0..n)
                    .map(|i| (0..k).fold(0, |acc, j| (acc + coeffs[j] * self.basis[j][i]) % p))
                    .collect()
            })
            .collect();
        Subspace::span(common, n, p)
    }

    /// A complement of `self` inside `outer`, extending greedily by the
    /// echelon basis vectors of `outer`.
    pub fn complement_in(&self, outer: &Subspace) -> Result<Subspace> {
        if !self.is_subspace_of(outer) {
            return Err(Error::Precondition(
                "complement_in: subspace is not contained in the outer space".into(),
            ));
        }
        Ok(self.extend_greedily(outer.basis.iter().cloned()))
    }

    /// A complement of `self` in `F_p^n`, extending greedily by standard
    /// basis vectors of lowest index.
    pub fn complement_to_full(&self) -> Subspace {
        let n = self.ambient_dim;
        self.extend_greedily((0..n).map(|i| unit_vector(n, i)))
    }

    fn extend_greedily(&self, candidates: impl Iterator<Item = Vec<u64>>) -> Subspace {
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for v in candidates {
            if !current.contains(&v) {
                current = current.sum(&Subspace::span(vec![v.clone()], self.ambient_dim, self.field_modulus));
                chosen.push(v);
            }
        }
        Subspace::span(chosen, self.ambient_dim, self.field_modulus)
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `ker a` over `F_p`.
pub fn kernel_basis(a: &ModMatrix, p: u64) -> Result<Subspace> {
    require_prime(p)?;
    let a = a.reduce(p);
    let n = a.dim();
    Ok(Subspace::span(null_space(a.rows(), n, p), n, p))
}

/// `im a` (the column space) over `F_p`.
pub fn image_basis(a: &ModMatrix, p: u64) -> Result<Subspace> {
    require_prime(p)?;
    let a = a.reduce(p);
    Ok(Subspace::span(a.columns(), a.dim(), p))
}

/// A solution of `a x = v` with free variables set to zero.
pub fn preimage(a: &ModMatrix, v: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = a.dim();
    let rows: Vec<Vec<u64>> = a
        .reduce(p)
        .rows()
        .into_iter()
        .zip(v)
        .map(|(mut row, &rhs)| {
            row.push(rhs % p);
            row
        })
        .collect();
    let (reduced, pivots) = rref(rows, p);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for (row, &pc) in reduced.iter().zip(&pivots) {
        x[pc] = row[n];
    }
    Some(x)
}
