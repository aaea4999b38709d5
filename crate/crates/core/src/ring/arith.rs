//! Residue arithmetic helpers for `Zm` and `Matrix(n, Zm)`.

pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(i128::from(m)) as u64)
}

/// Determinant over `Z/mZ` by cofactor expansion along the first row.
pub(crate) fn det_mod(entries: &[u64], n: usize, m: u64) -> u64 {
    match n {
        0 => 1 % m,
        1 => entries[0] % m,
        2 => {
            let ad = (entries[0] * entries[3]) % m;
            let bc = (entries[1] * entries[2]) % m;
            (ad + m - bc) % m
        }
        _ => {
            let mut acc = 0u64;
            for col in 0..n {
                let minor = minor(entries, n, 0, col);
                let term = (entries[col] % m) * det_mod(&minor, n - 1, m) % m;
                acc = if col % 2 == 0 {
                    (acc + term) % m
                } else {
                    (acc + m - term) % m
                };
            }
            acc
        }
    }
}

fn minor(entries: &[u64], n: usize, row: usize, col: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity((n - 1) * (n - 1));
    for i in (0..n).filter(|&i| i != row) {
        for j in (0..n).filter(|&j| j != col) {
            out.push(entries[i * n + j]);
        }
    }
    out
}

/// Inverse over a commutative base: a matrix is invertible iff its
/// determinant is a unit, and then `A^{-1} = det(A)^{-1} adj(A)`.
pub(crate) fn matrix_inverse_mod(entries: &[u64], n: usize, m: u64) -> Option<Vec<u64>> {
    let det_inv = mod_inverse(det_mod(entries, n, m), m)?;
    if n == 1 {
        return Some(vec![det_inv]);
    }
    let mut inv = vec![0u64; n * n];
    for i in 0..n {
        for j in 0..n {
            // adj(A)[i][j] = (-1)^{i+j} det(minor(A, j, i))
            let cof = det_mod(&minor(entries, n, j, i), n - 1, m);
            let cof = if (i + j) % 2 == 0 { cof } else { (m - cof) % m };
            inv[i * n + j] = cof * det_inv % m;
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_m() {
        assert_eq!(mod_inverse(3, 4), Some(3));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(mod_inverse(5, 6), Some(5));
    }

    #[test]
    fn matrix_inverse_checks_out() {
        let a = [1, 2, 0, 1, 1, 3, 0, 0, 1];
        let inv = matrix_inverse_mod(&a, 3, 4).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let v: u64 = (0..3).map(|k| a[i * 3 + k] * inv[k * 3 + j]).sum::<u64>() % 4;
                assert_eq!(v, u64::from(i == j));
            }
        }
        assert!(matrix_inverse_mod(&[2, 0, 0, 1], 2, 4).is_none());
    }
}
