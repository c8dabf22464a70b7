//! Linear algebra over GF(p) for odd primes p.
//!
//! Entries are canonical representatives in `0..p`. Kernels come back
//! echelon-normalized: basis vectors are ordered by free column and scaled
//! so the first nonzero entry is 1.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

/// Trial-division primality check for the small moduli this crate uses.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if is_odd_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidModulus(p))
    }
}

/// Canonical representative of a signed integer mod p.
pub fn reduce_mod_p(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Multiplicative inverse mod prime p; `a` must be nonzero mod p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

/// A vector over Z/p with p a checked odd prime and entries in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ModPVector {
    p: u64,
    entries: Vec<u64>,
}

impl ModPVector {
    pub fn new(p: u64, entries: Vec<u64>) -> Result<Self> {
        require_odd_prime(p)?;
        if let Some(bad) = entries.iter().find(|&&e| e >= p) {
            return Err(Error::Validation(format!(
                "entry {bad} is not a canonical representative mod {p}"
            )));
        }
        Ok(Self { p, entries })
    }

    pub fn from_signed(p: u64, entries: &[i64]) -> Result<Self> {
        require_odd_prime(p)?;
        Ok(Self {
            p,
            entries: entries.iter().map(|&x| reduce_mod_p(x, p)).collect(),
        })
    }

    pub fn zero(p: u64, len: usize) -> Result<Self> {
        Self::new(p, vec![0; len])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Entrywise scaling by `c` mod p.
    pub fn scaled(&self, c: u64) -> Self {
        Self {
            p: self.p,
            entries: self.entries.iter().map(|&e| e * (c % self.p) % self.p).collect(),
        }
    }

    /// Concatenation; moduli must agree.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p, other.p));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self { p: self.p, entries })
    }

    /// Canonical integer lift with entries in `0..p`.
    pub fn lift(&self) -> Vec<i64> {
        self.entries.iter().map(|&e| e as i64).collect()
    }
}

impl std::fmt::Debug for ModPVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?} mod {})", self.entries, self.p)
    }
}

impl std::fmt::Display for ModPVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn to_gf<T: Scalar>(m: &Matrix<T>, p: u64) -> Result<Vec<Vec<u64>>> {
    let pi = T::from(p).ok_or(Error::ArithmeticOverflow)?;
    let mut grid = vec![vec![0u64; m.cols()]; m.rows()];
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let mut r = m[(i, j)] % pi;
            if r < T::zero() {
                r = r + pi;
            }
            grid[i][j] = r.to_u64().ok_or(Error::ArithmeticOverflow)?;
        }
    }
    Ok(grid)
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(grid: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| grid[i][c] != 0) else {
            continue;
        };
        grid.swap(r, pr);
        let inv = inv_mod(grid[r][c], p);
        for j in c..cols {
            grid[r][j] = grid[r][j] * inv % p;
        }
        for i in 0..rows {
            if i != r && grid[i][c] != 0 {
                let f = grid[i][c];
                for j in c..cols {
                    grid[i][j] = (grid[i][j] + (p - f) * grid[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{ v : (m mod p) v = 0 }`, echelon-normalized. Empty when the
/// kernel is trivial.
pub fn kernel_mod_p<T: Scalar>(m: &Matrix<T>, p: u64) -> Result<Vec<ModPVector>> {
    require_odd_prime(p)?;
    let cols = m.cols();
    let mut grid = to_gf(m, p)?;
    let pivots = rref(&mut grid, p);
    let mut basis = Vec::new();
    let mut pivot_of_row = pivots.iter().copied().enumerate();
    let mut pivot_row = vec![usize::MAX; cols];
    for (row, col) in pivot_of_row.by_ref() {
        pivot_row[col] = row;
    }
    for free in 0..cols {
        if pivot_row[free] != usize::MAX {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for col in 0..cols {
            let row = pivot_row[col];
            if row != usize::MAX {
                let coeff = grid[row][free];
                if coeff != 0 {
                    v[col] = p - coeff;
                }
            }
        }
        // leading entry 1
        if let Some(&lead) = v.iter().find(|&&e| e != 0) {
            if lead != 1 {
                let inv = inv_mod(lead, p);
                for e in v.iter_mut() {
                    *e = *e * inv % p;
                }
            }
        }
        basis.push(ModPVector { p, entries: v });
    }
    Ok(basis)
}

/// Rank of `m mod p`; rank + kernel dimension = cols.
pub fn rank_mod_p<T: Scalar>(m: &Matrix<T>, p: u64) -> Result<usize> {
    require_odd_prime(p)?;
    let mut grid = to_gf(m, p)?;
    Ok(rref(&mut grid, p).len())
}

/// Determinant over GF(p) by Gaussian elimination. Used as an independent
/// route against `det_integer` reduced mod p.
pub fn det_mod_p<T: Scalar>(m: &Matrix<T>, p: u64) -> Result<u64> {
    require_odd_prime(p)?;
    let n = m.require_square()?;
    let mut grid = to_gf(m, p)?;
    let mut det = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| grid[i][c] != 0) else {
            return Ok(0);
        };
        if pr != c {
            grid.swap(c, pr);
            det = (p - det) % p;
        }
        det = det * grid[c][c] % p;
        let inv = inv_mod(grid[c][c], p);
        for i in c + 1..n {
            if grid[i][c] != 0 {
                let f = grid[i][c] * inv % p;
                for j in c..n {
                    grid[i][j] = (grid[i][j] + (p - f) * grid[c][j]) % p;
                }
            }
        }
    }
    Ok(det)
}

/// Matrix-vector product over GF(p).
pub fn mul_mod_p<T: Scalar>(m: &Matrix<T>, v: &ModPVector) -> Result<ModPVector> {
    let p = v.p();
    if m.cols() != v.len() {
        return Err(Error::Dimension("matrix/vector shape mismatch".into()));
    }
    let grid = to_gf(m, p)?;
    let entries = grid
        .iter()
        .map(|row| row.iter().zip(v.entries()).map(|(&a, &b)| a * b % p).sum::<u64>() % p)
        .collect();
    Ok(ModPVector { p, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::det_integer;
    use crate::IntMatrix;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// Brute-force kernel oracle: try all p^cols vectors.
    pub(crate) fn brute_kernel(m: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
        let cols = m.cols();
        let total = (p as usize).pow(cols as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut v = vec![0u64; cols];
            let mut c = code;
            for e in v.iter_mut() {
                *e = (c % p as usize) as u64;
                c /= p as usize;
            }
            let ok = (0..m.rows()).all(|i| {
                let s: i64 = (0..cols).map(|j| m[(i, j)] * v[j] as i64).sum();
                s.rem_euclid(p as i64) == 0
            });
            if ok {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn primality() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            assert!(is_odd_prime(p));
        }
        for p in [0u64, 1, 2, 4, 9, 15, 21, 25] {
            assert!(!is_odd_prime(p));
        }
    }

    #[test]
    fn kernel_matches_exhaustive_check_mod_3() {
        // exhaustive check of all 9 vectors mod 3 gives span{(1,1)}
        let m = mat(&[vec![2, 1], vec![1, 2]]);
        let basis = kernel_mod_p(&m, 3).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].entries(), &[1, 1]);
        assert_eq!(brute_kernel(&m, 3).len(), 3); // 0, (1,1), (2,2)
    }

    #[test]
    fn kernel_trivial_for_invertible() {
        assert!(kernel_mod_p(&IntMatrix::identity(2), 5).unwrap().is_empty());
    }

    #[test]
    fn kernel_matches_exhaustive_check_mod_5() {
        // exhaustive check of all 25 vectors mod 5 gives span{(1,2)}
        let m = mat(&[vec![-2, 1], vec![1, 2]]);
        let basis = kernel_mod_p(&m, 5).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].entries(), &[1, 2]);
        let brute = brute_kernel(&m, 5);
        assert_eq!(brute.len(), 5);
        assert!(brute.contains(&vec![1, 2]));
    }

    #[test]
    fn composite_modulus_rejected() {
        let m = IntMatrix::identity(2);
        assert_eq!(kernel_mod_p(&m, 9), Err(Error::InvalidModulus(9)));
        assert_eq!(rank_mod_p(&m, 15), Err(Error::InvalidModulus(15)));
        assert!(ModPVector::new(4, vec![0]).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_mod_p(&IntMatrix::identity(4), 7).unwrap(), 4);
        assert_eq!(rank_mod_p(&IntMatrix::zeros(3, 3), 5).unwrap(), 0);
        // echelon by hand: rows are multiples of (1,1) mod 3
        assert_eq!(rank_mod_p(&mat(&[vec![2, 1], vec![1, 2]]), 3).unwrap(), 1);
    }

    #[test]
    fn rank_plus_nullity_and_kernel_membership() {
        let mut state = 7u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(12345);
            ((state >> 33) % 11) as i64 - 5
        };
        for p in [3u64, 5, 7] {
            for rows in 1..=4usize {
                for cols in 1..=4usize {
                    let m = IntMatrix::from_rows(
                        &(0..rows).map(|_| (0..cols).map(|_| next()).collect()).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    let rank = rank_mod_p(&m, p).unwrap();
                    let basis = kernel_mod_p(&m, p).unwrap();
                    assert_eq!(rank + basis.len(), cols);
                    for v in &basis {
                        assert!(mul_mod_p(&m, v).unwrap().is_zero());
                        assert_eq!(*v.entries().iter().find(|&&e| e != 0).unwrap(), 1);
                    }
                }
            }
        }
    }

    #[test]
    fn integer_det_agrees_with_gf_p_det() {
        let mut state = 99u64;
        let mut next = move || {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            ((state >> 33) % 9) as i64 - 4
        };
        for p in [3u64, 5, 7, 11] {
            for n in 1..=5usize {
                for _ in 0..20 {
                    let m = IntMatrix::from_rows(
                        &(0..n).map(|_| (0..n).map(|_| next()).collect()).collect::<Vec<_>>(),
                    )
                    .unwrap();
                    let d = det_integer(&m).unwrap();
                    assert_eq!(reduce_mod_p(d, p), det_mod_p(&m, p).unwrap());
                }
            }
        }
    }
}
