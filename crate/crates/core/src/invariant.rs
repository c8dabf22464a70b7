//! The coloured untying invariant cu(K, rho) and classification.
//!
//! A colouring of a knot with Seifert matrix M restricts, on the double
//! branched cover, to a mod-p characteristic vector v with
//! (M + M^T) v = 0 mod p. For the canonical integer lift v^ the number
//! w = v^T (M + M^T) v^ is divisible by p, and
//!
//!     cu(K, rho) = (w / p) mod p = 2 (v^T M v^) / p mod p.
//!
//! cu is invariant under surgery along +-1-framed unknots the colouring
//! kills, additive under connect-sum, stable under congruence and
//! S-equivalence stabilization of M, and antisymmetric under mirroring.
//! Connect-sums of n copies of the left (p,2)-torus knot realize the values
//! -n mod p, so cu separates the p classes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::modp::{self, inv_mod, ModPVector};
use crate::seifert::{self, Handedness, SeifertData};
use crate::IntMatrix;

/// A Seifert matrix together with an odd prime and a nonzero
/// characteristic vector: (M + M^T) v = 0 mod p, v != 0.
#[derive(Clone, Debug)]
pub struct ColouredSeifert {
    seifert: SeifertData,
    p: u64,
    v: ModPVector,
}

impl ColouredSeifert {
    pub fn new(seifert: SeifertData, p: u64, v: ModPVector) -> Result<Self> {
        modp::require_odd_prime(p)?;
        if v.p() != p {
            return Err(Error::ModulusMismatch(v.p(), p));
        }
        if v.len() != seifert.dim() {
            return Err(Error::Dimension(format!(
                "characteristic vector has length {}, matrix is {}x{}",
                v.len(),
                seifert.dim(),
                seifert.dim()
            )));
        }
        if v.is_zero() {
            return Err(Error::Validation(
                "characteristic vector is zero: the colouring is trivial".into(),
            ));
        }
        let b = seifert.symmetrized();
        if !modp::mul_mod_p(&b, &v)?.is_zero() {
            return Err(Error::Validation(
                "(M + M^T) v != 0 mod p: not a characteristic vector".into(),
            ));
        }
        Ok(Self { seifert, p, v })
    }

    pub fn seifert(&self) -> &SeifertData {
        &self.seifert
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn v(&self) -> &ModPVector {
        &self.v
    }
}

/// The cu value, an element of Z/p.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CuValue {
    pub p: u64,
    pub value: u64,
}

/// The reference colouring classification is measured against: the left
/// (p,2)-torus knot with its first echelon kernel vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ReferenceColouring {
    pub p: u64,
    pub v_ref: Vec<u64>,
}

/// Which of the p surgery classes a coloured knot belongs to: the class of
/// the n-fold connect-sum of the reference torus knot.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassLabel {
    pub p: u64,
    pub n: u64,
    /// Completeness of the classification is a theorem for p = 3, 5 and a
    /// conjecture for larger primes.
    pub conjectural: bool,
    pub reference: ReferenceColouring,
}

/// All nonzero vectors v with (M + M^T) v = 0 mod p, enumerated from the
/// echelon kernel basis in lexicographic coefficient order. Empty when the
/// knot is not p-colourable.
pub fn characteristic_vectors(s: &SeifertData, p: u64) -> Result<Vec<ModPVector>> {
    modp::require_odd_prime(p)?;
    let b = s.symmetrized();
    let basis = modp::kernel_mod_p(&b, p)?;
    let k = basis.len() as u32;
    let total = (p as usize)
        .checked_pow(k)
        .ok_or(Error::Validation(format!("kernel too large to enumerate: {p}^{k}")))?;
    let mut out = Vec::new();
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(basis.len());
        let mut c = code;
        for _ in 0..basis.len() {
            coeffs.push((c % p as usize) as u64);
            c /= p as usize;
        }
        let mut v = vec![0u64; s.dim()];
        for (coeff, vec) in coeffs.iter().zip(&basis) {
            for (j, &e) in vec.entries().iter().enumerate() {
                v[j] = (v[j] + coeff * e) % p;
            }
        }
        out.push(ModPVector::new(p, v)?);
    }
    Ok(out)
}

/// cu from raw parts, without the ColouredSeifert invariants. Used by the
/// band engine to track trace states whose vector may be zero (cu = 0).
pub(crate) fn cu_raw(matrix: &IntMatrix, v: &[i64], p: u64) -> Result<u64> {
    let b = matrix.symmetrized()?;
    let n = b.rows();
    debug_assert_eq!(v.len(), n);
    let mut w: i128 = 0;
    for i in 0..n {
        for j in 0..n {
            w += b[(i, j)] as i128 * v[i] as i128 * v[j] as i128;
        }
    }
    if w % p as i128 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "v^T (M + M^T) v = {w} is not divisible by p = {p}"
        )));
    }
    Ok((w / p as i128).rem_euclid(p as i128) as u64)
}

/// The coloured untying invariant of a coloured Seifert form.
pub fn cu(c: &ColouredSeifert) -> Result<CuValue> {
    let value = cu_raw(c.seifert().matrix(), &c.v().lift(), c.p())?;
    Ok(CuValue { p: c.p(), value })
}

/// cu of the connect-sum with concatenated characteristic vectors; equals
/// cu(a) + cu(b) mod p.
pub fn cu_additive(a: &ColouredSeifert, b: &ColouredSeifert) -> Result<CuValue> {
    if a.p() != b.p() {
        return Err(Error::ModulusMismatch(a.p(), b.p()));
    }
    let sum = seifert::connect_sum(a.seifert(), b.seifert());
    let v = a.v().concat(b.v())?;
    let joined = ColouredSeifert::new(sum, a.p(), v)?;
    let total = cu(&joined)?;
    debug_assert_eq!(
        total.value,
        (cu(a)?.value + cu(b)?.value) % a.p(),
        "cu failed to be additive"
    );
    Ok(total)
}

/// The pinned reference: left (p,2)-torus knot with the first echelon
/// kernel vector of its symmetrized matrix.
pub fn reference_torus(p: u64) -> Result<(SeifertData, ModPVector)> {
    let s = seifert::torus_2p(p, Handedness::Left)?;
    let basis = modp::kernel_mod_p(&s.symmetrized(), p)?;
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::InternalInconsistency("reference torus knot has no colouring".into()))?;
    Ok((s, v))
}

/// Classify a coloured knot into one of the p classes: n in 1..=p with
/// cu equal to n times the reference cu. Exact for p = 3, 5; flagged
/// conjectural otherwise.
pub fn classify(c: &ColouredSeifert) -> Result<ClassLabel> {
    let p = c.p();
    let (ref_s, ref_v) = reference_torus(p)?;
    let ref_cu = cu(&ColouredSeifert::new(ref_s, p, ref_v.clone())?)?;
    if ref_cu.value == 0 {
        return Err(Error::InternalInconsistency(
            "reference torus knot has cu = 0".into(),
        ));
    }
    let value = cu(c)?.value;
    let n0 = value * inv_mod(ref_cu.value, p) % p;
    Ok(ClassLabel {
        p,
        n: if n0 == 0 { p } else { n0 },
        conjectural: !matches!(p, 3 | 5),
        reference: ReferenceColouring {
            p,
            v_ref: ref_v.entries().to_vec(),
        },
    })
}

/// All (m, n) with |m|, |n| <= range such that S(m,n) is p-colourable,
/// i.e. 4mn = 1 mod p. Rows ordered m ascending then n ascending.
pub fn colorable_smn_table(p: u64, range: i64) -> Result<Vec<(i64, i64)>> {
    modp::require_odd_prime(p)?;
    let mut out = Vec::new();
    for m in -range..=range {
        for n in -range..=range {
            if (4 * m * n - 1).rem_euclid(p as i64) == 0 {
                out.push((m, n));
            }
        }
    }
    Ok(out)
}

/// One elementary S-equivalence enlargement of a Seifert matrix: two new
/// rows and columns in the standard stabilization shape, with free column
/// xi and corner entry x.
pub fn stabilize(s: &SeifertData, xi: &[i64], x: i64) -> Result<SeifertData> {
    let n = s.dim();
    if xi.len() != n {
        return Err(Error::Dimension("stabilization column length mismatch".into()));
    }
    let mut m = IntMatrix::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = s.matrix()[(i, j)];
        }
        m[(i, n)] = xi[i];
    }
    m[(n, n)] = x;
    m[(n, n + 1)] = 1;
    SeifertData::new(m, s.provenance())
}

/// Extend a characteristic vector across one stabilization: the two new
/// coordinates are 0 and -(xi . v) mod p, which keeps it in the kernel and
/// leaves cu unchanged.
pub fn extend_for_stabilization(v: &ModPVector, xi: &[i64]) -> Result<ModPVector> {
    let p = v.p();
    let dot: i64 = xi.iter().zip(v.lift()).map(|(&a, b)| a * b).sum();
    let tail = ModPVector::from_signed(p, &[0, -dot])?;
    v.concat(&tail)
}

/// Transport a coloured form through a unimodular congruence: M -> P^T M P
/// and v -> P^{-1} v mod p. cu is unchanged.
pub fn congruence_transport(c: &ColouredSeifert, p_mat: &IntMatrix) -> Result<ColouredSeifert> {
    let n = c.seifert().dim();
    if p_mat.rows() != n || p_mat.cols() != n {
        return Err(Error::Dimension("congruence matrix shape mismatch".into()));
    }
    let m2 = p_mat
        .transpose()
        .checked_mul(c.seifert().matrix())?
        .checked_mul(p_mat)?;
    let p = c.p();
    // invert P over GF(p) and apply to v
    let inv = invert_mod_p(p_mat, p)?;
    let v2 = modp::mul_mod_p(&inv, c.v())?;
    ColouredSeifert::new(SeifertData::new(m2, c.seifert().provenance())?, p, v2)
}

fn invert_mod_p(m: &IntMatrix, p: u64) -> Result<IntMatrix> {
    let n = m.require_square()?;
    // Gauss-Jordan on [m | I] over GF(p)
    let mut grid: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        modp::reduce_mod_p(m[(i, j)], p)
                    } else if j - n == i {
                        1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| grid[i][c] != 0) else {
            return Err(Error::Validation("matrix is singular mod p".into()));
        };
        grid.swap(c, pr);
        let inv = inv_mod(grid[c][c], p);
        for j in 0..2 * n {
            grid[c][j] = grid[c][j] * inv % p;
        }
        for i in 0..n {
            if i != c && grid[i][c] != 0 {
                let f = grid[i][c];
                for j in 0..2 * n {
                    grid[i][j] = (grid[i][j] + (p - f) * grid[c][j]) % p;
                }
            }
        }
    }
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = grid[i][n + j] as i64;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_braid;
    use crate::seifert::{connect_sum, mirror_seifert, seifert_from_braid, smn, torus_2p};

    fn coloured(s: SeifertData, p: u64, v: &[i64]) -> ColouredSeifert {
        let v = ModPVector::from_signed(p, v).unwrap();
        ColouredSeifert::new(s, p, v).unwrap()
    }

    /// Brute-force kernel oracle over all p^dim vectors.
    fn brute_kernel_vectors(b: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
        let dim = b.cols();
        let total = (p as usize).pow(dim as u32);
        let mut out = Vec::new();
        for code in 1..total {
            let mut v = vec![0u64; dim];
            let mut c = code;
            for e in v.iter_mut() {
                *e = (c % p as usize) as u64;
                c /= p as usize;
            }
            let ok = (0..dim).all(|i| {
                let s: i64 = (0..dim).map(|j| b[(i, j)] * v[j] as i64).sum();
                s.rem_euclid(p as i64) == 0
            });
            if ok {
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn characteristic_vectors_examples() {
        // exhaustive kernel check mod 3
        let vs = characteristic_vectors(&smn(1, 1), 3).unwrap();
        let got: Vec<&[u64]> = vs.iter().map(|v| v.entries()).collect();
        assert_eq!(got, vec![&[1u64, 1][..], &[2, 2][..]]);
        assert_eq!(
            brute_kernel_vectors(&smn(1, 1).symmetrized(), 3),
            vec![vec![1, 1], vec![2, 2]]
        );

        // det(M + M^T) = 3, not divisible by 5
        assert!(characteristic_vectors(&smn(1, 1), 5).unwrap().is_empty());

        // all nonzero kernel vectors of the (5,2)-torus are multiples of (1,3,3,1)
        let t5 = torus_2p(5, Handedness::Left).unwrap();
        let vs = characteristic_vectors(&t5, 5).unwrap();
        assert_eq!(vs.len(), 4);
        let base = ModPVector::new(5, vec![1, 3, 3, 1]).unwrap();
        for v in &vs {
            let c = v.entries()[0];
            assert_eq!(v, &base.scaled(c));
        }
        assert_eq!(brute_kernel_vectors(&t5.symmetrized(), 5).len(), 4);
    }

    #[test]
    fn cu_frozen_examples() {
        // w = (1,1) [[2,1],[1,2]] (1,1)^T = 6, 6/3 = 2
        let c = coloured(smn(1, 1), 3, &[1, 1]);
        assert_eq!(cu(&c).unwrap().value, 2);
        // w = 10, 10/5 = 2
        let c = coloured(smn(-1, 1), 5, &[1, 2]);
        assert_eq!(cu(&c).unwrap().value, 2);
        // w = 70, 70/5 = 14 = 4 mod 5
        let c = coloured(torus_2p(5, Handedness::Left).unwrap(), 5, &[1, 3, 3, 1]);
        assert_eq!(cu(&c).unwrap().value, 4);
    }

    #[test]
    fn cu_equals_twice_seifert_form_over_p() {
        // 2 (v^T M v) / p mod p is the same number, exactly
        for (s, p, v) in [
            (smn(1, 1), 3u64, vec![1i64, 1]),
            (smn(-1, 1), 5, vec![1, 2]),
            (smn(2, 2), 5, vec![1, 1]),
        ] {
            let m = s.matrix();
            let mut quad: i64 = 0;
            for i in 0..2 {
                for j in 0..2 {
                    quad += m[(i, j)] * v[i] * v[j];
                }
            }
            let direct = ((2 * quad) / p as i64).rem_euclid(p as i64) as u64;
            let c = coloured(s, p, &v);
            assert_eq!(cu(&c).unwrap().value, direct);
        }
    }

    #[test]
    fn cu_additivity_examples() {
        let a = coloured(smn(1, 1), 3, &[1, 1]);
        let two = cu_additive(&a, &a).unwrap();
        assert_eq!(two.value, 1); // 2 + 2 = 4 = 1 mod 3
        let b = coloured(connect_sum(a.seifert(), a.seifert()), 3, &[1, 1, 1, 1]);
        let three = cu_additive(&b, &a).unwrap();
        assert_eq!(three.value, 0); // 6 = 0 mod 3
    }

    #[test]
    fn cu_additive_rejects_modulus_mismatch() {
        let a = coloured(smn(1, 1), 3, &[1, 1]);
        let b = coloured(smn(-1, 1), 5, &[1, 2]);
        assert!(matches!(cu_additive(&a, &b), Err(Error::ModulusMismatch(3, 5))));
    }

    #[test]
    fn reference_cu_is_minus_one() {
        for p in [3u64, 5, 7, 11] {
            let (s, v) = reference_torus(p).unwrap();
            let c = ColouredSeifert::new(s, p, v).unwrap();
            assert_eq!(cu(&c).unwrap().value, p - 1);
        }
    }

    #[test]
    fn classify_examples() {
        // the reference classifies as itself
        let c = coloured(smn(1, 1), 3, &[1, 1]);
        let label = classify(&c).unwrap();
        assert_eq!(label.n, 1);
        assert!(!label.conjectural);

        // trefoil # trefoil lands in class 2 by additivity
        let sum = connect_sum(c.seifert(), c.seifert());
        let c2 = coloured(sum, 3, &[1, 1, 1, 1]);
        assert_eq!(classify(&c2).unwrap().n, 2);

        // five-fold sum of the (5,2)-torus lands in class 5 (cu = 0)
        let t5 = torus_2p(5, Handedness::Left).unwrap();
        let mut acc = t5.clone();
        let mut v = vec![1i64, 3, 3, 1];
        for _ in 0..4 {
            acc = connect_sum(&acc, &t5);
            v.extend_from_slice(&[1, 3, 3, 1]);
        }
        let c5 = coloured(acc, 5, &v);
        assert_eq!(cu(&c5).unwrap().value, 0);
        assert_eq!(classify(&c5).unwrap().n, 5);

        // p = 7 is flagged conjectural
        let t7 = torus_2p(7, Handedness::Left).unwrap();
        let vs = characteristic_vectors(&t7, 7).unwrap();
        let c7 = ColouredSeifert::new(t7, 7, vs[0].clone()).unwrap();
        assert!(classify(&c7).unwrap().conjectural);
    }

    #[test]
    fn classify_rejects_uncolourable() {
        // S(1,1) has no 5-colouring at all, so no ColouredSeifert exists
        let v = ModPVector::from_signed(5, &[1, 1]).unwrap();
        assert!(ColouredSeifert::new(smn(1, 1), 5, v).is_err());
    }

    #[test]
    fn smn_table_examples() {
        assert_eq!(colorable_smn_table(3, 1).unwrap(), vec![(-1, -1), (1, 1)]);
        let t5 = colorable_smn_table(5, 2).unwrap();
        assert_eq!(t5, vec![(-2, -2), (-1, 1), (1, -1), (2, 2)]);
        for n in -5..=5 {
            assert!(!colorable_smn_table(3, 5).unwrap().contains(&(0, n)));
        }
    }

    #[test]
    fn lift_independence() {
        // replacing the lift v^ by v^ + p w leaves cu unchanged
        let s = smn(-1, 1);
        let p = 5u64;
        let base = [1i64, 2];
        let expect = cu_raw(s.matrix(), &base, p).unwrap();
        for w0 in -3i64..=3 {
            for w1 in -3i64..=3 {
                let lifted = [base[0] + p as i64 * w0, base[1] + p as i64 * w1];
                assert_eq!(cu_raw(s.matrix(), &lifted, p).unwrap(), expect);
            }
        }
    }

    #[test]
    fn scaling_law() {
        // cu(c v) = c^2 cu(v) for every c in GF(p)*
        for p in [3u64, 5, 7] {
            let (s, v) = if p == 3 {
                (smn(1, 1), ModPVector::from_signed(3, &[1, 1]).unwrap())
            } else {
                let (s, v) = reference_torus(p).unwrap();
                (s, v)
            };
            let c0 = ColouredSeifert::new(s.clone(), p, v.clone()).unwrap();
            let base = cu(&c0).unwrap().value;
            for c in 1..p {
                let scaled = ColouredSeifert::new(s.clone(), p, v.scaled(c)).unwrap();
                assert_eq!(cu(&scaled).unwrap().value, c * c % p * base % p);
            }
        }
    }

    #[test]
    fn mirror_antisymmetry() {
        let cases: Vec<(SeifertData, u64, Vec<i64>)> = vec![
            (smn(1, 1), 3, vec![1, 1]),
            (smn(-1, 1), 5, vec![1, 2]),
            (torus_2p(7, Handedness::Left).unwrap(), 7, vec![1, 5, 3, 3, 5, 1]),
        ];
        for (s, p, v) in cases {
            let c = coloured(s.clone(), p, &v);
            let m = coloured(mirror_seifert(&s), p, &v);
            assert_eq!((cu(&c).unwrap().value + cu(&m).unwrap().value) % p, 0);
        }
    }

    #[test]
    fn stabilization_invariance() {
        let s = smn(1, 1);
        let p = 3u64;
        let v = ModPVector::from_signed(p, &[1, 1]).unwrap();
        let base = cu(&ColouredSeifert::new(s.clone(), p, v.clone()).unwrap()).unwrap();
        for xi in [[0i64, 0], [3, 0], [1, 2], [-2, 4]] {
            for x in -2i64..=2 {
                let big = stabilize(&s, &xi, x).unwrap();
                let v2 = extend_for_stabilization(&v, &xi).unwrap();
                let c2 = ColouredSeifert::new(big, p, v2).unwrap();
                assert_eq!(cu(&c2).unwrap().value, base.value);
            }
        }
    }

    #[test]
    fn congruence_stability_small() {
        let c = coloured(smn(-1, 1), 5, &[1, 2]);
        let base = cu(&c).unwrap().value;
        let ps = [
            IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap(),
            IntMatrix::from_rows(&[vec![1, 0], vec![-2, 1]]).unwrap(),
            IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap(),
        ];
        for p_mat in &ps {
            let moved = congruence_transport(&c, p_mat).unwrap();
            assert_eq!(cu(&moved).unwrap().value, base);
        }
    }

    #[test]
    fn separation_of_reference_powers() {
        // cu of the n-fold connect-sum of the reference takes n distinct
        // values as n = 1..p
        for p in [3u64, 5, 7, 11] {
            let (t, v) = reference_torus(p).unwrap();
            let mut acc = t.clone();
            let mut vv = v.clone();
            let mut seen = Vec::new();
            for n in 1..=p {
                let c = ColouredSeifert::new(acc.clone(), p, vv.clone()).unwrap();
                let value = cu(&c).unwrap().value;
                assert_eq!(value, (p - n % p) % p);
                assert!(!seen.contains(&value));
                seen.push(value);
                acc = connect_sum(&acc, &t);
                vv = vv.concat(&v).unwrap();
            }
        }
    }

    #[test]
    fn braid_derived_classification() {
        // the all-positive (p,2)-braids classify as the reference itself
        let s = seifert_from_braid(&parse_braid("1 1 1").unwrap()).unwrap();
        let vs = characteristic_vectors(&s, 3).unwrap();
        let c = ColouredSeifert::new(s, 3, vs[0].clone()).unwrap();
        assert_eq!(classify(&c).unwrap().n, 1);

        let s = seifert_from_braid(&parse_braid("1 1 1 1 1").unwrap()).unwrap();
        let vs = characteristic_vectors(&s, 5).unwrap();
        // the orbit matching the reference gives n = 1; its square-scaled
        // partner gives n = 4
        let mut ns: Vec<u64> = vs
            .iter()
            .map(|v| {
                let c = ColouredSeifert::new(
                    seifert_from_braid(&parse_braid("1 1 1 1 1").unwrap()).unwrap(),
                    5,
                    v.clone(),
                )
                .unwrap();
                classify(&c).unwrap().n
            })
            .collect();
        ns.sort_unstable();
        ns.dedup();
        assert_eq!(ns, vec![1, 4]);
    }
}
