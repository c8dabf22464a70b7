//! Exact integer linear algebra: fraction-free determinants and Smith
//! normal form. No floating point, no rounding; overflow is an error.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Scalar};

fn cm<T: Scalar>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or(Error::ArithmeticOverflow)
}

fn cs<T: Scalar>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::ArithmeticOverflow)
}

/// Exact determinant by Bareiss fraction-free elimination.
///
/// Every intermediate value is a minor of the input, so entries stay as
/// small as the mathematics allows without rational arithmetic. The empty
/// `0x0` matrix has determinant 1.
pub fn det_integer<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a: Vec<Vec<T>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = sign.checked_neg().ok_or(Error::ArithmeticOverflow)?;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = cs(cm(a[i][j], a[k][k])?, cm(a[i][k], a[k][j])?)?;
                // Bareiss guarantees exact divisibility by the previous pivot.
                debug_assert!((num % prev).is_zero());
                a[i][j] = num / prev;
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k];
    }
    cm(sign, a[n - 1][n - 1])
}

/// Invariant factors d1 | d2 | ... of an integer matrix, nonnegative, with
/// zeros trailing. The list has min(rows, cols) entries.
pub fn smith_normal_form<T: Scalar>(m: &Matrix<T>) -> Result<Vec<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let k = rows.min(cols);
    let mut t = 0usize;

    while t < k {
        // Pivot: nonzero entry of least magnitude in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..rows {
            if !a[i][t].is_zero() {
                let q = a[i][t] / a[t][t];
                for j in t..cols {
                    a[i][j] = cs(a[i][j], cm(q, a[t][j])?)?;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if !a[t][j].is_zero() {
                let q = a[t][j] / a[t][t];
                for row in a.iter_mut().take(rows).skip(t) {
                    row[j] = cs(row[j], cm(q, row[t])?)?;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue; // smaller remainders appeared; redo this pivot
        }

        // Divisibility: pivot must divide the rest of the block.
        let mut offender = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(a[i][j] % a[t][t]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            for j in t..cols {
                a[t][j] = a[t][j].checked_add(&a[i][j]).ok_or(Error::ArithmeticOverflow)?;
            }
            continue;
        }
        t += 1;
    }

    let mut d: Vec<T> = (0..k).map(|i| a[i][i].abs()).collect();
    // Sort zeros to the back; nonzero factors already divide in order.
    d.sort_by_key(|x| x.is_zero());
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntMatrix;

    /// Independent determinant oracle: cofactor expansion, exponential time.
    pub(crate) fn det_cofactor(m: &IntMatrix) -> i64 {
        let n = m.rows();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return m[(0, 0)];
        }
        let mut acc = 0i64;
        for j in 0..n {
            let sub = m.minor_matrix(0, j).unwrap();
            let term = m[(0, j)] * det_cofactor(&sub);
            acc += if j % 2 == 0 { term } else { -term };
        }
        acc
    }

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn det_2x2_by_hand() {
        // cofactor expansion by hand: 2*2 - 1*1 = 3
        assert_eq!(det_integer(&mat(&[vec![2, 1], vec![1, 2]])).unwrap(), 3);
    }

    #[test]
    fn det_identity() {
        assert_eq!(det_integer(&IntMatrix::identity(4)).unwrap(), 1);
    }

    #[test]
    fn det_smn_symmetrized_is_4mn_minus_1() {
        for m in -10i64..=10 {
            for n in -10i64..=10 {
                let a = mat(&[vec![2 * m, 1], vec![1, 2 * n]]);
                assert_eq!(det_integer(&a).unwrap(), 4 * m * n - 1);
            }
        }
    }

    #[test]
    fn det_nonsquare_rejected() {
        let a = IntMatrix::zeros(2, 3);
        assert!(matches!(det_integer(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn det_overflow_detected() {
        let a = mat(&[vec![i64::MAX, 1], vec![1, i64::MAX]]);
        assert_eq!(det_integer(&a), Err(Error::ArithmeticOverflow));
    }

    #[test]
    fn det_matches_cofactor_oracle_on_small_random() {
        // deterministic LCG so the test is reproducible
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 13) as i64 - 6
        };
        for n in 0..=5usize {
            for _ in 0..40 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let a = IntMatrix::from_rows(&rows).unwrap();
                assert_eq!(det_integer(&a).unwrap(), det_cofactor(&a));
            }
        }
    }

    #[test]
    fn snf_hand_reduced_examples() {
        // row/column reduction by hand
        assert_eq!(smith_normal_form(&mat(&[vec![2, 1], vec![1, 2]])).unwrap(), vec![1, 3]);
        assert_eq!(smith_normal_form(&mat(&[vec![4, 1], vec![1, 4]])).unwrap(), vec![1, 15]);
        assert_eq!(smith_normal_form(&IntMatrix::identity(3)).unwrap(), vec![1, 1, 1]);
        assert_eq!(smith_normal_form(&IntMatrix::zeros(2, 2)).unwrap(), vec![0, 0]);
    }

    #[test]
    fn snf_divisibility_chain_and_det_product() {
        let mut state = 0xdeadbeefu64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(99991);
            ((state >> 33) % 9) as i64 - 4
        };
        for n in 1..=4usize {
            for _ in 0..50 {
                let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| next()).collect()).collect();
                let a = IntMatrix::from_rows(&rows).unwrap();
                let d = smith_normal_form(&a).unwrap();
                for w in d.windows(2) {
                    if w[1] != 0 {
                        assert!(w[0] != 0 && w[1] % w[0] == 0, "chain broken: {d:?}");
                    }
                }
                let det = det_integer(&a).unwrap();
                if det != 0 {
                    let prod: i64 = d.iter().product();
                    assert_eq!(prod, det.abs());
                }
            }
        }
    }

    #[test]
    fn generic_scalar_also_works_with_i128() {
        let a = Matrix::<i128>::from_rows(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(det_integer(&a).unwrap(), 3i128);
    }
}
