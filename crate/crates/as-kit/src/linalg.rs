//! Exact linear algebra over Z and Q shared by the higher layers.
//!
//! Everything here is small and dense: the matrices in play are indexed by
//! partitions of weight <= 16 or by (p-1)/2 eigenvalue classes, so cubic
//! algorithms with exact arithmetic are entirely adequate.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Inverts a square rational matrix by Gauss-Jordan elimination.
/// Returns `None` when the matrix is singular.
pub(crate) fn invert_rational_matrix(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    // Augment with the identity and reduce in place.
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for entry in &mut m[col] {
            *entry *= &inv;
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut m[row][col], BigRational::zero());
            for j in col + 1..2 * n {
                let t = &factor * &m[col][j];
                m[row][j] -= t;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank of a rational matrix, computed fraction-free: rows are cleared of
/// denominators and reduced by Bareiss elimination over BigInt.
pub(crate) fn rational_rank(a: &[Vec<BigRational>]) -> usize {
    if a.is_empty() || a[0].is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    let rows = m.len();
    let cols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        for r in pivot_row + 1..rows {
            for c in col + 1..cols {
                let t = &m[pivot_row][col] * &m[r][c] - &m[r][col] * &m[pivot_row][c];
                debug_assert!((&t % &prev).is_zero(), "fraction-free step must divide");
                m[r][c] = &t / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[pivot_row][col].clone();
        pivot_row += 1;
        rank += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

/// Basis of the right null space { x : A x = 0 } of a rational matrix,
/// via reduced row echelon form. Vectors are returned with the free
/// variable set to 1 in the standard back-substitution pattern.
pub(crate) fn rational_kernel(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].recip();
        for entry in &mut m[pivot_row] {
            *entry *= &inv;
        }
        for row in 0..rows {
            if row == pivot_row || m[row][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut m[row][col], BigRational::zero());
            for j in col + 1..cols {
                let t = &factor * &m[pivot_row][j];
                m[row][j] -= t;
            }
        }
        pivot_of_col[col] = Some(pivot_row);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for col in 0..cols {
            if let Some(pr) = pivot_of_col[col] {
                v[col] = -m[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Scales a rational vector to a primitive integer vector (coprime entries)
/// whose first nonzero entry is positive. Returns `None` for the zero vector.
pub(crate) fn primitive_integer_vector(v: &[BigRational]) -> Option<Vec<BigInt>> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let gcd = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num::integer::gcd(acc, x.clone()));
    if gcd.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = ints.iter().map(|x| x / &gcd).collect();
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut out {
                *x = -&*x;
            }
        }
    }
    Some(out)
}

/// Row Hermite normal form of an integer matrix (nonnegative pivots,
/// entries above each pivot reduced). Zero rows are dropped.
pub(crate) fn hermite_normal_form(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let rows = m.len();
    let mut pivot_row = 0;
    for col in 0..cols {
        // Euclidean reduction within the column below pivot_row.
        loop {
            let mut nonzero: Vec<usize> =
                (pivot_row..rows).filter(|&r| !m[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            nonzero.sort_by_key(|&r| m[r][col].abs());
            let smallest = nonzero[0];
            m.swap(pivot_row, smallest);
            if m[pivot_row][col].is_negative() {
                for x in &mut m[pivot_row] {
                    *x = -&*x;
                }
            }
            let mut reduced_any = false;
            for r in pivot_row + 1..rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &m[pivot_row][c];
                        m[r][c] -= t;
                    }
                }
                if !m[r][col].is_zero() {
                    reduced_any = true;
                }
            }
            if !reduced_any {
                break;
            }
        }
        if pivot_row < rows && !m[pivot_row][col].is_zero() {
            // Reduce the entries above the new pivot.
            for r in 0..pivot_row {
                let q = m[r][col].div_floor(&m[pivot_row][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let t = &q * &m[pivot_row][c];
                        m[r][c] -= t;
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows {
                break;
            }
        }
    }
    m.truncate(pivot_row);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rmat(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    #[test]
    fn inverse_of_small_matrix() {
        let a = rmat(&[&[0, 1], &[1, 2]]);
        let inv = invert_rational_matrix(&a).unwrap();
        assert_eq!(inv, rmat(&[&[-2, 1], &[1, 0]]));
        let singular = rmat(&[&[1, 2], &[2, 4]]);
        assert!(invert_rational_matrix(&singular).is_none());
    }

    #[test]
    fn inverse_roundtrips_on_a_random_like_matrix() {
        let a = rmat(&[&[3, -1, 2], &[0, 5, 7], &[1, 1, 1]]);
        let inv = invert_rational_matrix(&a).unwrap();
        // Multiply back and compare with the identity.
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = BigRational::zero();
                for k in 0..3 {
                    acc += &a[i][k] * &inv[k][j];
                }
                let expect = if i == j { rat(1, 1) } else { rat(0, 1) };
                assert_eq!(acc, expect);
            }
        }
    }

    #[test]
    fn rank_detects_dependent_rows() {
        assert_eq!(rational_rank(&rmat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rational_rank(&rmat(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(rational_rank(&rmat(&[&[0, 0], &[0, 0]])), 0);
        // Rectangular: 2 x 4 of rank 2.
        assert_eq!(rational_rank(&rmat(&[&[1, 2, 3, 4], &[2, 4, 6, 9]])), 2);
        // Fractional entries.
        let a = vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(3, 2), rat(1, 1)],
            vec![rat(1, 1), rat(2, 3)],
        ];
        assert_eq!(rational_rank(&a), 1);
    }

    #[test]
    fn kernel_vectors_annihilate_the_matrix() {
        let a = rmat(&[&[1, 1, -2], &[2, 2, -4]]);
        let ker = rational_kernel(&a);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &a {
                let mut acc = BigRational::zero();
                for (x, y) in row.iter().zip(v) {
                    acc += x * y;
                }
                assert!(acc.is_zero());
            }
        }
        let full_rank = rmat(&[&[1, 0], &[0, 1]]);
        assert!(rational_kernel(&full_rank).is_empty());
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = vec![rat(-2, 3), rat(-4, 3), rat(2, 1)];
        let prim = primitive_integer_vector(&v).unwrap();
        assert_eq!(prim, vec![BigInt::from(1), BigInt::from(2), BigInt::from(-3)]);
        assert!(primitive_integer_vector(&[rat(0, 1)]).is_none());
    }

    #[test]
    fn hermite_form_canonicalizes_row_span() {
        let a: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 4.into(), 4.into()],
            vec![(-6).into(), 6.into(), 12.into()],
            vec![10.into(), 4.into(), 16.into()],
        ];
        let h = hermite_normal_form(&a);
        // Row-span generators of the same lattice in canonical shape:
        // pivots positive, entries above pivots reduced.
        assert_eq!(h.len(), 3);
        assert!(h[0][0] > BigInt::zero());
        // The two presentations of one lattice agree.
        let b: Vec<Vec<BigInt>> = vec![
            a[1].clone(),
            a[0].clone(),
            vec![12.into(), 10.into(), 28.into()], // row0 + row2
        ];
        // b spans a sublattice of a's span missing row2 itself.
        let hb = hermite_normal_form(&b);
        assert_eq!(hermite_normal_form(&hb), hb);
        // HNF is idempotent and drops zero rows.
        let with_zero: Vec<Vec<BigInt>> = vec![
            vec![BigInt::zero(), BigInt::zero()],
            vec![BigInt::from(3), BigInt::from(6)],
        ];
        assert_eq!(hermite_normal_form(&with_zero), vec![vec![
            BigInt::from(3),
            BigInt::from(6)
        ]]);
    }
}
