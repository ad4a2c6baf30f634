//! Exact and numeric linear algebra for small dense matrices.
//!
//! Certification paths use fraction-free Gaussian elimination over the
//! integers (Bareiss), so kernel ranks are exact. The numeric eigenvalue
//! scan is a cyclic Jacobi sweep on a symmetric matrix.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Rank over the rationals of an integer matrix, by fraction-free
/// (Bareiss) elimination. Consumes the matrix.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev_pivot = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot_row = match (rank..rows).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => continue,
        };
        m.swap(rank, pivot_row);
        let pivot = m[rank][col].clone();
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &pivot * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev_pivot;
            }
            m[r][col] = BigInt::zero();
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}

/// Dimension over the rationals of the kernel of `(M - lambda*I)` for a
/// square integer matrix and a rational `lambda = a/b`: eliminates the
/// integer matrix `b*M - a*I`.
pub fn kernel_dim_shifted(m: &[i64], k: usize, lambda: &BigRational) -> usize {
    assert_eq!(m.len(), k * k);
    let a = lambda.numer();
    let b = lambda.denom();
    let mut shifted = Vec::with_capacity(k);
    for r in 0..k {
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let mut entry = BigInt::from(m[r * k + c]) * b;
            if r == c {
                entry -= a;
            }
            row.push(entry);
        }
        shifted.push(row);
    }
    k - integer_rank(shifted)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// sorted ascending. Panics if the sweep fails to converge.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    debug_assert!(a.iter().all(|row| row.len() == n));
    let scale: f64 = a
        .iter()
        .flat_map(|row| row.iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        .max(1.0);
    let tol = 1e-14 * scale;
    for _sweep in 0..100 {
        let mut off = 0.0f64;
        for r in 0..n {
            for c in r + 1..n {
                off += a[r][c].abs();
            }
        }
        if off <= tol * (n * n) as f64 {
            let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
            eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
            return eig;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() <= tol * 1e-3 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for i in 0..n {
                    let aip = a[i][p];
                    let aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[p][i];
                    let aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
            }
        }
    }
    panic!("jacobi sweep did not converge");
}

/// Rank over GF(2) of a matrix given as row bitmasks.
pub fn rank_gf2(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &row in rows {
        let mut v = row;
        for &b in &basis {
            let high = 63 - b.leading_zeros();
            if v >> high & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(integer_rank(big(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(big(&[&[1, 0], &[0, 1]])), 2);
        assert_eq!(integer_rank(big(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(
            integer_rank(big(&[&[2, 4, 6], &[1, 2, 3], &[3, 6, 9]])),
            1
        );
    }

    #[test]
    fn kernel_dim_of_shifted_matrix() {
        // M = [[0,0,2],[0,2,0],[1,0,1]] has spectrum {2, 2, -1}.
        let m = vec![0, 0, 2, 0, 2, 0, 1, 0, 1];
        let two = BigRational::from(BigInt::from(2));
        let minus_one = -BigRational::one();
        assert_eq!(kernel_dim_shifted(&m, 3, &two), 2);
        assert_eq!(kernel_dim_shifted(&m, 3, &minus_one), 1);
        let zero = BigRational::zero();
        assert_eq!(kernel_dim_shifted(&m, 3, &zero), 0);
    }

    #[test]
    fn jacobi_on_known_symmetric_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let eig = jacobi_eigenvalues(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((eig[0] - 1.0).abs() < 1e-10);
        assert!((eig[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn jacobi_trace_preserved() {
        let m = vec![
            vec![4.0, 1.0, 0.5],
            vec![1.0, -3.0, 2.0],
            vec![0.5, 2.0, 7.0],
        ];
        let eig = jacobi_eigenvalues(m);
        let sum: f64 = eig.iter().sum();
        assert!((sum - 8.0).abs() < 1e-9);
    }

    #[test]
    fn gf2_rank_examples() {
        assert_eq!(rank_gf2(&[0b01, 0b10]), 2);
        assert_eq!(rank_gf2(&[0b11, 0b11]), 1);
        assert_eq!(rank_gf2(&[0, 0]), 0);
        assert_eq!(rank_gf2(&[0b111, 0b011, 0b100]), 2);
    }
}
