//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Rank over Q of an integer matrix. Runs in `i64` and restarts in
/// arbitrary precision if an intermediate minor overflows.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    match bareiss_i64(rows.to_vec()) {
        Some(r) => r,
        None => {
            let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            rank_bigint(big)
        }
    }
}

fn bareiss_i64(mut a: Vec<Vec<i64>>) -> Option<usize> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i64;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| a[r][col] != 0) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col];
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col];
            for c in col + 1..ncols {
                let num = pivot.checked_mul(row[c])?.checked_sub(factor.checked_mul(prow[c])?)?;
                debug_assert_eq!(num % prev, 0);
                row[c] = num / prev;
            }
            row[col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

pub fn rank_bigint(mut a: Vec<Vec<BigInt>>) -> usize {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                // (pivot * x - 0) / prev
                for x in row.iter_mut().take(ncols).skip(col + 1) {
                    if !x.is_zero() {
                        *x = &pivot * &*x / &prev;
                    }
                }
                continue;
            }
            let factor = row[col].clone();
            for c in col + 1..ncols {
                row[c] = (&pivot * &row[c] - &factor * &prow[c]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        let pivot = a[k][k].clone();
        let (top, rest) = a.split_at_mut(k + 1);
        let prow = &top[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for c in k + 1..n {
                row[c] = (&pivot * &row[c] - &factor * &prow[c]) / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot;
    }
    if n == 0 {
        return BigInt::one();
    }
    let det = a[n - 1][n - 1].clone();
    if sign.is_negative() {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Rank over Q by plain rational Gaussian elimination.
    fn rank_oracle(rows: &[Vec<i64>]) -> usize {
        use num_rational::BigRational;
        let mut a: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
        let ncols = a.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][col].is_zero() {
                    let f = &a[r][col] / &a[rank][col];
                    let pivot_row = a[rank].clone();
                    for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_i64(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_i64(&[]), 0);
        assert_eq!(rank_i64(&[vec![1, 2], vec![2, 4]]), 1);
        // Koszul map (x, y) in degree 2: columns x*{x,y}, y*{x,y}; rows x^2, xy, y^2
        let koszul = vec![vec![1, 0, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 0, 1]];
        assert_eq!(rank_i64(&koszul), 3);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = vec![vec![big, 3, 1], vec![5, big, 7], vec![11, 13, big]];
        assert_eq!(rank_i64(&m), 3);
        let dep = vec![vec![big, big], vec![big, big]];
        assert_eq!(rank_i64(&dep), 1);
    }

    #[test]
    fn determinant_examples() {
        let m = |rows: &[&[i64]]| rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(determinant(m(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(m(&[&[1, 2], &[2, 4]])), BigInt::from(0));
    }

    proptest::proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 0..6)
        ) {
            proptest::prop_assert_eq!(rank_i64(&rows), rank_oracle(&rows));
        }
    }
}
