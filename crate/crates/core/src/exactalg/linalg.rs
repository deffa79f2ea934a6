//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Rational rows are first scaled to primitive integer rows; rank and the
//! vanishing of the determinant are unaffected by row scaling.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Rational;

fn integer_rows(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, Rational) {
    let mut scale = Rational::one();
    let out = rows
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale /= Rational::from_integer(l.clone());
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    // det(original) = det(integer rows) * scale
    (out, scale)
}

/// Runs Bareiss elimination in place, returning the rank and the sign of
/// the row permutation used.
fn bareiss(m: &mut [Vec<BigInt>]) -> (usize, bool) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut odd_swaps = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            odd_swaps = !odd_swaps;
        }
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k];
                m[r][k] = v / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
    }
    (rank, odd_swaps)
}

/// Exact rank of a rational matrix given as rows.
pub fn rank_bareiss(rows: &[Vec<Rational>]) -> usize {
    let (mut m, _) = integer_rows(rows);
    bareiss(&mut m).0
}

/// Exact determinant of a square rational matrix.
pub fn det_bareiss(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(rows.iter().all(|r| r.len() == n), "square matrix required");
    let (mut m, scale) = integer_rows(rows);
    let (rank, odd) = bareiss(&mut m);
    if rank < n {
        return Rational::zero();
    }
    // Bareiss: the last pivot is the determinant of the permuted matrix.
    let mut det = Rational::from_integer(m[n - 1][n - 1].clone()) * scale;
    if odd {
        det = -det;
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn determinant_small() {
        assert_eq!(det_bareiss(&m(&[&[1, 2], &[3, 4]])), rat(-2));
        assert_eq!(det_bareiss(&m(&[&[0, 1], &[1, 0]])), rat(-1));
        assert_eq!(det_bareiss(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), rat(0));
        assert_eq!(det_bareiss(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), rat(6));
        let half = vec![vec![rat_frac(1, 2), rat(0)], vec![rat(0), rat_frac(2, 3)]];
        assert_eq!(det_bareiss(&half), rat_frac(1, 3));
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank_bareiss(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]])), 2);
        assert_eq!(rank_bareiss(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_bareiss(&m(&[&[1, 0], &[0, 1], &[1, 1]])), 2);
    }
}
