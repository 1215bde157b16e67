//! Exact linear algebra over ℚ and a division-free characteristic
//! polynomial over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::Q;

pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form; returns the nonzero rows and their pivot
/// columns.
pub fn rref(mut rows: Matrix) -> (Matrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &Matrix) -> usize {
    rref(rows.clone()).1.len()
}

/// Solves `Σ_j x_j · columns[j] = target`; `None` if inconsistent.
pub fn solve_columns(columns: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let m = target.len();
    let n = columns.len();
    let aug: Matrix = (0..m)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let (red, pivots) = rref(aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (row, &c) in red.iter().zip(&pivots) {
        x[c] = row[n].clone();
    }
    Some(x)
}

/// Multiplies a square matrix by a vector.
pub fn mat_vec(m: &Matrix, v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Q::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Least common multiple of all denominators.
pub fn common_denominator(m: &Matrix) -> BigInt {
    m.iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Characteristic polynomial `det(x I - M)` of an integer matrix by
/// Berkowitz's algorithm, returned constant term first.
pub fn charpoly_int(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut hi_first = berkowitz(m);
    hi_first.reverse();
    hi_first
}

fn berkowitz(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    if n == 0 {
        return vec![BigInt::one()];
    }
    if n == 1 {
        return vec![BigInt::one(), -m[0][0].clone()];
    }
    let a = &m[0][0];
    let r: Vec<BigInt> = m[0][1..].to_vec();
    let sub: Vec<Vec<BigInt>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    let mut col: Vec<BigInt> = m[1..].iter().map(|row| row[0].clone()).collect();
    let mut diags = vec![BigInt::one(), -a.clone()];
    for i in 0..n - 1 {
        if i > 0 {
            col = sub
                .iter()
                .map(|row| row.iter().zip(&col).map(|(x, y)| x * y).sum())
                .collect();
        }
        let d: BigInt = r.iter().zip(&col).map(|(x, y)| x * y).sum();
        diags.push(-d);
    }
    let inner = berkowitz(&sub);
    // Toeplitz (n+1) x n matrix times inner (length n)
    (0..=n)
        .map(|i| {
            (0..n.min(i + 1))
                .map(|j| &diags[i - j] * &inner[j])
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::poly::q;

    fn zm(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        assert_eq!(charpoly_int(&zm(&[&[2, 1], &[1, 2]])), ints(&[3, -4, 1]));
        // companion of x^3 - 2
        let c = zm(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(charpoly_int(&c), ints(&[-2, 0, 0, 1]));
        assert_eq!(charpoly_int(&[]), ints(&[1]));
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        // upper triangular: product of (x - d_i)
        let m = zm(&[&[1, 5, 7], &[0, 2, 9], &[0, 0, 3]]);
        assert_eq!(charpoly_int(&m), ints(&[-6, 11, -6, 1]));
    }

    #[test]
    fn rref_rank_solve() {
        let m = vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![q(0), q(1), q(1)],
        ];
        assert_eq!(rank(&m), 2);
        let cols = vec![vec![q(1), q(0)], vec![q(1), q(1)]];
        assert_eq!(solve_columns(&cols, &[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let dep = vec![vec![q(1), q(1)]];
        assert!(solve_columns(&dep, &[q(1), q(2)]).is_none());
    }
}
