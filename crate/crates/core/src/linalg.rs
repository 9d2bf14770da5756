//! Exact Gaussian elimination over `Q(ζ_N)`.

use crate::cyclotomic::CycNum;

/// Row-reduces in place and returns the pivot columns.
fn row_reduce(rows: &mut Vec<Vec<CycNum>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<CycNum>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let ncols = first.len();
    let mut rows = vectors.to_vec();
    row_reduce(&mut rows, ncols).len()
}

/// Outcome of solving `Σ x_i c_i = t` for given columns `c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// One coefficient per column (free variables set to zero).
    pub coefficients: Vec<CycNum>,
    /// Whether the system is consistent, i.e. the residual is exactly zero.
    pub exact: bool,
    /// Whether the columns are linearly independent.
    pub unique: bool,
}

/// Solves the linear system whose unknowns multiply `columns` (each of the
/// target's length).
pub fn solve(columns: &[Vec<CycNum>], target: &[CycNum]) -> Solution {
    let m = target.len();
    let k = columns.len();
    let mut rows: Vec<Vec<CycNum>> = (0..m)
        .map(|i| {
            let mut row: Vec<CycNum> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = row_reduce(&mut rows, k + 1);
    let exact = !pivots.contains(&k);
    let mut coefficients = vec![CycNum::zero(); k];
    for (r, &c) in pivots.iter().enumerate() {
        if c < k {
            coefficients[c] = rows[r][k].clone();
        }
    }
    let unique = pivots.iter().filter(|&&c| c < k).count() == k;
    Solution {
        coefficients,
        exact,
        unique,
    }
}
