//! Exact dense linear algebra over a [`Scalar`] field.
//!
//! Matrices are small (at most a few dozen rows), so plain Gauss–Jordan
//! elimination is used throughout.

use crate::scalar::Scalar;

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = S::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let v = m[r][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a matrix.
pub fn rank<S: Scalar>(mut m: Vec<Vec<S>>) -> usize {
    rref(&mut m).len()
}

/// Basis of the right kernel `{x : M x = 0}`.
pub fn kernel<S: Scalar>(m: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![S::zero(); cols];
            x[f] = S::one();
            for (row, &p) in pivots.iter().enumerate() {
                x[p] = -a[row][f].clone();
            }
            x
        })
        .collect()
}

/// Solves `M x = b`; returns one solution, or `None` when inconsistent.
pub fn solve<S: Scalar>(m: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![S::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

/// Matrix product.
pub fn matmul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![S::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].clone() + a[i][l].clone() * b[l][j].clone();
            }
        }
    }
    out
}

/// Identity matrix.
pub fn identity<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

/// Inertia `(positive, negative)` of a symmetric matrix by symmetric
/// Gaussian elimination (Sylvester's law of inertia).
pub fn inertia<S: Scalar>(m: &[Vec<S>]) -> (usize, usize) {
    let mut a: Vec<Vec<S>> = m.to_vec();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(&p) = active.iter().find(|&&i| !a[i][i].is_zero()) {
            let d = a[p][p].clone();
            if d.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != p);
            for &i in &active {
                let f = a[i][p].clone() / d.clone();
                for &j in &active {
                    let v = f.clone() * a[p][j].clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
            continue;
        }
        // Zero diagonal: find an off-diagonal entry and mix the two rows.
        let pair = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && !a[i][j].is_zero());
        let Some((i, j)) = pair else { break };
        // Replace basis vector i by e_i + e_j, which has a nonzero square 2 a_ij.
        for &k in &active {
            let v = a[k][j].clone();
            a[k][i] = a[k][i].clone() + v;
        }
        for &k in &active {
            let v = a[j][k].clone();
            a[i][k] = a[i][k].clone() + v;
        }
    }
    (pos, neg)
}
