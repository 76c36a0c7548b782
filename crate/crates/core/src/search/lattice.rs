//! Integer points of rational subspaces inside a box.

use num_integer::Integer;

/// Divides a row by the gcd of its entries.
fn reduce_row<const N: usize>(row: &mut [i128; N]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Fraction-free reduced echelon form. On return row `r` has a positive entry
/// at `pivots[r]` and zeros at every other pivot column; zero rows are dropped.
pub(crate) fn int_rref<const N: usize>(rows: &mut Vec<[i128; N]>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..N {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c] < 0 {
            for x in rows[r].iter_mut() {
                *x = -*x;
            }
        }
        reduce_row(&mut rows[r]);
        let pivot_row = rows[r];
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let (a, b) = (pivot_row[c], row[c]);
                for j in 0..N {
                    row[j] = a * row[j] - b * pivot_row[j];
                }
                reduce_row(row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Calls `visit` on every `x ∈ [−B, B]^N` with `M x = 0`, where `M` is given
/// by `rows`. Free coordinates are enumerated in lexicographic order and the
/// pivot coordinates are solved for, so the cost is `(2B+1)^(dim ker M)`.
pub(crate) fn box_kernel_points<const N: usize>(
    mut rows: Vec<[i128; N]>,
    bound: i64,
    mut visit: impl FnMut(&[i64; N]),
) {
    let pivots = int_rref(&mut rows);
    let free: Vec<usize> = (0..N).filter(|c| !pivots.contains(c)).collect();
    let b = bound as i128;
    let mut t = vec![-bound; free.len()];
    let mut x = [0i64; N];
    loop {
        for (j, &f) in free.iter().enumerate() {
            x[f] = t[j];
        }
        let mut ok = true;
        for (row, &c) in rows.iter().zip(&pivots) {
            let s: i128 = free.iter().map(|&f| row[f] * x[f] as i128).sum();
            let d = row[c];
            if s % d != 0 || (s / d).abs() > b {
                ok = false;
                break;
            }
            x[c] = (-s / d) as i64;
        }
        if ok {
            visit(&x);
        }
        let mut j = 0;
        loop {
            if j == t.len() {
                return;
            }
            if t[j] < bound {
                t[j] += 1;
                break;
            }
            t[j] = -bound;
            j += 1;
        }
    }
}

/// Divides by the gcd and makes the first nonzero entry positive. Returns
/// `false` for the zero vector.
pub(crate) fn normalize<const N: usize>(v: &mut [i64; N]) -> bool {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return false;
    }
    let first = v.iter().find(|&&x| x != 0).copied().unwrap_or(1);
    let g = if first < 0 { -g } else { g };
    for x in v.iter_mut() {
        *x /= g;
    }
    true
}

/// First nonzero entry is positive, or the vector is zero.
pub(crate) fn sign_normal(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).map_or(true, |&x| x > 0)
}
