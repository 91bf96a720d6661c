//! Dense linear algebra over `F_p` on small matrices.
//!
//! Entries are stored as `u32` residues. Rank computations over `F_2` use
//! one `u64` per row.

use crate::util::mod_pow;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Reduced row-echelon form, zero rows removed. Returns the rows and the
/// pivot column of each row.
pub fn rref(rows: &[Vec<u32>], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = (*x * inv) % p;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    if p == 2 && rows.first().is_none_or(|r| r.len() <= 64) {
        let packed: Vec<u64> = rows.iter().map(|r| pack_gf2(r)).collect();
        return rank_gf2(&packed);
    }
    rref(rows, p).1.len()
}

pub fn pack_gf2(row: &[u32]) -> u64 {
    row.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (u64::from(x & 1) << i))
}

pub fn rank_gf2(rows: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Columns `cols` of `rows`, as a matrix with the same number of rows.
pub fn select_columns(rows: &[Vec<u32>], cols: &[usize]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
}

/// Solves `x A = b` for square invertible `A` (row vector `x`).
pub fn solve_left(a: &[Vec<u32>], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let n = a.len();
    // augment the transpose: A^T x^T = b^T
    let mut m: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut row: Vec<u32> = (0..n).map(|i| a[i][j] % p).collect();
            row.push(b[j] % p);
            row
        })
        .collect();
    let (red, pivots) = rref(&m, p);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    m = red;
    Some(m.iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_examples() {
        let (m, piv) = rref(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 2);
        assert_eq!(m, vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(piv, vec![0, 1]);
        let (m, _) = rref(&[vec![2, 1], vec![1, 2]], 3);
        assert_eq!(m, vec![vec![1, 2]]);
        assert_eq!(rank(&[vec![1, 2], vec![2, 1]], 5), 2);
    }

    #[test]
    fn gf2_rank_matches_general() {
        let rows = vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 1], vec![0, 0, 0, 1]];
        let packed: Vec<u64> = rows.iter().map(|r| pack_gf2(r)).collect();
        assert_eq!(rank_gf2(&packed), rref(&rows, 2).1.len());
        assert_eq!(rank_gf2(&packed), 3);
    }

    #[test]
    fn left_solve() {
        let a = vec![vec![1, 2], vec![0, 1]];
        let x = solve_left(&a, &[1, 0], 3).unwrap();
        // x A = b
        let b: Vec<u32> = (0..2).map(|j| (0..2).map(|i| x[i] * a[i][j]).sum::<u32>() % 3).collect();
        assert_eq!(b, vec![1, 0]);
        assert!(solve_left(&[vec![1, 1], vec![1, 1]], &[1, 0], 2).is_none());
    }
}
