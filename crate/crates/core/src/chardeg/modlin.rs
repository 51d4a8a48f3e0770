//! Dense linear algebra over a prime field F_l, l < 2^32.

use crate::arith::{inv_mod, pow_mod};

pub type Matrix = Vec<Vec<u64>>;

#[inline]
fn sub(a: u64, b: u64, l: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + l - b
    }
}

pub fn inv(a: u64, l: u64) -> u64 {
    inv_mod(a, l).expect("nonzero residue mod a prime is invertible")
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(rows: &mut Vec<Vec<u64>>, l: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let s = inv(rows[rank][col], l);
        for v in rows[rank].iter_mut() {
            *v = *v * s % l;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = sub(*v, f * pv % l, l);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

/// Basis of `{x : A x = 0}` for a square matrix `A`, one vector per free
/// column, in order of increasing free column.
pub fn kernel(a: &Matrix, l: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let mut rows = a.clone();
    let pivots = rref(&mut rows, l);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (l - row[free]) % l;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(x I - A)`, ascending coefficients, via
/// reduction to upper Hessenberg form.
pub fn charpoly(a: &Matrix, l: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&r| h[r][col] != 0) else {
            continue;
        };
        if p != col + 1 {
            h.swap(p, col + 1);
            for row in h.iter_mut() {
                row.swap(p, col + 1);
            }
        }
        let s = inv(h[col + 1][col], l);
        for r in col + 2..n {
            let f = h[r][col] * s % l;
            if f == 0 {
                continue;
            }
            // row_r -= f * row_{col+1}; then col_{col+1} += f * col_r
            for j in 0..n {
                let t = f * h[col + 1][j] % l;
                h[r][j] = sub(h[r][j], t, l);
            }
            for row in h.iter_mut() {
                row[col + 1] = (row[col + 1] + f * row[r]) % l;
            }
        }
    }
    // p_k = charpoly of the leading k x k block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let mut pk = vec![0u64; k + 1];
        let prev = &polys[k - 1];
        let diag = h[k - 1][k - 1];
        for (i, &c) in prev.iter().enumerate() {
            pk[i + 1] = (pk[i + 1] + c) % l;
            pk[i] = sub(pk[i], c * diag % l, l);
        }
        let mut prod = 1u64;
        for i in (1..k).rev() {
            prod = prod * h[i][i - 1] % l;
            if prod == 0 {
                break;
            }
            let coef = prod * h[i - 1][k - 1] % l;
            for (j, &c) in polys[i - 1].iter().enumerate() {
                pk[j] = sub(pk[j], coef * c % l, l);
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// Every root of `f` in F_l in ascending order, by evaluation at all residues.
pub fn roots_by_evaluation(f: &[u64], l: u64) -> Vec<u64> {
    (0..l)
        .filter(|&x| f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % l) == 0)
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[u64], l: u64) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0u64, |acc, (&x, &y)| (acc + x * y) % l))
        .collect()
}

pub fn is_scalar(a: &Matrix) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| if i == j { a[i][j] == a[0][0] } else { a[i][j] == 0 }))
}

/// `x^e mod l` exposed for callers normalizing eigenvectors.
pub fn power(x: u64, e: u64, l: u64) -> u64 {
    pow_mod(x, e, l)
}
