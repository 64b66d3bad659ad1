//! Exact dense linear algebra over complex rationals.

use num_traits::{One, Zero};

use crate::scalar::CRat;

pub type DenseMatrix = Vec<Vec<CRat>>;

pub fn zeros(rows: usize, cols: usize) -> DenseMatrix {
    vec![vec![CRat::zero(); cols]; rows]
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot columns.
pub fn rref(m: &mut DenseMatrix) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
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
        let inv = m[r][c].inv();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &DenseMatrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of {x : m x = 0}, one vector per free column, with a unit entry at that column.
pub fn nullspace(m: &DenseMatrix, cols: usize) -> Vec<Vec<CRat>> {
    let mut work = m.clone();
    let pivots = if work.is_empty() { Vec::new() } else { rref(&mut work) };
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![CRat::zero(); cols];
        v[free] = CRat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &DenseMatrix, b: &[CRat]) -> Option<Vec<CRat>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: DenseMatrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    if rows == 0 {
        return Some(Vec::new());
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![CRat::zero(); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &DenseMatrix) -> Option<DenseMatrix> {
    let n = a.len();
    let mut aug: DenseMatrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { CRat::one() } else { CRat::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{creal, rat};

    fn m(rows: &[&[i64]]) -> DenseMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| creal(rat(x, 1))).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&ns[0]).fold(CRat::zero(), |acc, (x, y)| acc + x * y);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[creal(rat(3, 1)), creal(rat(4, 1))]).unwrap();
        assert_eq!(x, vec![creal(rat(1, 1)), creal(rat(1, 1))]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], creal(rat(3, 5)));
        let singular = m(&[&[1, 1], &[1, 1]]);
        assert!(inverse(&singular).is_none());
        assert!(solve(&singular, &[creal(rat(1, 1)), creal(rat(2, 1))]).is_none());
    }
}
