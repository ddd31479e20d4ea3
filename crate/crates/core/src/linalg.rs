//! Dense Gaussian elimination over an arbitrary exact [`Field`].

use crate::field::Field;

pub type Matrix<E> = Vec<Vec<E>>;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref<F: Field>(field: &F, mut rows: Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(sel) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = field.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !field.is_zero(p) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    rref(field, rows.to_vec()).1.len()
}

pub fn determinant<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(sel) = (c..n).find(|&i| !field.is_zero(&a[i][c])) else {
            return field.zero();
        };
        if sel != c {
            a.swap(sel, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]);
        for i in c + 1..n {
            if field.is_zero(&a[i][c]) {
                continue;
            }
            let factor = field.mul(&a[i][c], &inv);
            for j in c..n {
                let t = field.mul(&factor, &a[c][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    det
}

/// Basis of the right kernel `{x : m x = 0}` of a matrix with `ncols` columns.
pub fn nullspace<F: Field>(field: &F, m: &[Vec<F::Elem>], ncols: usize) -> Matrix<F::Elem> {
    let (reduced, pivots) = rref(field, m.to_vec());
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = field.neg(&row[free]);
        }
        basis.push(v);
    }
    basis
}

pub fn inverse<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Option<Matrix<F::Elem>> {
    let n = m.len();
    let augmented = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    let (reduced, pivots) = rref(field, augmented);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(reduced.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul<F: Field>(field: &F, a: &[Vec<F::Elem>], b: &[Vec<F::Elem>]) -> Matrix<F::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(field.zero(), |acc, k| {
                        field.add(&acc, &field.mul(&row[k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn transpose<E: Clone>(m: &[Vec<E>]) -> Matrix<E> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}
