//! Rank of large matrices over F_p.
//!
//! The row space is put in reduced echelon form recursively: the top half of
//! the rows is echelonized, the bottom half is reduced against it, the reduced
//! bottom half is echelonized on the remaining free columns, and finally the
//! top pivots are cleared at the new pivot columns. An echelon block stores
//! only its free columns; pivot columns are an implicit identity.
//!
//! Both reduction steps are matrix products computed in `f64`. Entries are
//! residues in `0..p`, so a product with inner dimension `k` is exact as long
//! as `k (p-1)^2 + p < 2^53`; longer products are split into exact chunks with
//! a reduction between them.

use std::io::Write;

use crate::field::{Field, PrimeField};
use crate::linalg;

/// A sparse row: `(column, value)` pairs with values already reduced mod p.
pub type SparseRow = Vec<(usize, u64)>;

/// Largest modulus handled by the floating-point path.
const FAST_PATH_MAX_PRIME: u64 = 1 << 26;
const BASE_ROWS: usize = 16;
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

/// Rank of the matrix with the given sparse rows and `ncols` columns.
pub fn sparse_rank(field: &PrimeField, rows: &[SparseRow], ncols: usize) -> usize {
    let p = field.modulus();
    if p >= FAST_PATH_MAX_PRIME {
        let dense: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| {
                let mut d = vec![0u64; ncols];
                for &(c, v) in r {
                    d[c] = field.add(&d[c], &(v % p));
                }
                d
            })
            .collect();
        return linalg::rank(field, &dense);
    }
    let ctx = Ctx::new(p);
    let mut block = Block::zeros(rows.len(), ncols);
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            let slot = block.at_mut(r, c);
            *slot = ((*slot as u64 + v) % p) as f64;
        }
    }
    let active: Vec<usize> = (0..ncols).collect();
    ctx.echelonize(block, &active).pivots.len()
}

struct Ctx {
    p: u64,
    pf: f64,
    inv_p: f64,
    /// Longest inner dimension of an exact product.
    max_inner: usize,
}

/// Row-major dense block.
#[derive(Clone)]
struct Block {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Block {
    fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }

    fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn gather_cols(&self, positions: &[usize]) -> Block {
        let mut out = Block::zeros(self.rows, positions.len());
        for r in 0..self.rows {
            let src = self.row(r);
            let dst = &mut out.data[r * positions.len()..(r + 1) * positions.len()];
            for (d, &c) in dst.iter_mut().zip(positions) {
                *d = src[c];
            }
        }
        out
    }

    fn split_rows(mut self, at: usize) -> (Block, Block) {
        let tail = self.data.split_off(at * self.cols);
        let bottom = Block { rows: self.rows - at, cols: self.cols, data: tail };
        self.rows = at;
        (self, bottom)
    }
}

/// Reduced echelon form of a row space restricted to an active column set.
struct Echelon {
    /// Global pivot columns, one per basis row.
    pivots: Vec<usize>,
    /// Global free columns, in the order of `coef`'s columns.
    free: Vec<usize>,
    /// Basis rows at the free columns (`pivots.len() x free.len()`).
    coef: Block,
}

impl Ctx {
    fn new(p: u64) -> Self {
        let sq = ((p - 1) * (p - 1)) as f64;
        let max_inner = ((EXACT_LIMIT - p as f64) / sq).floor().max(1.0) as usize;
        Self { p, pf: p as f64, inv_p: 1.0 / p as f64, max_inner }
    }

    /// Maps exact integers in (-2^53, 2^53) to their residues in `0..p`.
    fn reduce(&self, b: &mut Block) {
        let (pf, inv) = (self.pf, self.inv_p);
        for x in b.data.iter_mut() {
            // The quotient estimate is off by at most one in either direction.
            let q = (*x * inv).floor();
            let mut r = (-q).mul_add(pf, *x);
            if r < 0.0 {
                r += pf;
            } else if r >= pf {
                r -= pf;
            }
            *x = r;
        }
    }

    /// `c <- (c - a * b) mod p`.
    fn sub_product(&self, c: &mut Block, a: &Block, b: &Block) {
        assert_eq!(a.cols, b.rows);
        assert_eq!((c.rows, c.cols), (a.rows, b.cols));
        if a.cols == 0 || c.data.is_empty() {
            return;
        }
        let mut k0 = 0;
        while k0 < a.cols {
            let k = self.max_inner.min(a.cols - k0);
            // SAFETY: the pointers and strides describe in-bounds row-major
            // submatrices: rows of `a` from column k0 (k columns), rows k0..k0+k of `b`.
            unsafe {
                matrixmultiply::dgemm(
                    c.rows,
                    k,
                    c.cols,
                    -1.0,
                    a.data.as_ptr().add(k0),
                    a.cols as isize,
                    1,
                    b.data.as_ptr().add(k0 * b.cols),
                    b.cols as isize,
                    1,
                    1.0,
                    c.data.as_mut_ptr(),
                    c.cols as isize,
                    1,
                );
            }
            self.reduce(c);
            k0 += k;
        }
    }

    fn echelonize(&self, rows: Block, active: &[usize]) -> Echelon {
        debug_assert_eq!(rows.cols, active.len());
        if rows.rows <= BASE_ROWS || active.is_empty() {
            return self.echelonize_small(rows, active);
        }
        let half = rows.rows / 2;
        let (top_rows, bottom_rows) = rows.split_rows(half);
        let top = self.echelonize(top_rows, active);

        // Reduce the bottom rows against the top basis.
        let position = positions_in(active);
        let piv_pos: Vec<usize> = top.pivots.iter().map(|c| position(*c)).collect();
        let free_pos: Vec<usize> = top.free.iter().map(|c| position(*c)).collect();
        let coeffs = bottom_rows.gather_cols(&piv_pos);
        let mut remainder = bottom_rows.gather_cols(&free_pos);
        drop(bottom_rows);
        self.sub_product(&mut remainder, &coeffs, &top.coef);
        drop(coeffs);

        let bottom = self.echelonize(remainder, &top.free);

        // Clear the new pivot columns from the top basis.
        let position = positions_in(&top.free);
        let bpiv_pos: Vec<usize> = bottom.pivots.iter().map(|c| position(*c)).collect();
        let bfree_pos: Vec<usize> = bottom.free.iter().map(|c| position(*c)).collect();
        let clear = top.coef.gather_cols(&bpiv_pos);
        let mut top_coef = top.coef.gather_cols(&bfree_pos);
        self.sub_product(&mut top_coef, &clear, &bottom.coef);

        let mut pivots = top.pivots;
        pivots.extend_from_slice(&bottom.pivots);
        top_coef.data.extend_from_slice(&bottom.coef.data);
        top_coef.rows += bottom.coef.rows;
        Echelon { pivots, free: bottom.free, coef: top_coef }
    }

    fn echelonize_small(&self, mut rows: Block, active: &[usize]) -> Echelon {
        let p = self.p;
        let width = active.len();
        let mut pivot_pos = Vec::new();
        let mut r = 0;
        for c in 0..width {
            if r == rows.rows {
                break;
            }
            let Some(sel) = (r..rows.rows).find(|&i| rows.data[i * width + c] != 0.0) else {
                continue;
            };
            if sel != r {
                for j in 0..width {
                    rows.data.swap(sel * width + j, r * width + j);
                }
            }
            let inv = inv_mod(p, rows.data[r * width + c] as u64);
            for x in &mut rows.data[r * width..(r + 1) * width] {
                *x = ((*x as u64 * inv) % p) as f64;
            }
            let (pf, inv_p) = (self.pf, self.inv_p);
            let pivot_row: Vec<f64> = rows.data[r * width..(r + 1) * width].to_vec();
            for i in 0..rows.rows {
                if i == r {
                    continue;
                }
                let factor = rows.data[i * width + c];
                if factor == 0.0 {
                    continue;
                }
                let m = pf - factor;
                for (x, &v) in rows.data[i * width..(i + 1) * width].iter_mut().zip(&pivot_row) {
                    let y = m.mul_add(v, *x);
                    *x = (-(y * inv_p).floor()).mul_add(pf, y);
                }
                for x in &mut rows.data[i * width..(i + 1) * width] {
                    if *x < 0.0 {
                        *x += pf;
                    } else if *x >= pf {
                        *x -= pf;
                    }
                }
            }
            pivot_pos.push(c);
            r += 1;
        }
        let free_pos: Vec<usize> = (0..width).filter(|c| !pivot_pos.contains(c)).collect();
        let (basis, _) = rows.split_rows(r);
        let coef = basis.gather_cols(&free_pos);
        Echelon {
            pivots: pivot_pos.iter().map(|&c| active[c]).collect(),
            free: free_pos.iter().map(|&c| active[c]).collect(),
            coef,
        }
    }
}

/// Position lookup for a sorted-or-not list of distinct column ids.
fn positions_in(cols: &[usize]) -> impl Fn(usize) -> usize {
    let max = cols.iter().copied().max().map_or(0, |m| m + 1);
    let mut table = vec![usize::MAX; max];
    for (i, &c) in cols.iter().enumerate() {
        table[c] = i;
    }
    move |c| table[c]
}

fn inv_mod(p: u64, a: u64) -> u64 {
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Writes a matrix as `row col value` lines, one nonzero entry per line.
pub fn write_triples<W: Write>(out: &mut W, rows: &[SparseRow]) -> std::io::Result<()> {
    for (r, row) in rows.iter().enumerate() {
        for &(c, v) in row {
            writeln!(out, "{r} {c} {v}")?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_to_sparse(m: &[Vec<u64>]) -> Vec<SparseRow> {
        m.iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect())
            .collect()
    }

    fn low_rank(rng: &mut ChaCha8Rng, f: &PrimeField, rows: usize, cols: usize, rank: usize) -> Vec<Vec<u64>> {
        let p = f.modulus();
        if rank == 0 {
            return vec![vec![0; cols]; rows];
        }
        let left: Vec<Vec<u64>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(0..p)).collect()).collect();
        let right: Vec<Vec<u64>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect();
        linalg::mat_mul(f, &left, &right)
    }

    #[test]
    fn agrees_with_generic_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (trial, p) in [10007u64, 65521, 99991, 7].iter().cycle().take(40).enumerate() {
            let f = PrimeField::new(*p).unwrap();
            let rows = rng.gen_range(1..160);
            let cols = rng.gen_range(1..120);
            let target = rng.gen_range(0..=rows.min(cols));
            let m = low_rank(&mut rng, &f, rows, cols, target);
            assert_eq!(sparse_rank(&f, &dense_to_sparse(&m), cols), linalg::rank(&f, &m), "trial {trial}");
        }
    }

    #[test]
    fn structured_sparse_matrix() {
        // Rows with repeated and shifted patterns exercise empty blocks and
        // zero rows in the recursion.
        let f = PrimeField::new(10007).unwrap();
        let mut m = vec![vec![0u64; 90]; 200];
        for (i, row) in m.iter_mut().enumerate() {
            if i % 3 == 0 {
                continue;
            }
            row[i % 90] = 1 + (i as u64 % 5);
            row[(i * 7) % 90] = 3;
        }
        assert_eq!(sparse_rank(&f, &dense_to_sparse(&m), 90), linalg::rank(&f, &m));
    }

    #[test]
    fn large_prime_uses_exact_fallback() {
        let f = PrimeField::new(2_147_483_647).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = low_rank(&mut rng, &f, 30, 40, 17);
        assert_eq!(sparse_rank(&f, &dense_to_sparse(&m), 40), 17);
    }

    #[test]
    fn chunked_products_stay_exact() {
        // p close to 2^26 forces the inner dimension to be split.
        let p = 67_108_859;
        let f = PrimeField::new(p).unwrap();
        assert!(Ctx::new(p).max_inner < 4);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = low_rank(&mut rng, &f, 80, 60, 45);
        assert_eq!(sparse_rank(&f, &dense_to_sparse(&m), 60), 45);
    }

    #[test]
    fn triples_format() {
        let mut buf = Vec::new();
        write_triples(&mut buf, &[vec![(0, 5)], vec![], vec![(2, 1), (3, 7)]]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 0 5\n2 2 1\n2 3 7\n");
    }
}
