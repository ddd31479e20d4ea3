//! Test-only oracles that never touch the library's decomposition code.

use std::collections::BTreeMap;

use crate::weights::Partition;

/// Character of the Schur module of a partition in `n` variables, as a map
/// from exponent vectors to multiplicities, by enumerating semistandard
/// tableaux.
pub fn schur_character(shape: &Partition, n: usize) -> BTreeMap<Vec<i64>, i64> {
    let cells: Vec<(usize, usize)> = shape
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut filling = vec![vec![0usize; shape.part(0)]; shape.len()];
    let mut out = BTreeMap::new();
    fill(&cells, 0, n, &mut filling, &mut out);
    out
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    n: usize,
    filling: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Vec<i64>, i64>,
) {
    if k == cells.len() {
        let mut exp = vec![0i64; n];
        for &(r, c) in cells {
            exp[filling[r][c]] += 1;
        }
        *out.entry(exp).or_insert(0) += 1;
        return;
    }
    let (r, c) = cells[k];
    let lo_row = if c > 0 { filling[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { filling[r - 1][c] + 1 } else { 0 };
    for v in lo_row.max(lo_col)..n {
        filling[r][c] = v;
        fill(cells, k + 1, n, filling, out);
    }
}

pub fn char_mul(a: &BTreeMap<Vec<i64>, i64>, b: &BTreeMap<Vec<i64>, i64>) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// Decomposes a polynomial GL(n) character into Schur characters by peeling
/// off the lexicographically largest exponent, which is always dominant.
pub fn decompose(mut ch: BTreeMap<Vec<i64>, i64>, n: usize) -> BTreeMap<Partition, i64> {
    let mut out = BTreeMap::new();
    while let Some((top, &mult)) = ch.iter().next_back() {
        let top = top.clone();
        let shape = Partition::new(top.clone()).expect("top exponent is dominant");
        for (e, c) in schur_character(&shape, n) {
            *ch.entry(e).or_insert(0) -= mult * c;
        }
        ch.retain(|_, v| *v != 0);
        out.insert(shape, mult);
    }
    out
}

pub fn product_by_characters(mu: &Partition, nu: &Partition, n: usize) -> BTreeMap<Partition, i64> {
    let ch = char_mul(&schur_character(mu, n), &schur_character(nu, n));
    decompose(ch, n)
}

/// All partitions of weight at most `max`.
pub fn partitions_up_to(max: usize) -> Vec<Partition> {
    fn rec(left: usize, cap: usize, prefix: &mut Vec<i64>, out: &mut Vec<Partition>) {
        out.push(Partition::new(prefix.clone()).unwrap());
        for k in (1..=left.min(cap)).rev() {
            prefix.push(k as i64);
            rec(left - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(max, max, &mut Vec::new(), &mut out);
    out
}

/// Character of the k-th exterior power of a representation given by its
/// weight multiset.
pub fn exterior_power(weights: &[Vec<i64>], k: usize, n: usize) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    subsets(weights, k, 0, &mut vec![0; n], &mut out);
    out
}

fn subsets(weights: &[Vec<i64>], k: usize, from: usize, acc: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, i64>) {
    if k == 0 {
        *out.entry(acc.clone()).or_insert(0) += 1;
        return;
    }
    for i in from..weights.len() {
        for (a, w) in acc.iter_mut().zip(&weights[i]) {
            *a += w;
        }
        subsets(weights, k - 1, i + 1, acc, out);
        for (a, w) in acc.iter_mut().zip(&weights[i]) {
            *a -= w;
        }
    }
}

/// Character of the k-th symmetric power of a representation given by its
/// weight multiset.
pub fn symmetric_power(weights: &[Vec<i64>], k: usize, n: usize) -> BTreeMap<Vec<i64>, i64> {
    fn rec(weights: &[Vec<i64>], k: usize, from: usize, acc: &mut Vec<i64>, out: &mut BTreeMap<Vec<i64>, i64>) {
        if k == 0 {
            *out.entry(acc.clone()).or_insert(0) += 1;
            return;
        }
        for i in from..weights.len() {
            for (a, w) in acc.iter_mut().zip(&weights[i]) {
                *a += w;
            }
            rec(weights, k - 1, i, acc, out);
            for (a, w) in acc.iter_mut().zip(&weights[i]) {
                *a -= w;
            }
        }
    }
    let mut out = BTreeMap::new();
    rec(weights, k, 0, &mut vec![0; n], &mut out);
    out
}
