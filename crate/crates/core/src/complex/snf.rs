//! Invariant factors of integer matrices.
//!
//! Unit pivots are eliminated sparsely in checked `i64` arithmetic; whatever
//! remains is diagonalized densely over arbitrary-precision integers. If the
//! sparse stage would overflow, the whole matrix goes through the dense path.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseMatrix;

/// Nonzero invariant factors d₁ | d₂ | … (all positive). Their count is the rank.
pub fn smith_invariants(m: &SparseMatrix) -> Vec<BigInt> {
    match sparse_stage(m) {
        Some((units, residual)) => {
            let mut out = vec![BigInt::one(); units];
            out.extend(dense_invariants(residual));
            out
        }
        None => dense_invariants(
            m.to_dense()
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
        ),
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    smith_invariants(m).len()
}

/// Invariant factors greater than one.
pub fn torsion(m: &SparseMatrix) -> Vec<BigInt> {
    smith_invariants(m).into_iter().filter(|d| !d.is_one()).collect()
}

struct Eliminator {
    rows: Vec<HashMap<usize, i64>>,
    cols: Vec<HashSet<usize>>,
}

impl Eliminator {
    fn eliminate(&mut self, r: usize, c: usize) -> Option<()> {
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let u = pivot_row[&c];
        for &cc in pivot_row.keys() {
            self.cols[cc].remove(&r);
        }
        let others = std::mem::take(&mut self.cols[c]);
        for r2 in others {
            let v = self.rows[r2].remove(&c).expect("column and row views agree");
            // u is ±1, so u⁻¹ = u
            let factor = v.checked_mul(u)?;
            for (&cc, &w) in &pivot_row {
                if cc == c {
                    continue;
                }
                let old = self.rows[r2].get(&cc).copied().unwrap_or(0);
                let new = old.checked_sub(factor.checked_mul(w)?)?;
                if new == 0 {
                    self.rows[r2].remove(&cc);
                    self.cols[cc].remove(&r2);
                } else {
                    self.rows[r2].insert(cc, new);
                    self.cols[cc].insert(r2);
                }
            }
        }
        Some(())
    }
}

/// Returns the number of unit pivots and the dense residual.
fn sparse_stage(m: &SparseMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut e = Eliminator {
        rows: vec![HashMap::new(); m.rows()],
        cols: vec![HashSet::new(); m.cols()],
    };
    for (r, c, v) in m.triplets() {
        e.rows[r].insert(c, v);
        e.cols[c].insert(r);
    }
    let mut order: Vec<usize> = (0..m.cols()).collect();
    order.sort_by_key(|&c| e.cols[c].len());
    let mut units = 0;
    loop {
        let mut progress = false;
        for &c in &order {
            let best = e.cols[c]
                .iter()
                .copied()
                .filter(|&r| e.rows[r][&c].abs() == 1)
                .min_by_key(|&r| (e.rows[r].len(), r));
            if let Some(r) = best {
                e.eliminate(r, c)?;
                units += 1;
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| !e.rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| !e.cols[c].is_empty()).collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let residual = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![BigInt::zero(); live_cols.len()];
            for (&c, &v) in &e.rows[r] {
                row[col_pos[&c]] = BigInt::from(v);
            }
            row
        })
        .collect();
    Some((units, residual))
}

/// Diagonalize by unimodular row and column operations, then normalize the
/// diagonal with gcd/lcm so each factor divides the next.
pub fn dense_invariants(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_nonzero(&a, t..m, t..n) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..n {
                        let delta = &q * &a[t][j];
                        a[i][j] -= delta;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let delta = &q * &row[t];
                        row[j] -= delta;
                    }
                    clean &= a[t][j].is_zero();
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row t or column t to the pivot
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

fn min_nonzero(
    a: &[Vec<BigInt>],
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_invariants(&SparseMatrix::from_dense(rows))
            .into_iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(inv(&[vec![6]]), vec![6]);
        assert_eq!(inv(&[vec![1, 0], vec![0, 0]]), vec![1]);
        assert_eq!(inv(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(inv(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
        assert!(inv(&[vec![0, 0]]).is_empty());
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = SparseMatrix::from_dense(&[vec![1, big, 0], vec![big, 0, 3], vec![0, 5, big]]);
        let d = smith_invariants(&m);
        let dense = dense_invariants(
            m.to_dense()
                .into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect(),
        );
        assert_eq!(d, dense);
    }
}
