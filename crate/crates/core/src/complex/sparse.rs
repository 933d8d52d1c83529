use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Column-compressed integer matrix. Columns hold (row, value) pairs sorted by
/// row with no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for (k, col) in m.columns.iter_mut().enumerate() {
            col.push((k, 1));
        }
        m
    }

    /// Entries given as (row, column, value); repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[c].entry(r).or_default() += v;
        }
        let columns = acc
            .into_iter()
            .map(|col| col.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        SparseMatrix { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)));
        SparseMatrix::from_triplets(r, c, entries)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        match self.columns[c].binary_search_by_key(&r, |&(row, _)| row) {
            Ok(k) => self.columns[c][k].1,
            Err(_) => 0,
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut columns = Vec::with_capacity(other.cols);
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for col in &other.columns {
            acc.clear();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    *acc.entry(r).or_default() += a * b;
                }
            }
            columns.push(acc.iter().filter(|&(_, &v)| v != 0).map(|(&r, &v)| (r, v)).collect());
        }
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shapes differ");
        SparseMatrix::from_triplets(self.rows, self.cols, self.triplets().chain(other.triplets()))
    }

    pub fn scale(&self, k: i64) -> SparseMatrix {
        SparseMatrix::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, v * k)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v)))
    }

    /// Submatrix on the given rows and columns, in the order given.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.rows];
        for (k, &r) in rows.iter().enumerate() {
            row_pos[r] = k;
        }
        let columns = cols
            .iter()
            .map(|&c| {
                let mut v: Vec<(usize, i64)> = self.columns[c]
                    .iter()
                    .filter(|&&(r, _)| row_pos[r] != usize::MAX)
                    .map(|&(r, v)| (row_pos[r], v))
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        let shifted = other.triplets().map(|(r, c, v)| (r + self.rows, c + self.cols, v));
        SparseMatrix::from_triplets(self.rows + other.rows, self.cols + other.cols, self.triplets().chain(shifted))
    }
}
