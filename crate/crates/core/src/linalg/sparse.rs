use std::collections::BTreeSet;

use super::dense::dense_rank_rows;
use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Density of the active submatrix above which elimination switches to the
/// dense kernel.
const DENSE_SWITCH_DENSITY: f64 = 0.2;

/// Active submatrices smaller than this stay sparse regardless of density.
const DENSE_SWITCH_MIN_CELLS: usize = 4096;

/// Number of lowest-count rows and columns examined per Markowitz search.
const MARKOWITZ_SEARCH: usize = 4;

/// Sparse matrix over F_p in coordinate form, entries sorted by (row, col).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrixFp {
    field: PrimeField,
    nrows: usize,
    ncols: usize,
    entries: Vec<(u32, u32, u32)>,
}

impl SparseMatrixFp {
    /// Builds a matrix from `(row, col, value)` triples. Values are reduced
    /// mod p, repeated positions are summed and zeros dropped.
    pub fn new<I>(field: PrimeField, nrows: usize, ncols: usize, triples: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if nrows > u32::MAX as usize || ncols > u32::MAX as usize {
            return Err(Error::OutOfRange(format!("{nrows}x{ncols} matrix")));
        }
        let mut raw = Vec::new();
        for (r, c, v) in triples {
            if r >= nrows || c >= ncols {
                return Err(Error::OutOfRange(format!(
                    "entry ({r}, {c}) in a {nrows}x{ncols} matrix"
                )));
            }
            raw.push((r as u32, c as u32, field.reduce(v)));
        }
        raw.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut entries: Vec<(u32, u32, u32)> = Vec::with_capacity(raw.len());
        for (r, c, v) in raw {
            match entries.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(last.2, v),
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|e| e.2 != 0);
        Ok(Self {
            field,
            nrows,
            ncols,
            entries,
        })
    }

    pub fn zeros(field: PrimeField, nrows: usize, ncols: usize) -> Self {
        Self {
            field,
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let entries = (0..n as u32).map(|i| (i, i, 1)).collect();
        Self {
            field,
            nrows: n,
            ncols: n,
            entries,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32, u32)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries
            .binary_search_by_key(&(row as u32, col as u32), |&(r, c, _)| (r, c))
            .map_or(0, |i| self.entries[i].2)
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        Self {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            entries,
        }
    }

    /// Moves entry (r, c) to (row_perm[r], col_perm[c]).
    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Result<Self> {
        if row_perm.len() != self.nrows || col_perm.len() != self.ncols {
            return Err(Error::Mismatch("permutation length".into()));
        }
        Self::new(
            self.field,
            self.nrows,
            self.ncols,
            self.entries.iter().map(|&(r, c, v)| {
                (row_perm[r as usize], col_perm[c as usize], v as u64)
            }),
        )
    }

    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::Mismatch("block_diag over different fields".into()));
        }
        let (r0, c0) = (self.nrows, self.ncols);
        let triples = self
            .entries
            .iter()
            .map(|&(r, c, v)| (r as usize, c as usize, v as u64))
            .chain(
                other
                    .entries
                    .iter()
                    .map(|&(r, c, v)| (r as usize + r0, c as usize + c0, v as u64)),
            );
        Self::new(self.field, r0 + other.nrows, c0 + other.ncols, triples)
    }
}

/// Rank over F_p by sparse Gaussian elimination with Markowitz pivoting.
///
/// Pivots are chosen to minimize `(row_nnz - 1) * (col_nnz - 1)` among the
/// few sparsest rows and columns; singleton rows and columns therefore go
/// first and cost no fill. Once the active part is denser than 20% it is
/// handed to the dense kernel. The result does not depend on anything but
/// the matrix.
pub fn sparse_rank_fp(m: &SparseMatrixFp) -> usize {
    Eliminator::new(m).run()
}

struct Eliminator {
    field: PrimeField,
    rows: Vec<Vec<(u32, u32)>>,
    /// Row ids that contained the column at some point; may be stale.
    cols: Vec<Vec<u32>>,
    row_len: Vec<u32>,
    col_len: Vec<u32>,
    row_queue: BTreeSet<(u32, u32)>,
    col_queue: BTreeSet<(u32, u32)>,
    /// Length of a touched column before the current elimination step.
    col_before: Vec<u32>,
    touched: Vec<u32>,
    nnz: usize,
    rank: usize,
}

impl Eliminator {
    fn new(m: &SparseMatrixFp) -> Self {
        let mut rows = vec![Vec::new(); m.nrows];
        let mut cols = vec![Vec::new(); m.ncols];
        for &(r, c, v) in &m.entries {
            rows[r as usize].push((c, v));
            cols[c as usize].push(r);
        }
        let row_len: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
        let col_len: Vec<u32> = cols.iter().map(|c| c.len() as u32).collect();
        let row_queue = row_len
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(i, &l)| (l, i as u32))
            .collect();
        let col_queue = col_len
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0)
            .map(|(i, &l)| (l, i as u32))
            .collect();
        Self {
            field: m.field,
            rows,
            cols,
            row_len,
            col_len,
            row_queue,
            col_queue,
            col_before: vec![u32::MAX; m.ncols],
            touched: Vec::new(),
            nnz: m.entries.len(),
            rank: 0,
        }
    }

    fn run(mut self) -> usize {
        while let Some((row, col, value)) = self.choose_pivot() {
            self.eliminate(row, col, value);
            if self.should_densify() {
                return self.finish_dense();
            }
        }
        self.rank
    }

    fn lookup(&self, row: u32, col: u32) -> Option<u32> {
        let r = &self.rows[row as usize];
        r.binary_search_by_key(&col, |e| e.0).ok().map(|i| r[i].1)
    }

    fn choose_pivot(&self) -> Option<(u32, u32, u32)> {
        let mut best: Option<(u64, u32, u32, u32)> = None;
        let mut consider = |cost: u64, r: u32, c: u32, v: u32| {
            let cand = (cost, r, c, v);
            if best.is_none_or(|b| (cand.0, cand.1, cand.2) < (b.0, b.1, b.2)) {
                best = Some(cand);
            }
        };
        for &(len, c) in self.col_queue.iter().take(MARKOWITZ_SEARCH) {
            for &r in &self.cols[c as usize] {
                if let Some(v) = self.lookup(r, c) {
                    let cost = (self.row_len[r as usize] as u64 - 1) * (len as u64 - 1);
                    consider(cost, r, c, v);
                }
            }
        }
        for &(len, r) in self.row_queue.iter().take(MARKOWITZ_SEARCH) {
            for &(c, v) in &self.rows[r as usize] {
                let cost = (len as u64 - 1) * (self.col_len[c as usize] as u64 - 1);
                consider(cost, r, c, v);
            }
        }
        best.map(|(_, r, c, v)| (r, c, v))
    }

    fn set_row_len(&mut self, row: u32, len: u32) {
        let old = self.row_len[row as usize];
        if old == len {
            return;
        }
        if old > 0 {
            self.row_queue.remove(&(old, row));
        }
        if len > 0 {
            self.row_queue.insert((len, row));
        }
        self.row_len[row as usize] = len;
    }

    fn touch_col(&mut self, col: u32) {
        if self.col_before[col as usize] == u32::MAX {
            self.col_before[col as usize] = self.col_len[col as usize];
            self.touched.push(col);
        }
    }

    fn flush_cols(&mut self) {
        for col in std::mem::take(&mut self.touched) {
            let old = std::mem::replace(&mut self.col_before[col as usize], u32::MAX);
            let len = self.col_len[col as usize];
            if old == len {
                continue;
            }
            if old > 0 {
                self.col_queue.remove(&(old, col));
            }
            if len > 0 {
                self.col_queue.insert((len, col));
            }
        }
    }

    fn eliminate(&mut self, pivot_row: u32, pivot_col: u32, pivot_value: u32) {
        let field = self.field;
        let p = field.modulus();
        let pivot = std::mem::take(&mut self.rows[pivot_row as usize]);
        self.nnz -= pivot.len();
        self.set_row_len(pivot_row, 0);
        let inv = field.inv(pivot_value).expect("pivot is nonzero");

        let targets = std::mem::take(&mut self.cols[pivot_col as usize]);
        for r in targets {
            if r == pivot_row {
                continue;
            }
            let Some(v) = self.lookup(r, pivot_col) else {
                continue;
            };
            let neg = p - field.mul(v, inv);
            let old = std::mem::take(&mut self.rows[r as usize]);
            let mut merged = Vec::with_capacity(old.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < pivot.len() {
                let a = old.get(i).copied();
                let b = pivot.get(j).copied();
                match (a, b) {
                    (Some((ca, va)), Some((cb, _))) if ca < cb => {
                        merged.push((ca, va));
                        i += 1;
                    }
                    (Some((ca, va)), None) => {
                        merged.push((ca, va));
                        i += 1;
                    }
                    (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                        let nv = field.add(va, field.mul(neg, vb));
                        if ca != pivot_col {
                            if nv == 0 {
                                self.touch_col(ca);
                                self.col_len[ca as usize] -= 1;
                            } else {
                                merged.push((ca, nv));
                            }
                        } else {
                            debug_assert_eq!(nv, 0);
                        }
                        i += 1;
                        j += 1;
                    }
                    (_, Some((cb, vb))) => {
                        // fill-in
                        self.touch_col(cb);
                        self.col_len[cb as usize] += 1;
                        self.cols[cb as usize].push(r);
                        merged.push((cb, field.mul(neg, vb)));
                        j += 1;
                    }
                    (None, None) => unreachable!(),
                }
            }
            self.nnz = self.nnz - old.len() + merged.len();
            let len = merged.len() as u32;
            self.rows[r as usize] = merged;
            self.set_row_len(r, len);
        }
        for &(c, _) in &pivot {
            self.touch_col(c);
            self.col_len[c as usize] = if c == pivot_col {
                0
            } else {
                self.col_len[c as usize] - 1
            };
        }
        self.flush_cols();
        self.rank += 1;
    }

    fn should_densify(&self) -> bool {
        let cells = self.row_queue.len() * self.col_queue.len();
        cells >= DENSE_SWITCH_MIN_CELLS && self.nnz as f64 > DENSE_SWITCH_DENSITY * cells as f64
    }

    fn finish_dense(self) -> usize {
        let mut col_index = vec![u32::MAX; self.col_len.len()];
        let active_cols: Vec<u32> = {
            let mut v: Vec<u32> = self.col_queue.iter().map(|&(_, c)| c).collect();
            v.sort_unstable();
            v
        };
        for (i, &c) in active_cols.iter().enumerate() {
            col_index[c as usize] = i as u32;
        }
        let mut active_rows: Vec<u32> = self.row_queue.iter().map(|&(_, r)| r).collect();
        active_rows.sort_unstable();
        let dense: Vec<Vec<u32>> = active_rows
            .iter()
            .map(|&r| {
                let mut row = vec![0u32; active_cols.len()];
                for &(c, v) in &self.rows[r as usize] {
                    row[col_index[c as usize] as usize] = v;
                }
                row
            })
            .collect();
        self.rank + dense_rank_rows(self.field, dense, active_cols.len())
    }
}
