use rayon::prelude::*;

use super::SparseMatrixFp;
use crate::field::PrimeField;

/// Below this many trailing rows the row updates run serially.
const PAR_ROWS: usize = 64;

/// Rank of a dense row-major matrix over F_p. Consumes the rows.
pub fn dense_rank_rows(field: PrimeField, mut rows: Vec<Vec<u32>>, ncols: usize) -> usize {
    let p = field.modulus() as u64;
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &mut head[rank];
        let inv = field.inv(pivot[col]).expect("pivot is nonzero") as u64;
        for v in &mut pivot[col..] {
            *v = ((*v as u64 * inv) % p) as u32;
        }
        let pivot: &[u32] = pivot;
        let update = |row: &mut Vec<u32>| {
            let factor = row[col] as u64;
            if factor == 0 {
                return;
            }
            let neg = p - factor;
            for (dst, &src) in row[col..].iter_mut().zip(&pivot[col..]) {
                if src != 0 {
                    *dst = ((*dst as u64 + neg * src as u64) % p) as u32;
                }
            }
        };
        if tail.len() >= PAR_ROWS {
            tail.par_iter_mut().for_each(update);
        } else {
            tail.iter_mut().for_each(update);
        }
        rank += 1;
    }
    rank
}

/// Plain dense Gaussian elimination; the reference path the sparse
/// eliminator is checked against.
pub fn dense_rank_fp(m: &SparseMatrixFp) -> usize {
    let mut rows = vec![vec![0u32; m.ncols()]; m.nrows()];
    for &(r, c, v) in m.entries() {
        rows[r as usize][c as usize] = v;
    }
    dense_rank_rows(m.field(), rows, m.ncols())
}
