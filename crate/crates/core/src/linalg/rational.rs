use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Dense matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Mismatch("ragged rational matrix".into()));
        }
        Ok(Self { ncols, rows })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from_integer((i == j).into()))
                    .collect()
            })
            .collect();
        Self { ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }
}

pub fn rational_rank(m: &RationalMatrix) -> usize {
    let mut rows = m.rows.clone();
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..m.ncols {
        if rank == nrows {
            break;
        }
        let Some(found) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot[col];
            for j in col..m.ncols {
                if !pivot[j].is_zero() {
                    row[j] -= &factor * &pivot[j];
                }
            }
        }
        rank += 1;
    }
    rank
}
