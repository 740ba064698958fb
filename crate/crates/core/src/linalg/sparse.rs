use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::field::Field;
use super::Rational;
use crate::error::{FihlError, Result};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and nonzero values.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Column-major sparse matrix over the rationals. Stored entries are nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<Rational>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for (i, col) in m.columns.iter_mut().enumerate() {
            col.push((i, Rational::from_integer(BigInt::from(1))));
        }
        m
    }

    /// Duplicate coordinates are summed; resulting zeros are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(FihlError::DimensionMismatch(format!(
                    "entry ({r},{c}) outside a {rows}x{cols} matrix"
                )));
            }
            *acc[c].entry(r).or_insert_with(Rational::zero) += v;
        }
        let columns = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(SparseMatrix { rows, cols, columns })
    }

    pub fn from_int_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self> {
        Self::from_triplets(
            rows,
            cols,
            triplets
                .into_iter()
                .map(|(r, c, v)| (r, c, Rational::from_integer(BigInt::from(v)))),
        )
    }

    /// Builds from dense rows of integers.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.len());
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_int_triplets(n_rows, n_cols, triplets).expect("dense rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn column(&self, c: usize) -> &[(usize, Rational)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.columns[c]
            .binary_search_by_key(&r, |&(i, _)| i)
            .map(|k| self.columns[c][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Entries as `(row, col, value)`, ordered by column then row.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns: Vec<SparseVec<Rational>> = vec![Vec::new(); self.rows];
        for (r, c, v) in self.entries() {
            columns[r].push((c, v.clone()));
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns,
        }
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(FihlError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, v) in col {
                    for (r, w) in &self.columns[*k] {
                        *acc.entry(*r).or_insert_with(Rational::zero) += v * w;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        })
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(FihlError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut y = vec![Rational::zero(); self.rows];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, v) in &self.columns[c] {
                y[*r] += v * xc;
            }
        }
        Ok(y)
    }

    /// Column `c` mapped into another field; `None` if some denominator vanishes there.
    pub fn column_in<F: Field>(&self, field: &F, c: usize) -> Option<SparseVec<F::Elem>> {
        let mut out = Vec::with_capacity(self.columns[c].len());
        for (r, v) in &self.columns[c] {
            let x = field.from_rational(v)?;
            if !field.is_zero(&x) {
                out.push((*r, x));
            }
        }
        Some(out)
    }

    /// Coordinate dump, one `row col value` line per stored entry, row-major order.
    pub fn dump(&self) -> String {
        let mut entries: Vec<_> = self.entries().collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut s = String::new();
        for (r, c, v) in entries {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }
}
