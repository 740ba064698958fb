//! Incremental row echelon form over an arbitrary field.
//!
//! Vectors are inserted one at a time; each stored row has a leading one at
//! its pivot and zeros at every earlier pivot column. With tracking enabled
//! every stored row also remembers how it was built from the inserted vectors,
//! which is what kernels and solves need.

use super::field::Field;
use super::sparse::SparseVec;

#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    dim: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
    combos: Option<Vec<SparseVec<F::Elem>>>,
    inserted: usize,
}

/// Outcome of inserting one vector.
#[derive(Clone, Debug, PartialEq)]
pub enum Insertion<E> {
    Independent,
    /// Linear relation among inserted vectors (indexed by insertion order)
    /// summing to zero; present only when tracking.
    Dependent(Option<SparseVec<E>>),
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, dim: usize) -> Self {
        Echelon {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_row: vec![None; dim],
            combos: None,
            inserted: 0,
        }
    }

    pub fn with_tracking(field: F, dim: usize) -> Self {
        let mut e = Self::new(field, dim);
        e.combos = Some(Vec::new());
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Pivot columns in the order rows were created.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<&SparseVec<F::Elem>> {
        self.pivot_row[col].map(|r| &self.rows[r])
    }

    /// Reduces a dense vector in place against the stored rows. When `combo`
    /// is given, it accumulates the row multiples that were subtracted,
    /// expressed in terms of inserted vectors.
    fn reduce_dense(&self, acc: &mut [F::Elem], mut combo: Option<&mut Vec<F::Elem>>) {
        let f = &self.field;
        for c in 0..self.dim {
            if f.is_zero(&acc[c]) {
                continue;
            }
            let Some(r) = self.pivot_row[c] else { continue };
            let x = acc[c].clone();
            for (k, v) in &self.rows[r] {
                acc[*k] = f.sub(&acc[*k], &f.mul(&x, v));
            }
            if let (Some(combo), Some(combos)) = (combo.as_deref_mut(), self.combos.as_ref()) {
                for (k, v) in &combos[r] {
                    combo[*k] = f.sub(&combo[*k], &f.mul(&x, v));
                }
            }
        }
    }

    fn densify(&self, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut acc = vec![self.field.zero(); self.dim];
        for (k, x) in v {
            acc[*k] = x.clone();
        }
        acc
    }

    fn sparsify(&self, v: Vec<F::Elem>) -> SparseVec<F::Elem> {
        v.into_iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .collect()
    }

    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Insertion<F::Elem> {
        let index = self.inserted;
        self.inserted += 1;
        let mut acc = self.densify(v);
        let mut combo = self.combos.as_ref().map(|_| {
            let mut c = vec![self.field.zero(); index + 1];
            c[index] = self.field.one();
            c
        });
        self.reduce_dense(&mut acc, combo.as_mut());
        let lead = acc.iter().position(|x| !self.field.is_zero(x));
        let Some(p) = lead else {
            return Insertion::Dependent(combo.map(|c| self.sparsify(c)));
        };
        let inv = self.field.inv(&acc[p]);
        let row: SparseVec<F::Elem> = acc
            .into_iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .map(|(k, x)| (k, self.field.mul(&x, &inv)))
            .collect();
        if let Some(c) = combo {
            let c = c
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !self.field.is_zero(x))
                .map(|(k, x)| (k, self.field.mul(&x, &inv)))
                .collect();
            self.combos.as_mut().expect("tracking").push(c);
        }
        self.pivot_row[p] = Some(self.rows.len());
        self.pivots.push(p);
        self.rows.push(row);
        Insertion::Independent
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the span.
    pub fn residual(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = self.densify(v);
        self.reduce_dense(&mut acc, None);
        self.sparsify(acc)
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.residual(v).is_empty()
    }

    /// Coefficients over the inserted vectors expressing `v`, or `None` if `v`
    /// is outside the span. Requires tracking.
    pub fn express(&self, v: &[(usize, F::Elem)]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        assert!(self.combos.is_some(), "express needs a tracking echelon");
        let mut acc = self.densify(v);
        let mut combo = vec![f.zero(); self.inserted];
        self.reduce_dense(&mut acc, Some(&mut combo));
        if acc.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        // v - Σ (subtracted multiples) = 0, and combo holds minus those multiples.
        Some(combo.iter().map(|x| f.neg(x)).collect())
    }

    /// Fully reduced basis: each row has zeros at every other pivot column.
    /// Rows are returned sorted by pivot.
    pub fn rref(&self) -> Vec<(usize, SparseVec<F::Elem>)> {
        let f = &self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.pivots[r]);
        let mut done: Vec<Option<SparseVec<F::Elem>>> = vec![None; self.rows.len()];
        // Later pivots first, so every row used for back-substitution is final.
        for &r in order.iter().rev() {
            let mut acc = self.densify(&self.rows[r]);
            let p = self.pivots[r];
            for c in p + 1..self.dim {
                if f.is_zero(&acc[c]) {
                    continue;
                }
                let Some(s) = self.pivot_row[c] else { continue };
                let x = acc[c].clone();
                for (k, v) in done[s].as_ref().expect("later pivot reduced") {
                    acc[*k] = f.sub(&acc[*k], &f.mul(&x, v));
                }
            }
            done[r] = Some(self.sparsify(acc));
        }
        order
            .into_iter()
            .map(|r| (self.pivots[r], done[r].take().expect("reduced")))
            .collect()
    }
}
