//! Standard (skew) tableaux: enumeration, the left-to-right filling of a
//! horizontal strip, axial distances, Coxeter moves, and the splitting of
//! `Tab(λ; ν)` into `Tab(ν) × Tab(λ/ν)`.

use std::fmt;

use crate::error::{FihlError, Result};
use crate::partition::{Partition, SkewShape};

/// A standard filling of a skew shape by `1..=m`.
///
/// Both directions of the labelling are stored: `cells[label - 1]` is the box
/// holding `label`, and `grid[row][col]` is the label in a box (0 for holes).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: SkewShape,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<usize>>,
}

/// Outcome of applying a Coxeter generator to a standard tableau.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoxeterMove {
    /// `i` and `i+1` are adjacent (same row or same column); `s_i T` is not standard.
    SameRow,
    Swapped(StandardTableau),
}

impl StandardTableau {
    /// Builds a tableau from the box of each label; checks standardness.
    pub fn from_cells(shape: SkewShape, cells: Vec<(usize, usize)>) -> Result<Self> {
        if cells.len() != shape.size() {
            return Err(FihlError::SizeMismatch {
                expected: shape.size(),
                got: cells.len(),
            });
        }
        let mut grid: Vec<Vec<usize>> = (0..shape.outer().len())
            .map(|r| vec![0; shape.outer().part(r)])
            .collect();
        for (k, &(r, c)) in cells.iter().enumerate() {
            if !shape.contains_box(r, c) || grid[r][c] != 0 {
                return Err(FihlError::InvalidContext(format!(
                    "box ({r},{c}) is outside {shape} or filled twice"
                )));
            }
            grid[r][c] = k + 1;
        }
        let t = StandardTableau { shape, cells, grid };
        if !t.is_standard() {
            return Err(FihlError::InvalidContext(format!("filling is not standard: {t}")));
        }
        Ok(t)
    }

    /// Builds a tableau from rows of labels; holes (inner boxes) are omitted from each row.
    pub fn from_rows(shape: SkewShape, rows: &[Vec<usize>]) -> Result<Self> {
        let mut cells = vec![(usize::MAX, usize::MAX); shape.size()];
        for (r, row) in rows.iter().enumerate() {
            let start = shape.inner().part(r);
            for (k, &label) in row.iter().enumerate() {
                if label == 0 || label > cells.len() {
                    return Err(FihlError::UnknownLabel(label));
                }
                cells[label - 1] = (r, start + k);
            }
        }
        Self::from_cells(shape, cells)
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// The box holding `label` (1-based).
    pub fn cell(&self, label: usize) -> Result<(usize, usize)> {
        if label == 0 || label > self.cells.len() {
            return Err(FihlError::UnknownLabel(label));
        }
        Ok(self.cells[label - 1])
    }

    pub fn cells(&self) -> &[(usize, usize)] {
        &self.cells
    }

    pub fn label_at(&self, row: usize, col: usize) -> Option<usize> {
        self.grid
            .get(row)
            .and_then(|r| r.get(col))
            .copied()
            .filter(|&l| l != 0)
    }

    pub fn is_standard(&self) -> bool {
        self.cells.iter().enumerate().all(|(k, &(r, c))| {
            let label = k + 1;
            let right_ok = self.label_at(r, c + 1).is_none_or(|l| l > label);
            let below_ok = self.label_at(r + 1, c).is_none_or(|l| l > label);
            right_ok && below_ok
        })
    }

    /// Content difference `(v_j - u_j) - (v_i - u_i)`.
    pub fn axial(&self, j: usize, i: usize) -> Result<i64> {
        let (rj, cj) = self.cell(j)?;
        let (ri, ci) = self.cell(i)?;
        Ok((cj as i64 - rj as i64) - (ci as i64 - ri as i64))
    }

    /// `r_j = a(j+1, j)`.
    pub fn r(&self, j: usize) -> Result<i64> {
        self.axial(j + 1, j)
    }

    /// Row-reading word: labels row by row, left to right.
    pub fn reading_word(&self) -> Vec<usize> {
        self.grid.iter().flat_map(|row| row.iter().copied().filter(|&l| l != 0)).collect()
    }

    /// Exchanges labels `i` and `i+1` without checking standardness.
    fn swapped(&self, i: usize) -> StandardTableau {
        let mut t = self.clone();
        t.cells.swap(i - 1, i);
        let (r1, c1) = t.cells[i - 1];
        let (r2, c2) = t.cells[i];
        t.grid[r1][c1] = i;
        t.grid[r2][c2] = i + 1;
        t
    }

    pub fn coxeter_apply(&self, i: usize) -> Result<CoxeterMove> {
        if i == 0 || i >= self.size() {
            return Err(FihlError::IndexOutOfRange {
                index: i,
                bound: self.size(),
            });
        }
        if self.r(i)?.abs() == 1 {
            Ok(CoxeterMove::SameRow)
        } else {
            Ok(CoxeterMove::Swapped(self.swapped(i)))
        }
    }

    /// Restriction to the boxes of `sub` (a skew shape whose boxes are a label
    /// interval of `self`), relabelled to start at 1.
    pub fn restrict(&self, sub: &SkewShape) -> Result<StandardTableau> {
        let boxes = sub.boxes();
        let mut labels: Vec<usize> = boxes
            .iter()
            .map(|&(r, c)| {
                self.label_at(r, c).ok_or_else(|| {
                    FihlError::InvalidContext(format!("box ({r},{c}) of {sub} is not in {}", self.shape))
                })
            })
            .collect::<Result<_>>()?;
        labels.sort_unstable();
        let offset = labels.first().copied().unwrap_or(1) - 1;
        if labels.iter().enumerate().any(|(k, &l)| l != offset + k + 1) {
            return Err(FihlError::InvalidContext(format!(
                "labels of {sub} do not form an interval in {self}"
            )));
        }
        let cells = labels.iter().map(|&l| self.cells[l - 1]).collect();
        StandardTableau::from_cells(sub.clone(), cells)
    }
}

impl fmt::Display for StandardTableau {
    /// Rows top to bottom joined by ` / `, holes shown as `.`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&l| if l == 0 { ".".to_string() } else { l.to_string() })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// All standard tableaux of a skew shape, sorted by row-reading word.
pub fn standard_tableaux(shape: &SkewShape) -> Vec<StandardTableau> {
    let m = shape.size();
    let rows = shape.outer().len();
    // fill[r] = current right end of the filled region in row r
    let mut fill: Vec<usize> = (0..rows).map(|r| shape.inner().part(r)).collect();
    let mut cells = Vec::with_capacity(m);
    let mut out = Vec::new();

    fn rec(
        shape: &SkewShape,
        fill: &mut Vec<usize>,
        cells: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cells.len() == shape.size() {
            out.push(cells.clone());
            return;
        }
        for r in 0..fill.len() {
            let c = fill[r];
            let fits_row = c < shape.outer().part(r);
            let above_filled = r == 0 || fill[r - 1] > c;
            if fits_row && above_filled {
                fill[r] += 1;
                cells.push((r, c));
                rec(shape, fill, cells, out);
                cells.pop();
                fill[r] -= 1;
            }
        }
    }

    let mut raw = Vec::new();
    rec(shape, &mut fill, &mut cells, &mut raw);
    for c in raw {
        out.push(StandardTableau::from_cells(shape.clone(), c).expect("backtracking builds standard fillings"));
    }
    out.sort_by_cached_key(|t| t.reading_word());
    out
}

/// The filling of a horizontal strip increasing from left to right.
pub fn t_rev(shape: &SkewShape) -> Result<StandardTableau> {
    if !shape.is_horizontal_strip() {
        return Err(FihlError::NotHorizontalStrip {
            outer: shape.outer().clone(),
            inner: shape.inner().clone(),
        });
    }
    let mut boxes = shape.boxes();
    boxes.sort_by_key(|&(r, c)| (c, r));
    StandardTableau::from_cells(shape.clone(), boxes)
}

/// `dim S^λ` by the hook-length formula.
pub fn dim_irrep(lambda: &Partition) -> u128 {
    let n = lambda.size();
    let conj = lambda.transpose();
    let mut hooks: Vec<u128> = lambda
        .boxes()
        .map(|(r, c)| (lambda.part(r) - c + conj.part(c) - r - 1) as u128)
        .collect();
    // divide as we go to stay well inside u128
    let mut num: Vec<u128> = (1..=n as u128).collect();
    let mut result: u128 = 1;
    for h in hooks.iter_mut() {
        for x in num.iter_mut() {
            let g = gcd(*x, *h);
            *x /= g;
            *h /= g;
            if *h == 1 {
                break;
            }
        }
        debug_assert_eq!(*h, 1);
    }
    for x in num {
        result *= x;
    }
    result
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `Tab(λ; ν)`: standard tableaux of shape `λ` whose restriction to `ν` uses `1..=|ν|`.
pub fn tab_relative(lambda: &Partition, nu: &Partition) -> Result<Vec<StandardTableau>> {
    if !nu.leq(lambda) {
        return Err(FihlError::NotContained {
            inner: nu.clone(),
            outer: lambda.clone(),
        });
    }
    let k = nu.size();
    Ok(standard_tableaux(&SkewShape::straight(lambda.clone()))
        .into_iter()
        .filter(|t| t.cells()[..k].iter().all(|&(r, c)| nu.contains_box(r, c)))
        .collect())
}

/// Splits `T ∈ Tab(λ; ν)` into `(T|_ν, T|_{λ/ν})`, the latter relabelled from 1.
pub fn split_relative(t: &StandardTableau, nu: &Partition) -> Result<(StandardTableau, StandardTableau)> {
    let lambda = t.shape().outer().clone();
    let inner = t.restrict(&SkewShape::new(nu.clone(), Partition::empty())?)?;
    if inner.cells() != &t.cells()[..nu.size()] {
        return Err(FihlError::InvalidContext(format!("{t} is not in Tab({lambda}; {nu})")));
    }
    let outer = t.restrict(&SkewShape::new(lambda, nu.clone())?)?;
    Ok((inner, outer))
}

/// Inverse of [`split_relative`].
pub fn join_relative(inner: &StandardTableau, skew: &StandardTableau) -> Result<StandardTableau> {
    let nu = inner.shape().outer();
    if skew.shape().inner() != nu || !inner.shape().inner().is_empty() {
        return Err(FihlError::InvalidContext(format!(
            "cannot join {} with {}",
            inner.shape(),
            skew.shape()
        )));
    }
    let mut cells = inner.cells().to_vec();
    cells.extend_from_slice(skew.cells());
    StandardTableau::from_cells(SkewShape::straight(skew.shape().outer().clone()), cells)
}

/// The bijection `Tab(λ; ν) ↔ Tab(ν) × Tab(λ/ν)` as explicit triples.
pub fn relative_split(
    lambda: &Partition,
    nu: &Partition,
) -> Result<Vec<(StandardTableau, (StandardTableau, StandardTableau))>> {
    tab_relative(lambda, nu)?
        .into_iter()
        .map(|t| {
            let parts = split_relative(&t, nu)?;
            Ok((t, parts))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions_of;
    use crate::perm::factorial;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    fn skew(outer: &[usize], inner: &[usize]) -> SkewShape {
        SkewShape::new(p(outer), p(inner)).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(standard_tableaux(&SkewShape::straight(p(&[2, 1]))).len(), 2);
        for n in 1..6 {
            assert_eq!(standard_tableaux(&SkewShape::straight(p(&[n]))).len(), 1);
        }
        // a single row of 2 over a single box: skew shape (2,1)/(1) has 2 fillings
        assert_eq!(standard_tableaux(&skew(&[2, 1], &[1])).len(), 2);
        assert_eq!(standard_tableaux(&skew(&[1], &[1])).len(), 1);
    }

    #[test]
    fn every_enumerated_tableau_is_standard_and_distinct() {
        for n in 0..=7 {
            for l in partitions_of(n) {
                for mu in l.subpartitions() {
                    let shape = SkewShape::new(l.clone(), mu).unwrap();
                    let all = standard_tableaux(&shape);
                    assert!(all.iter().all(|t| t.is_standard()));
                    let mut words: Vec<_> = all.iter().map(|t| t.reading_word()).collect();
                    let sorted = words.clone();
                    words.sort();
                    assert_eq!(words, sorted, "sorted by reading word");
                    words.dedup();
                    assert_eq!(words.len(), all.len());
                }
            }
        }
    }

    #[test]
    fn t_rev_example_shape() {
        let shape = skew(&[5, 2, 1, 1], &[3, 1, 1]);
        let t = t_rev(&shape).unwrap();
        assert_eq!(t.cell(1).unwrap(), (3, 0));
        assert_eq!(t.cell(2).unwrap(), (1, 1));
        assert_eq!(t.cell(3).unwrap(), (0, 3));
        assert_eq!(t.cell(4).unwrap(), (0, 4));
        assert_eq!(t.to_string(), ". . . 3 4 / . 2 / . / 1");
        assert!(standard_tableaux(&shape).contains(&t));
        let row = t_rev(&SkewShape::straight(p(&[4]))).unwrap();
        assert_eq!(row.reading_word(), vec![1, 2, 3, 4]);
        assert!(matches!(
            t_rev(&skew(&[4, 2, 1], &[1, 1])),
            Err(FihlError::NotHorizontalStrip { .. })
        ));
    }

    #[test]
    fn t_rev_is_the_unique_all_positive_filling() {
        for n in 0..=8 {
            for l in partitions_of(n) {
                for mu in l.subpartitions() {
                    let shape = SkewShape::new(l.clone(), mu).unwrap();
                    let positive: Vec<_> = standard_tableaux(&shape)
                        .into_iter()
                        .filter(|t| {
                            (1..=t.size()).all(|j| (1..j).all(|i| t.axial(j, i).unwrap() > 0))
                        })
                        .collect();
                    if shape.is_horizontal_strip() {
                        assert_eq!(positive, vec![t_rev(&shape).unwrap()], "{shape}");
                    } else {
                        assert!(positive.is_empty(), "{shape}");
                    }
                }
            }
        }
    }

    #[test]
    fn axial_examples() {
        let row = StandardTableau::from_rows(SkewShape::straight(p(&[2])), &[vec![1, 2]]).unwrap();
        assert_eq!(row.axial(2, 1).unwrap(), 1);
        let col = StandardTableau::from_rows(SkewShape::straight(p(&[1, 1])), &[vec![1], vec![2]]).unwrap();
        assert_eq!(col.axial(2, 1).unwrap(), -1);
        assert!(matches!(col.axial(3, 1), Err(FihlError::UnknownLabel(3))));
        for t in standard_tableaux(&SkewShape::straight(p(&[3, 2, 1]))) {
            assert_eq!(t.axial(3, 1).unwrap(), t.r(1).unwrap() + t.r(2).unwrap());
            for k in 1..=6 {
                for j in 1..=6 {
                    for i in 1..=6 {
                        assert_eq!(t.axial(k, i).unwrap(), t.axial(k, j).unwrap() + t.axial(j, i).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn coxeter_examples() {
        let row = StandardTableau::from_rows(SkewShape::straight(p(&[2])), &[vec![1, 2]]).unwrap();
        assert_eq!(row.coxeter_apply(1).unwrap(), CoxeterMove::SameRow);
        let col = StandardTableau::from_rows(SkewShape::straight(p(&[1, 1])), &[vec![1], vec![2]]).unwrap();
        assert_eq!(col.coxeter_apply(1).unwrap(), CoxeterMove::SameRow);
        // 1 2 / 3: r_2 = content(3) - content(2) = -1 - 1 = -2
        let t = StandardTableau::from_rows(SkewShape::straight(p(&[2, 1])), &[vec![1, 2], vec![3]]).unwrap();
        assert_eq!(t.r(2).unwrap(), -2);
        let swapped = StandardTableau::from_rows(SkewShape::straight(p(&[2, 1])), &[vec![1, 3], vec![2]]).unwrap();
        assert_eq!(t.coxeter_apply(2).unwrap(), CoxeterMove::Swapped(swapped.clone()));
        assert_eq!(swapped.r(2).unwrap(), 2);
        assert!(matches!(t.coxeter_apply(3), Err(FihlError::IndexOutOfRange { .. })));
        assert!(matches!(t.coxeter_apply(0), Err(FihlError::IndexOutOfRange { .. })));
    }

    #[test]
    fn coxeter_is_an_involution_negating_r() {
        for n in 2..=7 {
            for l in partitions_of(n) {
                for t in standard_tableaux(&SkewShape::straight(l)) {
                    for i in 1..n {
                        if let CoxeterMove::Swapped(s) = t.coxeter_apply(i).unwrap() {
                            assert!(s.is_standard());
                            assert_eq!(s.r(i).unwrap(), -t.r(i).unwrap());
                            assert_eq!(s.coxeter_apply(i).unwrap(), CoxeterMove::Swapped(t.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn relative_split_examples() {
        let l = p(&[3, 1]);
        let pairs = relative_split(&l, &l).unwrap();
        assert_eq!(pairs.len(), standard_tableaux(&SkewShape::straight(l.clone())).len());
        for (_, (_, s)) in &pairs {
            assert_eq!(s.size(), 0);
        }
        assert_eq!(relative_split(&p(&[2, 1]), &p(&[1])).unwrap().len(), 2);
        assert!(relative_split(&p(&[2]), &p(&[1, 1])).is_err());
    }

    #[test]
    fn relative_split_is_a_bijection() {
        for n in 0..=6 {
            for l in partitions_of(n) {
                for nu in l.subpartitions() {
                    let pairs = relative_split(&l, &nu).unwrap();
                    let n_inner = standard_tableaux(&SkewShape::straight(nu.clone())).len();
                    let n_skew = standard_tableaux(&SkewShape::new(l.clone(), nu.clone()).unwrap()).len();
                    assert_eq!(pairs.len(), n_inner * n_skew, "{l} ; {nu}");
                    for (t, (inner, skew)) in &pairs {
                        assert_eq!(&join_relative(inner, skew).unwrap(), t);
                    }
                }
            }
        }
    }

    #[test]
    fn hook_length_dimension() {
        assert_eq!(dim_irrep(&p(&[5])), 1);
        assert_eq!(dim_irrep(&p(&[2, 1])), 2);
        assert_eq!(dim_irrep(&Partition::empty()), 1);
        for n in 0..=10 {
            let total: u128 = partitions_of(n).iter().map(|l| dim_irrep(l).pow(2)).sum();
            assert_eq!(total, factorial(n));
        }
        for n in 0..=8 {
            for l in partitions_of(n) {
                assert_eq!(dim_irrep(&l), standard_tableaux(&SkewShape::straight(l.clone())).len() as u128);
            }
        }
    }
}
