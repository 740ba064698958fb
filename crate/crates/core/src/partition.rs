//! Integer partitions, the containment order and the diagram surgery used
//! throughout: first-row/first-column removal, meets and joins, strip tests
//! and the two Pieri expansions.
//!
//! Young diagram coordinates are `(row, column)`, both zero-based here.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FihlError, Result};

/// A partition stored as its trimmed, weakly decreasing list of positive parts.
///
/// The zero partition is the empty list and prints as `0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StripAxis {
    /// Remove the first row.
    Row,
    /// Remove the first column.
    Column,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// At most one box per column.
    Horizontal,
    /// At most one box per row.
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieriKind {
    /// Induce with the trivial character: horizontal strips.
    Trivial,
    /// Induce with the sign character: vertical strips.
    Sign,
}

impl Partition {
    /// Builds a partition from parts, dropping trailing zeros.
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(FihlError::Parse {
                what: "partition",
                input: format!("{parts:?}"),
            });
        }
        Ok(Partition(parts))
    }

    /// Convenience constructor for literals; panics on a non-partition.
    pub fn of(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("parts must be weakly decreasing")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Part `i` (zero-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn first_part(&self) -> usize {
        self.part(0)
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        col < self.part(row)
    }

    /// Boxes in row-reading order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    pub fn transpose(&self) -> Self {
        let width = self.first_part();
        Partition((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    pub fn strip_reduce(&self, axis: StripAxis) -> Self {
        match axis {
            StripAxis::Row => Partition(self.0.iter().skip(1).copied().collect()),
            StripAxis::Column => Partition(self.0.iter().filter(|&&p| p > 1).map(|p| p - 1).collect()),
        }
    }

    /// The partition with the first row removed.
    pub fn hs(&self) -> Self {
        self.strip_reduce(StripAxis::Row)
    }

    /// The partition with the first column removed.
    pub fn vstrip(&self) -> Self {
        self.strip_reduce(StripAxis::Column)
    }

    /// Containment of Young diagrams: `self ⪯ other`.
    pub fn leq(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &Partition) -> Self {
        Partition(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn join(&self, other: &Partition) -> Self {
        let n = self.len().max(other.len());
        Partition((0..n).map(|i| self.part(i).max(other.part(i))).collect())
    }

    pub fn meet_join(&self, other: &Partition) -> (Self, Self) {
        (self.meet(other), self.join(other))
    }

    /// Outer corners: boxes with no neighbour to the right or below.
    pub fn outer_corners(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&r| self.part(r + 1) < self.part(r))
            .map(|r| (r, self.part(r) - 1))
            .collect()
    }

    /// Removes a box, which must be an outer corner.
    pub fn remove_corner(&self, row: usize) -> Self {
        let mut parts = self.0.clone();
        parts[row] -= 1;
        Partition::new(parts).expect("removing an outer corner keeps a partition")
    }

    /// Adds a box at the end of `row`; returns `None` if the result is not a partition.
    pub fn add_box(&self, row: usize) -> Option<Self> {
        if row > self.len() || (row > 0 && self.part(row - 1) <= self.part(row)) {
            return None;
        }
        let mut parts = self.0.clone();
        if row == self.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Some(Partition(parts))
    }

    /// Whether `self / inner` is a horizontal or vertical strip, by direct box count.
    pub fn strip_test(&self, inner: &Partition, orientation: Orientation) -> Result<bool> {
        if !inner.leq(self) {
            return Err(FihlError::NotContained {
                inner: inner.clone(),
                outer: self.clone(),
            });
        }
        Ok(match orientation {
            Orientation::Horizontal => (0..self.first_part()).all(|c| {
                (0..self.len())
                    .filter(|&r| inner.part(r) <= c && c < self.part(r))
                    .count()
                    <= 1
            }),
            Orientation::Vertical => (0..self.len()).all(|r| self.part(r) - inner.part(r) <= 1),
        })
    }

    /// `self / inner` is a horizontal strip (false if not contained).
    pub fn is_horizontal_strip_over(&self, inner: &Partition) -> bool {
        self.strip_test(inner, Orientation::Horizontal).unwrap_or(false)
    }

    /// `self / inner` is a vertical strip (false if not contained).
    pub fn is_vertical_strip_over(&self, inner: &Partition) -> bool {
        self.strip_test(inner, Orientation::Vertical).unwrap_or(false)
    }

    /// All partitions contained in `self`, in enumeration order of sizes then reverse-lex.
    pub fn subpartitions(&self) -> Vec<Partition> {
        fn rec(outer: &Partition, row: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if row == outer.len() {
                out.push(Partition::new(cur.clone()).expect("built decreasing"));
                return;
            }
            let hi = outer.part(row).min(cap);
            for v in (0..=hi).rev() {
                cur.push(v);
                rec(outer, row + 1, v, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self, 0, usize::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out.dedup();
        out
    }
}

/// All partitions of `n`, in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Irreducible constituents of `S^ν` induced up with `n` extra points carrying
/// the trivial or sign character. Each occurs with multiplicity one.
pub fn pieri_expand(nu: &Partition, n: usize, kind: PieriKind) -> Vec<Partition> {
    let orientation = match kind {
        PieriKind::Trivial => Orientation::Horizontal,
        PieriKind::Sign => Orientation::Vertical,
    };
    partitions_of(nu.size() + n)
        .into_iter()
        .filter(|mu| nu.leq(mu) && mu.strip_test(nu, orientation).unwrap_or(false))
        .collect()
}

impl Ord for Partition {
    /// Smaller sizes first; within a size, reverse-lexicographic, so `(n)` comes first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = FihlError;

    fn from_str(s: &str) -> Result<Self> {
        let err = || FihlError::Parse {
            what: "partition",
            input: s.to_string(),
        };
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(err());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| err()))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts).map_err(|_| err())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A skew shape `outer / inner` with `inner ⪯ outer`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !inner.leq(&outer) {
            return Err(FihlError::NotContained { inner, outer });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(shape: Partition) -> Self {
        SkewShape {
            outer: shape,
            inner: Partition::empty(),
        }
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    pub fn size(&self) -> usize {
        self.outer.size() - self.inner.size()
    }

    pub fn contains_box(&self, row: usize, col: usize) -> bool {
        self.outer.contains_box(row, col) && !self.inner.contains_box(row, col)
    }

    /// Boxes in row-reading order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        (0..self.outer.len())
            .flat_map(|r| (self.inner.part(r)..self.outer.part(r)).map(move |c| (r, c)))
            .collect()
    }

    pub fn is_horizontal_strip(&self) -> bool {
        self.outer.is_horizontal_strip_over(&self.inner)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    /// Partition numbers from Euler's pentagonal recurrence.
    fn partition_number(n: usize) -> usize {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for m in 1..=n {
            let mut total = 0i64;
            for k in 1.. {
                let k = k as i64;
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * table[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    total += sign * table[m - g2];
                }
            }
            table[m] = total;
        }
        table[n] as usize
    }

    #[test]
    fn enumeration_small_cases() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(6).len(), 11);
        for n in 0..=12 {
            let all = partitions_of(n);
            assert_eq!(all.len(), partition_number(n), "n = {n}");
            let mut sorted = all.clone();
            sorted.sort();
            assert_eq!(sorted, all, "enumeration order is the Ord order");
            sorted.dedup();
            assert_eq!(sorted.len(), all.len());
        }
    }

    #[test]
    fn containment_examples() {
        assert!(p(&[1, 1]).leq(&p(&[4, 2, 1])));
        assert!(p(&[2, 1]).leq(&p(&[2, 1])));
        assert!(!p(&[3]).leq(&p(&[2, 2])));
        assert!(Partition::empty().leq(&p(&[1])));
    }

    #[test]
    fn strip_reduce_examples() {
        assert_eq!(p(&[4, 2, 1]).strip_reduce(StripAxis::Row), p(&[2, 1]));
        assert_eq!(p(&[4, 2, 1]).strip_reduce(StripAxis::Column), p(&[3, 1]));
        assert_eq!(Partition::empty().strip_reduce(StripAxis::Row), Partition::empty());
    }

    #[test]
    fn meet_join_examples() {
        assert_eq!(p(&[2, 1, 1]).meet_join(&p(&[3, 1])), (p(&[2, 1]), p(&[3, 1, 1])));
        let l = p(&[3, 2]);
        assert_eq!(l.meet_join(&l), (l.clone(), l.clone()));
        assert_eq!(p(&[3]).meet_join(&Partition::empty()), (Partition::empty(), p(&[3])));
    }

    #[test]
    fn meet_join_are_extremal_bounds() {
        // brute-force greatest lower / least upper bound over all small partitions
        let all: Vec<Partition> = (0..=6).flat_map(partitions_of).collect();
        let small: Vec<Partition> = (0..=4).flat_map(partitions_of).collect();
        for l in &small {
            for m in &small {
                let (meet, join) = l.meet_join(m);
                assert!(meet.leq(l) && meet.leq(m));
                assert!(l.leq(&join) && m.leq(&join));
                for t in &all {
                    if t.leq(l) && t.leq(m) {
                        assert!(t.leq(&meet));
                    }
                    if l.leq(t) && m.leq(t) {
                        assert!(join.leq(t));
                    }
                }
            }
        }
    }

    #[test]
    fn strip_test_examples() {
        let l = p(&[4, 2, 1]);
        assert!(l.strip_test(&p(&[2, 1]), Orientation::Horizontal).unwrap());
        assert!(!l.strip_test(&p(&[1, 1]), Orientation::Horizontal).unwrap());
        assert_eq!(
            l.strip_test(&p(&[2, 1]), Orientation::Vertical).unwrap(),
            p(&[3, 2, 1, 1]).strip_test(&p(&[2, 1]), Orientation::Horizontal).unwrap()
        );
        assert!(matches!(
            p(&[2]).strip_test(&p(&[3]), Orientation::Horizontal),
            Err(FihlError::NotContained { .. })
        ));
    }

    #[test]
    fn strip_test_matches_reduction_criterion() {
        for n in 0..=8 {
            for l in partitions_of(n) {
                for mu in l.subpartitions() {
                    let h = l.strip_test(&mu, Orientation::Horizontal).unwrap();
                    assert_eq!(h, l.hs().leq(&mu), "{l}/{mu}");
                    let v = l.strip_test(&mu, Orientation::Vertical).unwrap();
                    assert_eq!(v, l.vstrip().leq(&mu), "{l}/{mu}");
                    let vt = l.transpose().strip_test(&mu.transpose(), Orientation::Horizontal).unwrap();
                    assert_eq!(v, vt);
                }
            }
        }
    }

    #[test]
    fn transpose_involution_and_order() {
        for n in 0..=10 {
            for l in partitions_of(n) {
                assert_eq!(l.transpose().transpose(), l);
                assert_eq!(l.transpose().size(), n);
            }
        }
        for n in 0..=6 {
            for l in partitions_of(n) {
                for m in partitions_of(n.saturating_sub(1)) {
                    assert_eq!(m.leq(&l), m.transpose().leq(&l.transpose()));
                }
            }
        }
    }

    #[test]
    fn subpartitions_are_exactly_the_contained_ones() {
        let l = p(&[3, 2, 2]);
        let subs = l.subpartitions();
        let brute: Vec<Partition> = (0..=7).flat_map(partitions_of).filter(|m| m.leq(&l)).collect();
        assert_eq!(subs, brute);
    }

    #[test]
    fn pieri_examples() {
        assert_eq!(pieri_expand(&p(&[1]), 1, PieriKind::Sign), vec![p(&[2]), p(&[1, 1])]);
        assert_eq!(pieri_expand(&p(&[1]), 1, PieriKind::Trivial), vec![p(&[2]), p(&[1, 1])]);
        let l = p(&[3, 1]);
        assert_eq!(pieri_expand(&l, 0, PieriKind::Sign), vec![l.clone()]);
        assert_eq!(pieri_expand(&l, 0, PieriKind::Trivial), vec![l]);
        assert_eq!(pieri_expand(&Partition::empty(), 3, PieriKind::Sign), vec![p(&[1, 1, 1])]);
    }

    #[test]
    fn serialization_format() {
        assert_eq!(p(&[4, 2, 1]).to_string(), "4,2,1");
        assert_eq!(Partition::empty().to_string(), "0");
        assert_eq!("4,2,1".parse::<Partition>().unwrap(), p(&[4, 2, 1]));
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("1,2".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        (0usize..=9).prop_flat_map(|n| {
            let all = partitions_of(n);
            (0..all.len()).prop_map(move |i| all[i].clone())
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(l in arb_partition()) {
            prop_assert_eq!(l.to_string().parse::<Partition>().unwrap(), l);
        }

        #[test]
        fn meet_join_transpose_duality(l in arb_partition(), m in arb_partition()) {
            let (meet, join) = l.meet_join(&m);
            prop_assert_eq!(meet.transpose(), l.transpose().meet(&m.transpose()));
            prop_assert_eq!(join.transpose(), l.transpose().join(&m.transpose()));
        }
    }
}
