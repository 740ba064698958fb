//! Multisets of irreducibles `S^λ ⊠ S^μ` of `Sym(b) × Sym(a)`.
//!
//! Tables over a single symmetric group use the empty partition as `μ`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::partition::Partition;
use crate::tableau::dim_irrep;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DecompositionTable(BTreeMap<(Partition, Partition), i64>);

#[derive(Serialize, Deserialize)]
struct Entry {
    lambda: Partition,
    mu: Partition,
    mult: i64,
}

impl DecompositionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `mult` to the entry; entries reaching zero are removed.
    pub fn add(&mut self, lambda: Partition, mu: Partition, mult: i64) {
        let key = (lambda, mu);
        let v = self.0.get(&key).copied().unwrap_or(0) + mult;
        if v == 0 {
            self.0.remove(&key);
        } else {
            self.0.insert(key, v);
        }
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> i64 {
        self.0
            .get(&(lambda.clone(), mu.clone()))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Partition, i64)> {
        self.0.iter().map(|((l, m), v)| (l, m, *v))
    }

    pub fn keys(&self) -> impl Iterator<Item = &(Partition, Partition)> {
        self.0.keys()
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let mut out = Self::new();
        for (l, m, v) in self.iter() {
            out.add(l.clone(), m.clone(), v * factor);
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (l, m, v) in other.iter() {
            out.add(l.clone(), m.clone(), v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    /// Entrywise `self <= other`.
    pub fn is_submultiset_of(&self, other: &Self) -> bool {
        self.iter().all(|(l, m, v)| v <= other.get(l, m))
    }

    pub fn all_multiplicity_one(&self) -> bool {
        self.iter().all(|(_, _, v)| v == 1)
    }

    /// Total dimension `Σ mult · dim S^λ · dim S^μ`.
    pub fn dimension(&self) -> i128 {
        self.iter()
            .map(|(l, m, v)| v as i128 * (dim_irrep(l) * dim_irrep(m)) as i128)
            .sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let entries: Vec<Entry> = self
            .iter()
            .map(|(l, m, v)| Entry {
                lambda: l.clone(),
                mu: m.clone(),
                mult: v,
            })
            .collect();
        serde_json::to_value(entries).expect("entries serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("entries serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        let entries: Vec<Entry> = serde_json::from_str(s)?;
        Ok(entries
            .into_iter()
            .map(|e| (e.lambda, e.mu, e.mult))
            .collect())
    }

    /// `lambda;mu;mult` rows under a header. Partitions keep their commas, hence `;`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("lambda;mu;mult\n");
        for (l, m, v) in self.iter() {
            let _ = writeln!(s, "{l};{m};{v}");
        }
        s
    }
}

impl FromIterator<(Partition, Partition, i64)> for DecompositionTable {
    fn from_iter<I: IntoIterator<Item = (Partition, Partition, i64)>>(iter: I) -> Self {
        let mut t = Self::new();
        for (l, m, v) in iter {
            t.add(l, m, v);
        }
        t
    }
}

impl Serialize for DecompositionTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(serializer)
    }
}
