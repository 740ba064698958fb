//! The sets `𝔐(λ, μ)`, critical pairs, the `(γ, δ)` parametrisation and the
//! transpose duality between bidegrees `(a, b)` and `(b, a)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decomposition::DecompositionTable;
use crate::error::{FihlError, Result};
use crate::partition::{partitions_of, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MMethod {
    Brute,
    Interval,
}

/// `𝔐(λ, μ) = {ν : hs λ ⪯ ν ⪯ λ, vstrip μ ⪯ ν ⪯ μ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSet {
    pub lambda: Partition,
    pub mu: Partition,
    /// Sorted in partition order.
    pub members: Vec<Partition>,
    /// Smallest member `ν(λ, μ)`, when the set is nonempty.
    pub floor: Option<Partition>,
}

impl MSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn in_m(lambda: &Partition, mu: &Partition, nu: &Partition) -> bool {
    lambda.hs().leq(nu) && mu.vstrip().leq(nu) && nu.leq(lambda) && nu.leq(mu)
}

/// Outer corners of `λ ∩ μ` that may be removed while staying in `𝔐`: no
/// box of `μ` to the right and no box of `λ` below. Scanned right to left.
pub fn removable_corners(lambda: &Partition, mu: &Partition) -> Vec<(usize, usize)> {
    let meet = lambda.meet(mu);
    let mut corners: Vec<(usize, usize)> = meet
        .outer_corners()
        .into_iter()
        .filter(|&(r, c)| !mu.contains_box(r, c + 1) && !lambda.contains_box(r + 1, c))
        .collect();
    corners.sort_by(|x, y| y.1.cmp(&x.1));
    corners
}

pub fn m_set(lambda: &Partition, mu: &Partition, method: MMethod) -> MSet {
    let meet = lambda.meet(mu);
    let members: Vec<Partition> = match method {
        MMethod::Brute => meet
            .subpartitions()
            .into_iter()
            .filter(|nu| in_m(lambda, mu, nu))
            .collect(),
        MMethod::Interval => {
            if !in_m(lambda, mu, &meet) {
                Vec::new()
            } else {
                let corners = removable_corners(lambda, mu);
                let mut out = Vec::with_capacity(1 << corners.len());
                for mask in 0u32..(1 << corners.len()) {
                    let mut parts = meet.parts().to_vec();
                    for (k, &(r, _)) in corners.iter().enumerate() {
                        if mask & (1 << k) != 0 {
                            parts[r] -= 1;
                        }
                    }
                    out.push(Partition::new(parts).expect("removing outer corners"));
                }
                out.sort();
                out
            }
        }
    };
    let floor = members
        .iter()
        .min_by_key(|nu| nu.size())
        .cloned();
    MSet {
        lambda: lambda.clone(),
        mu: mu.clone(),
        members,
        floor,
    }
}

/// Both methods, required to agree.
pub fn m_set_checked(lambda: &Partition, mu: &Partition) -> Result<MSet> {
    let brute = m_set(lambda, mu, MMethod::Brute);
    let interval = m_set(lambda, mu, MMethod::Interval);
    if brute != interval {
        return Err(FihlError::Invariant(format!(
            "M({lambda}, {mu}) differs: brute {:?}, interval {:?}",
            brute.members, interval.members
        )));
    }
    Ok(interval)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CritPair {
    pub lambda: Partition,
    pub mu: Partition,
    /// Homological degree `|μ / (λ ∩ μ)|`.
    pub degree: usize,
}

impl CritPair {
    fn unchecked(lambda: Partition, mu: Partition) -> Self {
        let degree = mu.size() - lambda.meet(&mu).size();
        CritPair { lambda, mu, degree }
    }
}

pub fn is_critical(lambda: &Partition, mu: &Partition) -> bool {
    m_set(lambda, mu, MMethod::Interval).len() == 1
}

pub fn crit_pair(lambda: &Partition, mu: &Partition) -> Result<CritPair> {
    if !is_critical(lambda, mu) {
        return Err(FihlError::NotCritical {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    Ok(CritPair::unchecked(lambda.clone(), mu.clone()))
}

/// `𝔠rit(a, b)`: pairs `λ ⊢ b`, `μ ⊢ a` with `𝔐(λ, μ) = {λ ∩ μ}`.
pub fn crit_set(a: usize, b: usize) -> Vec<CritPair> {
    let mut out = Vec::new();
    for lambda in partitions_of(b) {
        for mu in partitions_of(a) {
            if is_critical(&lambda, &mu) {
                out.push(CritPair::unchecked(lambda.clone(), mu));
            }
        }
    }
    out
}

fn first_rows(p: &Partition, s: usize) -> Partition {
    Partition::new(p.parts()[..s.min(p.len())].to_vec()).expect("prefix of a partition")
}

fn first_columns(p: &Partition, s: usize) -> Partition {
    Partition::new(p.parts().iter().map(|&x| x.min(s)).collect::<Vec<_>>())
        .expect("truncation of a partition")
}

/// `λ = γ ∪ vstrip δ`, `μ = hs γ ∪ δ`, subject to `hs γ ∩ vstrip δ = γ ∩ δ`.
pub fn encode(gamma: &Partition, delta: &Partition) -> Result<CritPair> {
    if gamma.hs().meet(&delta.vstrip()) != gamma.meet(delta) {
        return Err(FihlError::CodecCondition(format!(
            "hs({gamma}) ∩ vstrip({delta}) ≠ {gamma} ∩ {delta}"
        )));
    }
    let lambda = gamma.join(&delta.vstrip());
    let mu = gamma.hs().join(delta);
    if !is_critical(&lambda, &mu) {
        return Err(FihlError::Invariant(format!(
            "encoding ({gamma}, {delta}) gave the non-critical pair ({lambda}, {mu})"
        )));
    }
    Ok(CritPair::unchecked(lambda, mu))
}

/// `δ`: the shortest prefix of rows of `μ` containing `μ / (λ ∩ μ)`;
/// `γ`: the narrowest prefix of columns of `λ` containing `λ / (λ ∩ μ)`.
pub fn decode(pair: &CritPair) -> Result<(Partition, Partition)> {
    let (lambda, mu) = (&pair.lambda, &pair.mu);
    if !is_critical(lambda, mu) {
        return Err(FihlError::NotCritical {
            lambda: lambda.clone(),
            mu: mu.clone(),
        });
    }
    let meet = lambda.meet(mu);
    let rows = mu
        .boxes()
        .filter(|&(r, c)| !meet.contains_box(r, c))
        .map(|(r, _)| r + 1)
        .max()
        .unwrap_or(0);
    let cols = lambda
        .boxes()
        .filter(|&(r, c)| !meet.contains_box(r, c))
        .map(|(_, c)| c + 1)
        .max()
        .unwrap_or(0);
    Ok((first_columns(lambda, cols), first_rows(mu, rows)))
}

/// `(λ, μ) ↦ (μ†, λ†)`, from `𝔠rit(a, b)` to `𝔠rit(b, a)`.
pub fn dagger_dual(pair: &CritPair) -> CritPair {
    CritPair::unchecked(pair.mu.transpose(), pair.lambda.transpose())
}

/// Every `(γ, δ)` satisfying the codec condition with `|γ| + |δ| <= max_total`.
pub fn codec_domain(max_total: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for total in 0..=max_total {
        for g in 0..=total {
            for gamma in partitions_of(g) {
                for delta in partitions_of(total - g) {
                    if gamma.hs().meet(&delta.vstrip()) == gamma.meet(&delta) {
                        out.push((gamma.clone(), delta));
                    }
                }
            }
        }
    }
    out
}

/// Conjectured homology: each critical pair contributes once, in its degree.
pub fn homology_prediction(a: usize, b: usize) -> BTreeMap<usize, DecompositionTable> {
    let mut out: BTreeMap<usize, DecompositionTable> = BTreeMap::new();
    for pair in crit_set(a, b) {
        out.entry(pair.degree)
            .or_default()
            .add(pair.lambda, pair.mu, 1);
    }
    out
}

/// `Σ_{crit} (-1)^degree [S^λ ⊠ S^μ]`.
pub fn crit_euler(a: usize, b: usize) -> DecompositionTable {
    let mut t = DecompositionTable::new();
    for pair in crit_set(a, b) {
        let sign = if pair.degree % 2 == 0 { 1 } else { -1 };
        t.add(pair.lambda, pair.mu, sign);
    }
    t
}
