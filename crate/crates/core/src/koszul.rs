//! The Koszul complex computing FI-homology of `k hom_FI(-, b)^tr` at `a`.
//!
//! Degree `n` has basis `(S, f)` with `S ⊂ a` of size `n` and `f : a ∖ S -> b`
//! injective. `Sym(a)` permutes `S` with the sign of the induced reordering.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::character::{
    check_intertwines, quotient_char, schur_poly_dim, ClassFunction, MonomialAction,
};
use crate::crit::{crit_euler, crit_set, m_set, MMethod};
use crate::decomposition::DecompositionTable;
use crate::error::{FihlError, Result};
use crate::linalg::{RankMode, RankPolicy, SparseMatrix};
use crate::partition::{partitions_of, Partition};
use crate::perm::{binomial, falling_factorial, injections, sorting_sign, Perm};
use crate::transfer::{hom_pairs, tr_matrix, HomBasis};

const HOLE: usize = usize::MAX;

/// `(S, f)` with `S` sorted and `f` stored on all of `a`, `HOLE` on `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChainBasisElement {
    pub s: Vec<usize>,
    pub f: Vec<usize>,
}

#[derive(Debug)]
pub struct ChainBasis {
    pub elems: Vec<ChainBasisElement>,
    index: HashMap<ChainBasisElement, usize>,
}

impl ChainBasis {
    fn new(a: usize, b: usize, n: usize) -> Self {
        let mut elems = Vec::new();
        if n <= a {
            for s in subsets(a, n) {
                let rest: Vec<usize> = (0..a).filter(|x| !s.contains(x)).collect();
                for g in injections(a - n, b) {
                    let mut f = vec![HOLE; a];
                    for (x, t) in rest.iter().zip(&g) {
                        f[*x] = *t;
                    }
                    elems.push(ChainBasisElement { s: s.clone(), f });
                }
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        ChainBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn index_of(&self, e: &ChainBasisElement) -> Option<usize> {
        self.index.get(e).copied()
    }
}

/// `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `(g, h) · (S, f) = sign · (h S, g ∘ f ∘ h⁻¹)`.
fn act(g: &Perm, h: &Perm, e: &ChainBasisElement) -> (ChainBasisElement, i8) {
    let moved: Vec<usize> = e.s.iter().map(|&x| h.apply(x)).collect();
    let sign = sorting_sign(&moved);
    let mut s = moved;
    s.sort_unstable();
    let hinv = h.inverse();
    let f = (0..e.f.len())
        .map(|j| match e.f[hinv.apply(j)] {
            HOLE => HOLE,
            t => g.apply(t),
        })
        .collect();
    (ChainBasisElement { s, f }, sign)
}

#[derive(Debug)]
pub struct ChainDegree {
    pub n: usize,
    pub basis: Arc<ChainBasis>,
    pub action: MonomialAction,
    /// `d_n : C_n -> C_{n-1}`; zero rows when `n = 0`.
    pub differential: SparseMatrix,
}

#[derive(Debug)]
pub struct ChainComplex {
    pub a: usize,
    pub b: usize,
    pub degrees: Vec<ChainDegree>,
}

/// `C(a, n) · b!/(b-a+n)!`, zero when `n > a` or `a - n > b`.
pub fn chain_dim(a: usize, b: usize, n: usize) -> u128 {
    if n > a {
        return 0;
    }
    binomial(a, n) * falling_factorial(b, a - n)
}

fn differential(b: usize, src: &ChainBasis, tgt: &ChainBasis) -> SparseMatrix {
    let mut triplets = Vec::new();
    for (c, e) in src.elems.iter().enumerate() {
        for (pos, &s) in e.s.iter().enumerate() {
            let eps: i64 = if pos % 2 == 0 { 1 } else { -1 };
            let mut rest = e.s.clone();
            rest.remove(pos);
            for t in (0..b).filter(|t| !e.f.contains(t)) {
                let mut f = e.f.clone();
                f[s] = t;
                let r = tgt
                    .index_of(&ChainBasisElement { s: rest.clone(), f })
                    .expect("face lies in the lower degree");
                triplets.push((r, c, eps));
            }
        }
    }
    SparseMatrix::from_int_triplets(tgt.len(), src.len(), triplets).expect("in range")
}

impl ChainComplex {
    /// Builds every degree, then checks `d² = 0` and equivariance of each `d_n`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        let bases: Vec<Arc<ChainBasis>> =
            (0..=a).map(|n| Arc::new(ChainBasis::new(a, b, n))).collect();
        let mut degrees = Vec::with_capacity(a + 1);
        for n in 0..=a {
            let basis = Arc::clone(&bases[n]);
            let inner = Arc::clone(&basis);
            let action = MonomialAction::new(b, a, basis.len(), move |g, h, i| {
                let (e, sign) = act(g, h, &inner.elems[i]);
                (inner.index_of(&e).expect("action preserves the basis"), sign)
            });
            let differential = if n == 0 {
                SparseMatrix::zero(0, basis.len())
            } else {
                differential(b, &basis, &bases[n - 1])
            };
            degrees.push(ChainDegree {
                n,
                basis,
                action,
                differential,
            });
        }
        let complex = ChainComplex { a, b, degrees };
        complex.verify()?;
        Ok(complex)
    }

    fn verify(&self) -> Result<()> {
        for n in 2..=self.a {
            let dd = self.degrees[n - 1]
                .differential
                .mul(&self.degrees[n].differential)?;
            if !dd.is_zero() {
                return Err(FihlError::Invariant(format!(
                    "d_{} ∘ d_{} ≠ 0 at (a, b) = ({}, {})",
                    n - 1,
                    n,
                    self.a,
                    self.b
                )));
            }
        }
        for n in 1..=self.a {
            check_intertwines(
                &self.degrees[n].differential,
                &self.degrees[n].action,
                &self.degrees[n - 1].action,
            )?;
        }
        Ok(())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.basis.len()).collect()
    }

    /// `d_n`, or the zero map out of degree `a + 1`.
    pub fn d(&self, n: usize) -> Option<&SparseMatrix> {
        self.degrees.get(n).map(|d| &d.differential)
    }

    pub fn chain_character(&self, n: usize) -> ClassFunction {
        match self.degrees.get(n) {
            Some(d) => d.action.character(),
            None => ClassFunction::zero(self.b, self.a),
        }
    }

    /// Whether `d_1` equals `Tr_{a,b}` under `({s}, f) ↔ (s, f ∘ τ_s)`.
    pub fn d1_matches_transfer(&self) -> Result<bool> {
        if self.a == 0 {
            return Ok(true);
        }
        let a = self.a;
        let tr = tr_matrix(a, self.b)?;
        let d1 = &self.degrees[1].differential;
        let hom_src = HomBasis::new(a - 1, self.b);
        let m = hom_src.len();
        let deg1 = &self.degrees[1].basis;
        // Degree-0 elements and hom(a, b) are enumerated in the same order.
        let deg0 = &self.degrees[0].basis;
        let hom = HomBasis::new(a, self.b);
        if deg0.len() != hom.len()
            || deg0
                .elems
                .iter()
                .zip(hom.maps())
                .any(|(e, f)| &e.f != f)
        {
            return Ok(false);
        }
        let mut triplets = Vec::new();
        for (c, e) in deg1.elems.iter().enumerate() {
            let s = e.s[0];
            let tau = Perm::transposition(a, s, a - 1);
            let f_prime: Vec<usize> = (0..a - 1).map(|j| e.f[tau.apply(j)]).collect();
            let col = s * m + hom_src.index_of(&f_prime).expect("restriction is injective");
            for (r, v) in d1.column(c) {
                triplets.push((*r, col, v.clone()));
            }
        }
        let permuted = SparseMatrix::from_triplets(d1.rows(), d1.cols(), triplets)?;
        Ok(permuted == tr.matrix)
    }
}

/// Multiplicity of `S^λ ⊠ S^μ` in degree `n`: `#{ν ⊢ a - n : ν ∈ 𝔐(λ, μ)}`.
pub fn chain_mults(a: usize, b: usize, n: usize) -> DecompositionTable {
    let mut t = DecompositionTable::new();
    if n > a {
        return t;
    }
    for lambda in partitions_of(b) {
        for mu in partitions_of(a) {
            let m = m_set(&lambda, &mu, MMethod::Interval);
            let count = m.members.iter().filter(|nu| nu.size() == a - n).count();
            if count > 0 {
                t.add(lambda.clone(), mu, count as i64);
            }
        }
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub a: usize,
    pub b: usize,
    pub chain_dims: Vec<usize>,
    /// `rank d_n` for `n = 1..=a`, at index `n - 1`.
    pub ranks: Vec<usize>,
    pub modes: Vec<RankMode>,
    pub homology: BTreeMap<usize, DecompositionTable>,
}

impl HomologyReport {
    pub fn degree(&self, n: usize) -> DecompositionTable {
        self.homology.get(&n).cloned().unwrap_or_default()
    }

    /// `Σ (-1)^n [H_n]`.
    pub fn euler(&self) -> DecompositionTable {
        let mut t = DecompositionTable::new();
        for (n, h) in &self.homology {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            t = t.plus(&h.scaled(sign));
        }
        t
    }
}

/// Decomposes every `H_n` through `χ_{H_n} = χ_{C_n} - χ_{im d_n} - χ_{im d_{n+1}}`,
/// where `χ_{im d_n} = χ_{C_{n-1}} - χ_{coker d_n}`.
pub fn homology_decomposition(a: usize, b: usize, policy: RankPolicy) -> Result<HomologyReport> {
    let complex = ChainComplex::new(a, b)?;
    homology_of(&complex, policy)
}

pub fn homology_of(complex: &ChainComplex, policy: RankPolicy) -> Result<HomologyReport> {
    let (a, b) = (complex.a, complex.b);
    let chars: Vec<ClassFunction> = (0..=a).map(|n| complex.chain_character(n)).collect();
    let cokernels: Vec<(ClassFunction, usize, RankMode)> = (1..=a)
        .into_par_iter()
        .map(|n| {
            let d = &complex.degrees[n].differential;
            let mode = policy.mode_for(d);
            let (coker, rank) = quotient_char(d, &complex.degrees[n - 1].action, mode)?;
            Ok((coker, rank, mode))
        })
        .collect::<Result<_>>()?;
    let mut image_chars = vec![ClassFunction::zero(b, a); a + 2];
    let mut ranks = Vec::new();
    let mut modes = Vec::new();
    for (k, (coker, rank, mode)) in cokernels.into_iter().enumerate() {
        image_chars[k + 1] = chars[k].sub(&coker);
        ranks.push(rank);
        modes.push(mode);
    }
    let mut homology = BTreeMap::new();
    for n in 0..=a {
        let chi = chars[n].sub(&image_chars[n]).sub(&image_chars[n + 1]);
        let table = chi.decompose()?;
        if !table.is_empty() {
            homology.insert(n, table);
        }
    }
    Ok(HomologyReport {
        a,
        b,
        chain_dims: complex.dims(),
        ranks,
        modes,
        homology,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub critical: DecompositionTable,
    pub homology: DecompositionTable,
    pub chains: DecompositionTable,
    pub holds: bool,
}

/// Compares `Σ_{crit} (-1)^{deg} [S^λ ⊠ S^μ]`, `Σ (-1)^n [H_n]` and `Σ (-1)^n [C_n]`.
pub fn euler_check(a: usize, b: usize, policy: RankPolicy) -> Result<EulerReport> {
    let report = homology_decomposition(a, b, policy)?;
    let mut chains = DecompositionTable::new();
    for n in 0..=a {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        chains = chains.plus(&chain_mults(a, b, n).scaled(sign));
    }
    let critical = crit_euler(a, b);
    let homology = report.euler();
    let holds = critical == homology && homology == chains;
    Ok(EulerReport {
        critical,
        homology,
        chains,
        holds,
    })
}

/// Critical pairs of degree `n` that are missing from the computed `H_n`.
pub fn lower_bound_failures(report: &HomologyReport) -> Vec<(usize, Partition, Partition)> {
    crit_set(report.a, report.b)
        .into_iter()
        .filter(|p| report.degree(p.degree).get(&p.lambda, &p.mu) < 1)
        .map(|p| (p.degree, p.lambda, p.mu))
        .collect()
}

/// Monomials of degree `k` in `n` variables.
fn multiset(n: u128, k: u128) -> u128 {
    if k == 0 {
        return 1;
    }
    if n == 0 {
        return 0;
    }
    binomial((n + k - 1) as usize, k as usize)
}

/// `dim S^{b-a}(W) ⊗ S^a(W ⊗ V)` against `Σ dim S^λ(W) · dim S^ν(V)` over the
/// pairs `hs λ ⪯ ν ⪯ λ`, with `dim W = w`, `dim V = v`.
pub fn schur_dim_check(a: usize, b: usize, v: usize, w: usize) -> bool {
    if a > b {
        return false;
    }
    let left = multiset(w as u128, (b - a) as u128) * multiset((w * v) as u128, a as u128);
    let right: u128 = hom_pairs(a, b)
        .iter()
        .map(|(l, nu, _)| schur_poly_dim(l, w) * schur_poly_dim(nu, v))
        .sum();
    left == right
}
