//! `k hom_FI(-, b)^tr` at the matrix level: hom bases with their
//! `Sym(b) × Sym(a)` actions, the transfer `Tr_{a,b}`, its cokernel, and the
//! dévissage sequence relating `b` to `b - 1`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::character::{check_intertwines, quotient_char, ClassFunction, MonomialAction};
use crate::decomposition::DecompositionTable;
use crate::error::{FihlError, Result};
use crate::linalg::{rank, RankMode, RankPolicy, SparseMatrix};
use crate::partition::partitions_of;
use crate::perm::{injections, Perm};

/// Injections `a -> b` in lexicographic order; the canonical inclusion comes first.
#[derive(Clone, Debug)]
pub struct HomBasis {
    a: usize,
    b: usize,
    maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl HomBasis {
    pub fn new(a: usize, b: usize) -> Self {
        let maps = injections(a, b);
        let index = maps.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();
        HomBasis { a, b, maps, index }
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.maps[i]
    }

    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        self.index.get(f).copied()
    }
}

/// `(g, h) · f = g ∘ f ∘ h⁻¹`.
pub fn act_on_injection(g: &Perm, h: &Perm, f: &[usize]) -> Vec<usize> {
    let hinv = h.inverse();
    (0..f.len()).map(|i| g.apply(f[hinv.apply(i)])).collect()
}

pub fn hom_basis_action(a: usize, b: usize) -> (Arc<HomBasis>, MonomialAction) {
    let basis = Arc::new(HomBasis::new(a, b));
    let inner = Arc::clone(&basis);
    let action = MonomialAction::new(b, a, basis.len(), move |g, h, i| {
        let image = act_on_injection(g, h, inner.get(i));
        (inner.index_of(&image).expect("injection stays injective"), 1)
    });
    (basis, action)
}

/// `Tr_{a,b}` with the actions on its source and target.
///
/// Source basis: pairs `(i, f')` with `i ∈ 0..a` and `f' ∈ hom(a-1, b)`, at index
/// `i·|hom(a-1,b)| + idx(f')`, standing for `τ_i ⊗ f'` with `τ_i = (i, a-1)`.
#[derive(Debug)]
pub struct TransferMatrix {
    pub a: usize,
    pub b: usize,
    pub matrix: SparseMatrix,
    pub source: MonomialAction,
    pub target: MonomialAction,
}

/// `τ_i` on `0..a`, the transposition of `i` with the last point.
fn coset_rep(a: usize, i: usize) -> Perm {
    Perm::transposition(a, i, a - 1)
}

/// The map `φ = f' ∘ τ_i` restricted to `[a] ∖ {i}`, recorded on all of `[a]`
/// with `i` left unassigned.
fn induced_to_partial(a: usize, i: usize, f: &[usize]) -> Vec<Option<usize>> {
    let tau = coset_rep(a, i);
    (0..a)
        .map(|j| if j == i { None } else { Some(f[tau.apply(j)]) })
        .collect()
}

fn partial_to_induced(a: usize, i: usize, phi: &[Option<usize>]) -> Vec<usize> {
    let tau = coset_rep(a, i);
    (0..a - 1)
        .map(|j| phi[tau.apply(j)].expect("defined off the distinguished point"))
        .collect()
}

/// Left action of `Sym(b) × Sym(a)` on `Ind_{Sym(a-1)}^{Sym(a)} k hom(a-1, b)`:
/// `(g, h) · (i, φ) = (h(i), g ∘ φ ∘ h⁻¹)`.
pub fn induced_action(a: usize, b: usize) -> MonomialAction {
    let basis = Arc::new(HomBasis::new(a.saturating_sub(1), b));
    let m = basis.len();
    let dim = if a == 0 { 0 } else { a * m };
    MonomialAction::new(b, a, dim, move |g, h, idx| {
        let (i, k) = (idx / m, idx % m);
        let phi = induced_to_partial(a, i, basis.get(k));
        let hinv = h.inverse();
        let i2 = h.apply(i);
        let phi2: Vec<Option<usize>> = (0..a)
            .map(|j| phi[hinv.apply(j)].map(|t| g.apply(t)))
            .collect();
        let f2 = partial_to_induced(a, i2, &phi2);
        (i2 * m + basis.index_of(&f2).expect("injection"), 1)
    })
}

/// `Tr_{a,b}`: column `(i, f')` maps to `Σ_{t ∉ im f'} [(f' ∪ {a-1 ↦ t}) ∘ τ_i]`.
/// `Tr_{0,b}` is the zero map from the zero space.
pub fn tr_matrix(a: usize, b: usize) -> Result<TransferMatrix> {
    let (target_basis, target) = hom_basis_action(a, b);
    let source = induced_action(a, b);
    let mut triplets = Vec::new();
    if a > 0 {
        let src = HomBasis::new(a - 1, b);
        let m = src.len();
        for i in 0..a {
            let tau = coset_rep(a, i);
            for (k, f) in src.maps().iter().enumerate() {
                for t in (0..b).filter(|t| !f.contains(t)) {
                    let mut ext = f.clone();
                    ext.push(t);
                    let g: Vec<usize> = (0..a).map(|j| ext[tau.apply(j)]).collect();
                    let row = target_basis.index_of(&g).expect("extension is injective");
                    triplets.push((row, i * m + k, 1));
                }
            }
        }
    }
    let matrix = SparseMatrix::from_int_triplets(target.dim(), source.dim(), triplets)?;
    check_intertwines(&matrix, &source, &target)?;
    Ok(TransferMatrix {
        a,
        b,
        matrix,
        source,
        target,
    })
}

#[derive(Clone, Debug)]
pub struct CokernelReport {
    pub table: DecompositionTable,
    pub rank: usize,
    pub target_dim: usize,
    pub mode: RankMode,
}

/// `H_0` at `a`, as the cokernel of `Tr_{a,b}` decomposed over `Sym(b) × Sym(a)`.
pub fn h0_report(a: usize, b: usize, policy: RankPolicy) -> Result<CokernelReport> {
    let tr = tr_matrix(a, b)?;
    let mode = policy.mode_for(&tr.matrix);
    let (chi, rank) = quotient_char(&tr.matrix, &tr.target, mode)?;
    Ok(CokernelReport {
        table: chi.decompose()?,
        rank,
        target_dim: tr.target.dim(),
        mode,
    })
}

pub fn h0_computed(a: usize, b: usize, policy: RankPolicy) -> Result<DecompositionTable> {
    Ok(h0_report(a, b, policy)?.table)
}

/// `{(λ, hs λ) : λ ⊢ b, λ_1 = b - a}`, each with multiplicity one. Empty when `a > b`.
pub fn h0_predicted(a: usize, b: usize) -> DecompositionTable {
    if a > b {
        return DecompositionTable::new();
    }
    partitions_of(b)
        .into_iter()
        .filter(|l| l.first_part() == b - a)
        .map(|l| {
            let hs = l.hs();
            (l, hs, 1)
        })
        .collect()
}

/// Pairs `(λ, ν)` with `λ ⊢ b`, `ν ⊢ a` and `hs λ ⪯ ν ⪯ λ`.
pub fn hom_pairs(a: usize, b: usize) -> DecompositionTable {
    let mut t = DecompositionTable::new();
    for l in partitions_of(b) {
        let hs = l.hs();
        for nu in partitions_of(a) {
            if hs.leq(&nu) && nu.leq(&l) {
                t.add(l.clone(), nu, 1);
            }
        }
    }
    t
}

/// The three maps `K --ι--> M --π--> R` at `a`, where `M = k hom(a, b)`,
/// `R = k hom(a, b-1)` and `K = ⊕_{x ∈ a} k hom(a ∖ {x}, b-1)`, together with the
/// canonical inclusion `j : R -> M` splitting `π`.
#[derive(Debug)]
pub struct Devissage {
    pub a: usize,
    pub b: usize,
    pub iota: SparseMatrix,
    pub pi: SparseMatrix,
    pub inclusion: SparseMatrix,
    pub k_action: MonomialAction,
    pub m_action: MonomialAction,
    pub r_action: MonomialAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DevissageReport {
    pub dims: [usize; 3],
    pub rank_iota: usize,
    pub rank_pi: usize,
    pub composite_zero: bool,
    pub split: bool,
    pub equivariant: bool,
    pub natural: bool,
}

impl DevissageReport {
    pub fn exact(&self) -> bool {
        self.rank_iota == self.dims[0]
            && self.rank_pi == self.dims[2]
            && self.rank_iota + self.rank_pi == self.dims[1]
            && self.composite_zero
    }

    pub fn all_checks(&self) -> bool {
        self.exact() && self.split && self.equivariant && self.natural
    }
}

/// `K` basis: `(x, φ)` with `φ : a ∖ {x} -> b-1` stored as a full-length array
/// whose entry at `x` is ignored (set to `usize::MAX`).
struct KBasis {
    elems: Vec<(usize, Vec<usize>)>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl KBasis {
    fn new(a: usize, b: usize) -> Self {
        let mut elems = Vec::new();
        if b >= 1 {
            for x in 0..a {
                for g in injections(a.saturating_sub(1), b - 1) {
                    let mut phi = g;
                    phi.insert(x, usize::MAX);
                    elems.push((x, phi));
                }
            }
        }
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        KBasis { elems, index }
    }
}

fn embed_perm(g: &Perm, n: usize) -> Perm {
    let mut images = g.images().to_vec();
    images.extend(g.degree()..n);
    Perm::from_images(images)
}

fn iota_matrix(b: usize, k: &KBasis, m: &HomBasis) -> SparseMatrix {
    let triplets = k.elems.iter().enumerate().map(|(c, (x, phi))| {
        let mut f = phi.clone();
        f[*x] = b - 1;
        (m.index_of(&f).expect("injective"), c, 1)
    });
    SparseMatrix::from_int_triplets(m.len(), k.elems.len(), triplets).expect("in range")
}

fn pi_matrix(b: usize, m: &HomBasis, r: &HomBasis) -> SparseMatrix {
    let triplets = m.maps().iter().enumerate().filter_map(|(c, f)| {
        if f.contains(&(b - 1)) {
            None
        } else {
            Some((r.index_of(f).expect("lands in b-1"), c, 1))
        }
    });
    SparseMatrix::from_int_triplets(r.len(), m.len(), triplets).expect("in range")
}

fn inclusion_matrix(m: &HomBasis, r: &HomBasis) -> SparseMatrix {
    let triplets = r
        .maps()
        .iter()
        .enumerate()
        .map(|(c, f)| (m.index_of(f).expect("also an injection into b"), c, 1));
    SparseMatrix::from_int_triplets(m.len(), r.len(), triplets).expect("in range")
}

/// FI structure map `hom(a-1, b) -> hom(a, b)`, `f ↦ Σ_{t ∉ im f} f ∪ {a-1 ↦ t}`.
fn structure_map(src: &HomBasis, tgt: &HomBasis) -> SparseMatrix {
    let b = tgt.b();
    let triplets = src.maps().iter().enumerate().flat_map(|(c, f)| {
        (0..b).filter(move |t| !f.contains(t)).map(move |t| {
            let mut g = f.clone();
            g.push(t);
            (tgt.index_of(&g).expect("injective"), c, 1)
        })
    });
    SparseMatrix::from_int_triplets(tgt.len(), src.len(), triplets).expect("in range")
}

/// The same structure map on `K`: `(x, φ) ↦ Σ_{t ∈ (b-1) ∖ im φ} (x, φ ∪ {a-1 ↦ t})`.
fn k_structure_map(src: &KBasis, tgt: &KBasis, b: usize) -> SparseMatrix {
    let mut triplets = Vec::new();
    for (c, (x, phi)) in src.elems.iter().enumerate() {
        for t in (0..b - 1).filter(|t| !phi.contains(t)) {
            let mut g = phi.clone();
            g.push(t);
            triplets.push((tgt.index[&(*x, g)], c, 1));
        }
    }
    SparseMatrix::from_int_triplets(tgt.elems.len(), src.elems.len(), triplets).expect("in range")
}

pub fn devissage(a: usize, b: usize) -> Result<Devissage> {
    if b == 0 {
        return Err(FihlError::InvalidContext("devissage needs b >= 1".into()));
    }
    let k = Arc::new(KBasis::new(a, b));
    let m = Arc::new(HomBasis::new(a, b));
    let r = Arc::new(HomBasis::new(a, b - 1));
    let iota = iota_matrix(b, &k, &m);
    let pi = pi_matrix(b, &m, &r);
    let inclusion = inclusion_matrix(&m, &r);

    let kk = Arc::clone(&k);
    let k_action = MonomialAction::new(b - 1, a, k.elems.len(), move |g, h, i| {
        let (x, phi) = &kk.elems[i];
        let hinv = h.inverse();
        let x2 = h.apply(*x);
        let phi2: Vec<usize> = (0..phi.len())
            .map(|j| {
                let v = phi[hinv.apply(j)];
                if v == usize::MAX {
                    v
                } else {
                    g.apply(v)
                }
            })
            .collect();
        (kk.index[&(x2, phi2)], 1)
    });
    let mm = Arc::clone(&m);
    let m_action = MonomialAction::new(b - 1, a, m.len(), move |g, h, i| {
        let g = embed_perm(g, b);
        let image = act_on_injection(&g, h, mm.get(i));
        (mm.index_of(&image).expect("injective"), 1)
    });
    let rr = Arc::clone(&r);
    let r_action = MonomialAction::new(b - 1, a, r.len(), move |g, h, i| {
        let image = act_on_injection(g, h, rr.get(i));
        (rr.index_of(&image).expect("injective"), 1)
    });
    Ok(Devissage {
        a,
        b,
        iota,
        pi,
        inclusion,
        k_action,
        m_action,
        r_action,
    })
}

/// Builds the sequence at `a` and verifies exactness, splitting, equivariance
/// and naturality (with the FI structure maps from `a - 1`, and with `Tr`).
pub fn devissage_ses(a: usize, b: usize) -> Result<DevissageReport> {
    let d = devissage(a, b)?;
    let composite_zero = d.pi.mul(&d.iota)?.is_zero();
    let split = d.pi.mul(&d.inclusion)? == SparseMatrix::identity(d.r_action.dim());
    let equivariant = check_intertwines(&d.iota, &d.k_action, &d.m_action).is_ok()
        && check_intertwines(&d.pi, &d.m_action, &d.r_action).is_ok()
        && check_intertwines(&d.inclusion, &d.r_action, &d.m_action).is_ok();
    let natural = if a == 0 {
        true
    } else {
        naturality_holds(a, b)?
    };
    let report = DevissageReport {
        dims: [d.k_action.dim(), d.m_action.dim(), d.r_action.dim()],
        rank_iota: rank(&d.iota, RankMode::Exact),
        rank_pi: rank(&d.pi, RankMode::Exact),
        composite_zero,
        split,
        equivariant,
        natural,
    };
    if !report.all_checks() {
        return Err(FihlError::Invariant(format!(
            "devissage sequence fails at (a, b) = ({a}, {b}): {report:?}"
        )));
    }
    Ok(report)
}

fn naturality_holds(a: usize, b: usize) -> Result<bool> {
    let k0 = KBasis::new(a - 1, b);
    let k1 = KBasis::new(a, b);
    let m0 = HomBasis::new(a - 1, b);
    let m1 = HomBasis::new(a, b);
    let r0 = HomBasis::new(a - 1, b - 1);
    let r1 = HomBasis::new(a, b - 1);
    let iota0 = iota_matrix(b, &k0, &m0);
    let iota1 = iota_matrix(b, &k1, &m1);
    let pi0 = pi_matrix(b, &m0, &r0);
    let pi1 = pi_matrix(b, &m1, &r1);
    let sk = k_structure_map(&k0, &k1, b);
    let sm = structure_map(&m0, &m1);
    let sr = structure_map(&r0, &r1);
    let iota_square = iota1.mul(&sk)? == sm.mul(&iota0)?;
    let pi_square = pi1.mul(&sm)? == sr.mul(&pi0)?;

    // π ∘ Tr_{a,b} = Tr_{a,b-1} ∘ Ind(π) on the induced modules.
    let tr_b = tr_matrix(a, b)?.matrix;
    let tr_b1 = tr_matrix(a, b - 1)?.matrix;
    let (n0, n1) = (m0.len(), r0.len());
    let ind_pi = SparseMatrix::from_int_triplets(
        a * n1,
        a * n0,
        (0..a).flat_map(|i| {
            pi0.entries()
                .map(move |(r, c, _)| (i * n1 + r, i * n0 + c, 1))
                .collect::<Vec<_>>()
        }),
    )?;
    let tr_square = pi1.mul(&tr_b)? == tr_b1.mul(&ind_pi)?;
    Ok(iota_square && pi_square && tr_square)
}

/// Source character of `Tr_{a,b}`, i.e. of the induced module.
pub fn induced_character(a: usize, b: usize) -> ClassFunction {
    induced_action(a, b).character()
}

/// The pairs of [`hom_pairs`] that do not occur in the induced source of `Tr`.
pub fn pairs_missing_from_induced(a: usize, b: usize) -> Result<DecompositionTable> {
    let induced = induced_character(a, b).decompose()?;
    let full = perm_table(a, b)?;
    Ok(full
        .iter()
        .filter(|(l, m, _)| induced.get(l, m) == 0)
        .map(|(l, m, _)| (l.clone(), m.clone(), 1))
        .collect())
}

fn perm_table(a: usize, b: usize) -> Result<DecompositionTable> {
    crate::character::perm_char_hom(a, b)?.decompose()
}

/// `|Stab(ι_{a,b})|` under the action, by direct count over the group.
pub fn stabilizer_order_of_inclusion(a: usize, b: usize) -> usize {
    let (_, action) = hom_basis_action(a, b);
    let mut count = 0;
    for g in injections(b, b) {
        let g = Perm::from_images(g);
        for h in injections(a, a) {
            let h = Perm::from_images(h);
            if action.apply(&g, &h, 0).0 == 0 {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::partition::Partition;

    fn p(parts: &[usize]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn hom_bases() {
        let (basis, action) = hom_basis_action(2, 3);
        assert_eq!(basis.len(), 6);
        assert_eq!(basis.get(0), &[0, 1]);
        action.verify_action().unwrap();
        assert!(HomBasis::new(3, 2).is_empty());
        assert_eq!(stabilizer_order_of_inclusion(2, 4), 2 * 2);
        assert_eq!(stabilizer_order_of_inclusion(1, 3), 2);
    }

    #[test]
    fn small_transfers() {
        let tr = tr_matrix(1, 1).unwrap();
        assert_eq!(tr.matrix, SparseMatrix::from_dense(&[vec![1]]));
        let tr = tr_matrix(1, 2).unwrap();
        assert_eq!(tr.matrix, SparseMatrix::from_dense(&[vec![1], vec![1]]));
        assert_eq!(rank(&tr.matrix, RankMode::Exact), 1);
        let tr = tr_matrix(0, 3).unwrap();
        assert_eq!((tr.matrix.rows(), tr.matrix.cols()), (1, 0));
    }

    #[test]
    fn generator_image() {
        // [ι_{a-1,b}] ↦ Σ_{z ∉ a-1} (a, z)[ι_{a,b}]: the generator is (a-1, ι_{a-1,b})
        // and (a, z) ι_{a,b} sends the last point to z.
        for (a, b) in [(2, 3), (3, 5), (1, 4)] {
            let tr = tr_matrix(a, b).unwrap();
            let target = HomBasis::new(a, b);
            let src = HomBasis::new(a - 1, b);
            let col = (a - 1) * src.len();
            let mut want: Vec<usize> = (a - 1..b)
                .map(|z| {
                    let mut f: Vec<usize> = (0..a).collect();
                    f[a - 1] = z;
                    target.index_of(&f).unwrap()
                })
                .collect();
            want.sort_unstable();
            let got: Vec<usize> = tr.matrix.column(col).iter().map(|e| e.0).collect();
            assert_eq!(got, want);
            assert!(tr.matrix.column(col).iter().all(|e| e.1 == rational(1, 1)));
        }
    }

    #[test]
    fn column_support_sizes() {
        for b in 1..=4 {
            for a in 1..=b {
                let tr = tr_matrix(a, b).unwrap();
                for c in 0..tr.matrix.cols() {
                    assert_eq!(tr.matrix.column(c).len(), b - a + 1);
                }
            }
        }
    }

    #[test]
    fn h0_examples() {
        let exact = RankPolicy::exact();
        let want: DecompositionTable = [(p(&[1, 1]), p(&[1]), 1)].into_iter().collect();
        assert_eq!(h0_computed(1, 2, exact).unwrap(), want);
        assert!(h0_computed(2, 2, exact).unwrap().is_empty());
        let want: DecompositionTable = [(p(&[1, 1, 1]), p(&[1, 1]), 1)].into_iter().collect();
        assert_eq!(h0_computed(2, 3, exact).unwrap(), want);
        let want: DecompositionTable = [(p(&[2, 2]), p(&[2]), 1), (p(&[2, 1, 1]), p(&[1, 1]), 1)]
            .into_iter()
            .collect();
        assert_eq!(h0_predicted(2, 4), want);
        assert!(h0_predicted(3, 3).is_empty());
        // a = 0: the full value k, the trivial representation.
        let want: DecompositionTable = [(p(&[3]), p(&[]), 1)].into_iter().collect();
        assert_eq!(h0_computed(0, 3, exact).unwrap(), want);
    }

    #[test]
    fn devissage_small() {
        let r = devissage_ses(1, 2).unwrap();
        assert_eq!(r.dims, [1, 2, 1]);
        let r = devissage_ses(2, 3).unwrap();
        assert_eq!(r.dims, [4, 6, 2]);
        assert_eq!(r.rank_pi, 2);
        assert!(devissage_ses(1, 0).is_err());
    }
}
