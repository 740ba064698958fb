//! Characters of `Sym(n)` and `Sym(b) × Sym(a)`, monomial actions, and the
//! characters of images and quotients of equivariant maps.
//!
//! Every class function lives on `Sym(b) × Sym(a)`; a class function of a
//! single `Sym(n)` is the case `a = 0`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{LazyLock, RwLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::decomposition::DecompositionTable;
use crate::error::{FihlError, Result};
use crate::linalg::{
    rational, Echelon, Field, PrimeField, RankMode, Rational, RationalField, SparseMatrix,
    SparseVec,
};
use crate::partition::{partitions_of, Partition};
use crate::perm::{factorial, injections, Perm};

/// Cycle types of `Sym(n)` with class sizes `n!/z_μ`, in partition order.
pub fn class_data(n: usize) -> Vec<(Partition, u128)> {
    partitions_of(n)
        .into_iter()
        .map(|ct| {
            let size = factorial(n) / centralizer_order(&ct);
            (ct, size)
        })
        .collect()
}

/// `z_μ = Π i^{m_i} m_i!`.
pub fn centralizer_order(ct: &Partition) -> u128 {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in ct.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(i, m)| (i as u128).pow(m as u32) * factorial(m))
        .product()
}

pub fn class_sign(ct: &Partition) -> i64 {
    if (ct.size() - ct.len()) % 2 == 0 {
        1
    } else {
        -1
    }
}

type MnKey = (Partition, Partition);

static MN_CACHE: LazyLock<RwLock<HashMap<MnKey, i64>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Beta numbers `λ_i + (ℓ - 1 - i)` with `ℓ = len(λ)`, decreasing.
fn beta_set(lambda: &Partition) -> Vec<usize> {
    let l = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    let parts: Vec<usize> = beta
        .iter()
        .enumerate()
        .map(|(i, &x)| x - (l - 1 - i))
        .collect();
    Partition::new(parts).expect("beta set gives a partition")
}

fn mn_rec(lambda: &Partition, rest: &[usize]) -> i64 {
    let Some((&k, tail)) = rest.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (
        lambda.clone(),
        Partition::new(rest.to_vec()).expect("cycle type tail"),
    );
    if let Some(&v) = MN_CACHE.read().expect("cache lock").get(&key) {
        return v;
    }
    let beta = beta_set(lambda);
    let mut total = 0;
    for (idx, &x) in beta.iter().enumerate() {
        if x < k || beta.contains(&(x - k)) {
            continue;
        }
        // Rim hook removal moves a bead from x to x - k; the hook height is the
        // number of beads jumped over.
        let height = beta.iter().filter(|&&y| y > x - k && y < x).count();
        let mut moved = beta.clone();
        moved[idx] = x - k;
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn_rec(&from_beta_set(moved), tail);
    }
    MN_CACHE.write().expect("cache lock").insert(key, total);
    total
}

/// `χ^λ` at the class of the given cycle type, by the Murnaghan-Nakayama rule.
pub fn mn_char(lambda: &Partition, cycle_type: &Partition) -> Result<i64> {
    if lambda.size() != cycle_type.size() {
        return Err(FihlError::SizeMismatch {
            expected: lambda.size(),
            got: cycle_type.size(),
        });
    }
    Ok(mn_rec(lambda, cycle_type.parts()))
}

/// Rational-valued class function on `Sym(b) × Sym(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    b: usize,
    a: usize,
    values: BTreeMap<(Partition, Partition), Rational>,
}

impl ClassFunction {
    pub fn zero(b: usize, a: usize) -> Self {
        Self::from_fn(b, a, |_, _| Rational::zero())
    }

    pub fn from_fn(b: usize, a: usize, mut f: impl FnMut(&Partition, &Partition) -> Rational) -> Self {
        let mut values = BTreeMap::new();
        for cb in partitions_of(b) {
            for ca in partitions_of(a) {
                let v = f(&cb, &ca);
                values.insert((cb.clone(), ca), v);
            }
        }
        ClassFunction { b, a, values }
    }

    /// `χ^λ ⊠ χ^μ`.
    pub fn irreducible(lambda: &Partition, mu: &Partition) -> Self {
        Self::from_fn(lambda.size(), mu.size(), |cb, ca| {
            let v = mn_rec(lambda, cb.parts()) * mn_rec(mu, ca.parts());
            rational(v, 1)
        })
    }

    /// Class function of `Sym(n)` viewed on `Sym(n) × Sym(0)`.
    pub fn single(n: usize, mut f: impl FnMut(&Partition) -> Rational) -> Self {
        Self::from_fn(n, 0, |cb, _| f(cb))
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.b, self.a)
    }

    pub fn value(&self, cb: &Partition, ca: &Partition) -> &Rational {
        &self.values[&(cb.clone(), ca.clone())]
    }

    pub fn values(&self) -> impl Iterator<Item = (&Partition, &Partition, &Rational)> {
        self.values.iter().map(|((b, a), v)| (b, a, v))
    }

    /// Value at the identity, i.e. the degree of the representation.
    pub fn degree(&self) -> Rational {
        self.value(&Partition::column(self.b), &Partition::column(self.a))
            .clone()
    }

    fn check_same_group(&self, other: &Self) {
        assert_eq!(
            (self.b, self.a),
            (other.b, other.a),
            "class functions on different groups"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_group(other);
        let mut out = self.clone();
        for (k, v) in out.values.iter_mut() {
            *v += &other.values[k];
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rational(-1, 1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for v in out.values.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|v| v.is_zero())
    }

    /// `(1/|G|) Σ_g φ(g) ψ(g)`; characters here are real, so no conjugation.
    pub fn inner(&self, other: &Self) -> Rational {
        self.check_same_group(other);
        let order = factorial(self.b) * factorial(self.a);
        let mut sum = Rational::zero();
        for ((cb, ca), v) in &self.values {
            let w = &other.values[&(cb.clone(), ca.clone())];
            if v.is_zero() || w.is_zero() {
                continue;
            }
            let size = order / (centralizer_order(cb) * centralizer_order(ca));
            sum += v * w * Rational::from_integer(size.into());
        }
        sum / Rational::from_integer(order.into())
    }

    /// Multiplicity of every irreducible; non-integral or negative
    /// multiplicities are reported as errors.
    pub fn decompose(&self) -> Result<DecompositionTable> {
        let mut table = DecompositionTable::new();
        for lambda in partitions_of(self.b) {
            for mu in partitions_of(self.a) {
                let m = self.inner(&Self::irreducible(&lambda, &mu));
                if !m.is_integer() {
                    return Err(FihlError::NonIntegralMultiplicity {
                        lambda,
                        mu,
                        mult: m.to_string(),
                    });
                }
                let m = m.to_integer().to_i64().expect("multiplicity fits");
                if m < 0 {
                    return Err(FihlError::NegativeMultiplicity { lambda, mu, mult: m });
                }
                table.add(lambda.clone(), mu, m);
            }
        }
        Ok(table)
    }

    /// Class function of a (possibly virtual) table of irreducibles.
    pub fn from_table(b: usize, a: usize, table: &DecompositionTable) -> Self {
        let mut out = Self::zero(b, a);
        for (l, m, v) in table.iter() {
            out = out.add(&Self::irreducible(l, m).scale(&rational(v, 1)));
        }
        out
    }
}

/// Class representatives `(g, h)` of `Sym(b) × Sym(a)` with their labels.
pub fn class_reps(b: usize, a: usize) -> Vec<((Partition, Partition), (Perm, Perm))> {
    let mut out = Vec::new();
    for cb in partitions_of(b) {
        for ca in partitions_of(a) {
            let g = Perm::from_cycle_type(&cb);
            let h = Perm::from_cycle_type(&ca);
            out.push(((cb.clone(), ca), (g, h)));
        }
    }
    out
}

type ActFn = dyn Fn(&Perm, &Perm, usize) -> (usize, i8) + Send + Sync;

/// A basis together with a left action of `Sym(b) × Sym(a)` by signed
/// permutations of basis indices.
pub struct MonomialAction {
    b: usize,
    a: usize,
    dim: usize,
    act: Box<ActFn>,
}

impl std::fmt::Debug for MonomialAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MonomialAction")
            .field("b", &self.b)
            .field("a", &self.a)
            .field("dim", &self.dim)
            .finish()
    }
}

impl MonomialAction {
    pub fn new(
        b: usize,
        a: usize,
        dim: usize,
        act: impl Fn(&Perm, &Perm, usize) -> (usize, i8) + Send + Sync + 'static,
    ) -> Self {
        MonomialAction {
            b,
            a,
            dim,
            act: Box::new(act),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.b, self.a)
    }

    /// `(g, h) · e_i = sign · e_j`, returned as `(j, sign)`.
    pub fn apply(&self, g: &Perm, h: &Perm, i: usize) -> (usize, i8) {
        (self.act)(g, h, i)
    }

    pub fn apply_vec(&self, g: &Perm, h: &Perm, v: &[(usize, Rational)]) -> SparseVec<Rational> {
        let mut out: Vec<(usize, Rational)> = v
            .iter()
            .map(|(i, x)| {
                let (j, s) = self.apply(g, h, *i);
                (j, if s < 0 { -x } else { x.clone() })
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Coxeter generators of both factors, as elements of the product.
    pub fn generators(&self) -> Vec<(Perm, Perm)> {
        let mut gens = Vec::new();
        for i in 1..self.b {
            gens.push((Perm::coxeter(self.b, i), Perm::identity(self.a)));
        }
        for i in 1..self.a {
            gens.push((Perm::identity(self.b), Perm::coxeter(self.a, i)));
        }
        gens
    }

    /// Spot check of the homomorphism property on generators: involutions,
    /// braid relations between adjacent generators, and commuting factors.
    pub fn verify_action(&self) -> Result<()> {
        let compose = |x: &(Perm, Perm), y: &(Perm, Perm)| (x.0.compose(&y.0), x.1.compose(&y.1));
        let gens = self.generators();
        for i in 0..self.dim {
            let id = self.apply(&Perm::identity(self.b), &Perm::identity(self.a), i);
            if id != (i, 1) {
                return Err(FihlError::Invariant(format!("identity moves basis element {i}")));
            }
        }
        for x in &gens {
            for y in &gens {
                // act(xy) must equal act(x) act(y).
                let xy = compose(x, y);
                for i in 0..self.dim {
                    let (j, s) = self.apply(&y.0, &y.1, i);
                    let (k, t) = self.apply(&x.0, &x.1, j);
                    if self.apply(&xy.0, &xy.1, i) != (k, s * t) {
                        return Err(FihlError::Invariant(format!(
                            "action is not multiplicative at basis element {i}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn character(&self) -> ClassFunction {
        ClassFunction::from_fn(self.b, self.a, |cb, ca| {
            let g = Perm::from_cycle_type(cb);
            let h = Perm::from_cycle_type(ca);
            let trace: i64 = (0..self.dim)
                .map(|i| match self.apply(&g, &h, i) {
                    (j, s) if j == i => s as i64,
                    _ => 0,
                })
                .sum();
            rational(trace, 1)
        })
    }

    /// The action of `(g, h)` as a matrix.
    pub fn matrix(&self, g: &Perm, h: &Perm) -> SparseMatrix {
        SparseMatrix::from_int_triplets(
            self.dim,
            self.dim,
            (0..self.dim).map(|i| {
                let (j, s) = self.apply(g, h, i);
                (j, i, s as i64)
            }),
        )
        .expect("action stays in range")
    }
}

/// Checks `target(x) · d = d · source(x)` on every generator.
pub fn check_intertwines(d: &SparseMatrix, source: &MonomialAction, target: &MonomialAction) -> Result<()> {
    if d.cols() != source.dim() || d.rows() != target.dim() {
        return Err(FihlError::DimensionMismatch(format!(
            "{}x{} map between actions of dimension {} and {}",
            d.rows(),
            d.cols(),
            source.dim(),
            target.dim()
        )));
    }
    for (g, h) in source.generators() {
        for c in 0..d.cols() {
            let left = target.apply_vec(&g, &h, d.column(c));
            let (c2, s) = source.apply(&g, &h, c);
            let right: SparseVec<Rational> = d
                .column(c2)
                .iter()
                .map(|(r, x)| (*r, if s < 0 { -x } else { x.clone() }))
                .collect();
            if left != right {
                return Err(FihlError::Invariant(format!(
                    "map is not equivariant at column {c}"
                )));
            }
        }
    }
    Ok(())
}

/// Permutation character of `k hom(a, b)` under `f ↦ g f h⁻¹`, by counting
/// fixed injections at class representatives.
pub fn perm_char_hom(a: usize, b: usize) -> Result<ClassFunction> {
    if b > 7 {
        return Err(FihlError::OutOfScale(b));
    }
    let maps = injections(a, b);
    Ok(ClassFunction::from_fn(b, a, |cb, ca| {
        let g = Perm::from_cycle_type(cb);
        let h = Perm::from_cycle_type(ca);
        let fixed = maps
            .iter()
            .filter(|f| (0..a).all(|i| g.apply(f[i]) == f[h.apply(i)]))
            .count();
        rational(fixed as i64, 1)
    }))
}

/// Which independent columns span the image when computing its character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivoting {
    FirstColumns,
    LastColumns,
}

/// Character of the subrepresentation spanned by `basis` (which must be
/// linearly independent and stable under the action): for each class
/// representative solve `g·B = B·X` and take `trace X`.
pub fn subspace_char(basis: &[SparseVec<Rational>], action: &MonomialAction) -> Result<ClassFunction> {
    let (b, a) = action.degrees();
    let mut ech = Echelon::with_tracking(RationalField, action.dim());
    for v in basis {
        if ech.insert(v) != crate::linalg::Insertion::Independent {
            return Err(FihlError::Invariant("subspace basis is dependent".into()));
        }
    }
    let mut out = ClassFunction::zero(b, a);
    for ((cb, ca), (g, h)) in class_reps(b, a) {
        let mut trace = Rational::zero();
        for (j, v) in basis.iter().enumerate() {
            let gv = action.apply_vec(&g, &h, v);
            let x = ech.express(&gv).ok_or_else(|| {
                FihlError::Invariant("subspace is not stable under the action".into())
            })?;
            trace += &x[j];
        }
        out.values.insert((cb, ca), trace);
    }
    Ok(out)
}

/// Character of `im d`, by solving against a column-space basis.
pub fn image_char(
    d: &SparseMatrix,
    source: &MonomialAction,
    target: &MonomialAction,
    pivoting: Pivoting,
) -> Result<ClassFunction> {
    check_intertwines(d, source, target)?;
    let mut ech = Echelon::new(RationalField, d.rows());
    let order: Vec<usize> = match pivoting {
        Pivoting::FirstColumns => (0..d.cols()).collect(),
        Pivoting::LastColumns => (0..d.cols()).rev().collect(),
    };
    let mut basis = Vec::new();
    for c in order {
        if ech.is_full() {
            break;
        }
        if ech.insert(d.column(c)) == crate::linalg::Insertion::Independent {
            basis.push(d.column(c).to_vec());
        }
    }
    subspace_char(&basis, target)
}

/// Character of `V / im d` together with `rank d`, from a reduced basis of
/// the image: with pivot set `P` and complement `Q`, the classes of `e_q`
/// (`q ∈ Q`) form a basis of the quotient and `e_p ≡ e_p - r_p` for `p ∈ P`.
fn quotient_char_in<F: Field>(
    field: F,
    columns: impl Iterator<Item = SparseVec<F::Elem>>,
    target: &MonomialAction,
    lift: impl Fn(&F::Elem) -> Rational,
) -> (ClassFunction, usize) {
    let (b, a) = target.degrees();
    let n = target.dim();
    let mut ech = Echelon::new(field.clone(), n);
    for v in columns {
        if ech.is_full() {
            break;
        }
        ech.insert(&v);
    }
    let rank = ech.rank();
    if rank == n {
        return (ClassFunction::zero(b, a), rank);
    }
    let rref = ech.rref();
    let mut reduced: Vec<Option<&SparseVec<F::Elem>>> = vec![None; n];
    for (p, row) in &rref {
        reduced[*p] = Some(row);
    }
    let coeff = |x: usize, q: usize| -> F::Elem {
        match reduced[x] {
            None => {
                if x == q {
                    field.one()
                } else {
                    field.zero()
                }
            }
            Some(row) => match row.binary_search_by_key(&q, |e| e.0) {
                Ok(k) => field.neg(&row[k].1),
                Err(_) => field.zero(),
            },
        }
    };
    let mut out = ClassFunction::zero(b, a);
    for ((cb, ca), (g, h)) in class_reps(b, a) {
        let mut trace = field.zero();
        for q in (0..n).filter(|&q| reduced[q].is_none()) {
            let (x, s) = target.apply(&g, &h, q);
            let c = coeff(x, q);
            trace = if s < 0 {
                field.sub(&trace, &c)
            } else {
                field.add(&trace, &c)
            };
        }
        out.values.insert((cb, ca), lift(&trace));
    }
    (out, rank)
}

/// Character of `coker d = V / im d` and the rank of `d`.
pub fn quotient_char(d: &SparseMatrix, target: &MonomialAction, mode: RankMode) -> Result<(ClassFunction, usize)> {
    if d.rows() != target.dim() {
        return Err(FihlError::DimensionMismatch(format!(
            "map with {} rows into an action of dimension {}",
            d.rows(),
            target.dim()
        )));
    }
    match mode {
        RankMode::Exact => Ok(quotient_char_in(
            RationalField,
            (0..d.cols()).map(|c| d.column(c).to_vec()),
            target,
            |x| x.clone(),
        )),
        RankMode::Modular => quotient_char_modular(d, target),
    }
}

/// Modular variant. Whenever the rank modulo `p` equals the rational rank, the
/// reduced image is the reduction of the saturated integral image, so the
/// symmetric lifts of the traces are the rational values. Runs continue until
/// two primes agree on the largest rank seen.
fn quotient_char_modular(d: &SparseMatrix, target: &MonomialAction) -> Result<(ClassFunction, usize)> {
    let mut seen: Vec<(usize, ClassFunction)> = Vec::new();
    for p in crate::linalg::prime_stream(12) {
        let field = PrimeField::new(p);
        let Some(columns) = (0..d.cols())
            .map(|c| d.column_in(&field, c))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let (chi, rank) =
            quotient_char_in(field, columns.into_iter(), target, |x| rational(field.lift(*x), 1));
        let best = seen.iter().map(|s| s.0).max().unwrap_or(0).max(rank);
        if let Some((_, prev)) = seen.iter().find(|s| s.0 == rank) {
            if rank == best {
                if prev != &chi {
                    return Err(FihlError::Invariant(
                        "modular quotient characters disagree at equal rank".into(),
                    ));
                }
                return Ok((chi, rank));
            }
        }
        seen.push((rank, chi));
    }
    Err(FihlError::Invariant("no two primes agreed on a rank".into()))
}

/// `dim S^λ(k^n) = Π_boxes (n + c - r) / hook`.
pub fn schur_poly_dim(lambda: &Partition, n: usize) -> u128 {
    let conj = lambda.transpose();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (r, c) in lambda.boxes() {
        let content = n as i64 + c as i64 - r as i64;
        if content <= 0 {
            return 0;
        }
        let hook = (lambda.part(r) - c) + (conj.part(c) - r) - 1;
        num *= content as u128;
        den *= hook as u128;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    debug_assert!(den.is_one());
    num / den
}

/// The trivial and sign characters of `Sym(n)`.
pub fn trivial_char(n: usize) -> ClassFunction {
    ClassFunction::single(n, |_| Rational::one())
}

pub fn sign_char(n: usize) -> ClassFunction {
    ClassFunction::single(n, |ct| rational(class_sign(ct), 1))
}

/// Character of `Ind_{Sym(m) × Sym(n)}^{Sym(m+n)} (φ ⊠ ψ)` by the induced
/// character formula summed over classes of the Young subgroup.
pub fn induce_product(phi: &ClassFunction, psi: &ClassFunction) -> ClassFunction {
    let (m, _) = phi.degrees();
    let (n, _) = psi.degrees();
    let total = m + n;
    let empty = Partition::empty();
    ClassFunction::single(total, |ct| {
        // Ind(χ)(g) = |C_G(g)| Σ_{classes c of H inside class(g)} χ(c) / |C_H(c)|
        let zg = centralizer_order(ct);
        let mut sum = Rational::zero();
        for (c1, _) in class_data(m) {
            for (c2, _) in class_data(n) {
                let mut joined: Vec<usize> = c1.parts().iter().chain(c2.parts()).copied().collect();
                joined.sort_unstable_by(|x, y| y.cmp(x));
                if joined != ct.parts() {
                    continue;
                }
                let zh = centralizer_order(&c1) * centralizer_order(&c2);
                sum += phi.value(&c1, &empty) * psi.value(&c2, &empty)
                    * Rational::new(zg.into(), zh.into());
            }
        }
        sum
    })
}
