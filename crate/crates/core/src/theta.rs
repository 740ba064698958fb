//! The coefficient `θ(λ, ν, κ)`: the tableau `𝕋`, the bracket set `⟨𝕋⟩`, the
//! exact rational formula and the reduction `(ν, κ) ↦ (ν⁺, κ⁺)`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{FihlError, Result};
use crate::linalg::Rational;
use crate::partition::{partitions_of, Partition, SkewShape};
use crate::tableau::{t_rev, CoxeterMove, StandardTableau};

/// A chain `hs λ ⪯ κ ⪯ ν ⪯ λ` with `λ ⊢ b`, `ν ⊢ a`, `κ ⊢ a - 1` and `λ₁ > b - a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThetaContext {
    lambda: Partition,
    nu: Partition,
    kappa: Partition,
}

impl ThetaContext {
    pub fn new(lambda: Partition, nu: Partition, kappa: Partition) -> Result<Self> {
        let (b, a) = (lambda.size(), nu.size());
        let fail = |why: &str| {
            Err(FihlError::InvalidContext(format!(
                "(λ, ν, κ) = ({lambda}, {nu}, {kappa}): {why}"
            )))
        };
        if a == 0 {
            return fail("ν must be nonempty");
        }
        if kappa.size() + 1 != a {
            return fail("|κ| must be |ν| - 1");
        }
        if !nu.leq(&lambda) {
            return fail("ν is not contained in λ");
        }
        if !kappa.leq(&nu) {
            return fail("κ is not contained in ν");
        }
        if !lambda.hs().leq(&kappa) {
            return fail("λ/κ is not a horizontal strip");
        }
        if lambda.first_part() <= b - a {
            return fail("need λ₁ > b - a");
        }
        Ok(ThetaContext { lambda, nu, kappa })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn kappa(&self) -> &Partition {
        &self.kappa
    }

    pub fn a(&self) -> usize {
        self.nu.size()
    }

    pub fn b(&self) -> usize {
        self.lambda.size()
    }

    /// `b - a`, the number of boxes of `λ/ν`.
    pub fn gap(&self) -> usize {
        self.b() - self.a()
    }

    /// The shape `λ/κ` carrying `𝕋`.
    pub fn shape(&self) -> SkewShape {
        SkewShape::new(self.lambda.clone(), self.kappa.clone()).expect("κ ⪯ λ checked on construction")
    }

    /// The single box of `ν/κ`.
    pub fn marked_box(&self) -> (usize, usize) {
        SkewShape::new(self.nu.clone(), self.kappa.clone())
            .expect("κ ⪯ ν checked on construction")
            .boxes()[0]
    }
}

impl fmt::Display for ThetaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.lambda, self.nu, self.kappa)
    }
}

/// Every valid context with `|λ| = b`, ordered by `λ`, then `ν`, then `κ`.
pub fn contexts(b: usize) -> Vec<ThetaContext> {
    let mut out = Vec::new();
    for lambda in partitions_of(b) {
        let hs = lambda.hs();
        for nu in lambda.subpartitions() {
            let a = nu.size();
            if a == 0 || lambda.first_part() <= b - a || !hs.leq(&nu) {
                continue;
            }
            let mut kappas: Vec<Partition> = nu
                .outer_corners()
                .into_iter()
                .map(|(r, _)| nu.remove_corner(r))
                .filter(|k| hs.leq(k))
                .collect();
            kappas.sort();
            for kappa in kappas {
                out.push(ThetaContext {
                    lambda: lambda.clone(),
                    nu: nu.clone(),
                    kappa,
                });
            }
        }
    }
    out
}

/// `𝕋`: label 1 on the box of `ν/κ`, then `T^rev` of `λ/ν` shifted up by one.
pub fn tspec(ctx: &ThetaContext) -> StandardTableau {
    let outer = SkewShape::new(ctx.lambda.clone(), ctx.nu.clone()).expect("ν ⪯ λ");
    let rev = t_rev(&outer).expect("λ/ν is a horizontal strip");
    let mut cells = vec![ctx.marked_box()];
    cells.extend_from_slice(rev.cells());
    StandardTableau::from_cells(ctx.shape(), cells).expect("𝕋 is standard")
}

/// `T^rev` of the whole strip `λ/κ`.
pub fn t_rev_full(ctx: &ThetaContext) -> StandardTableau {
    t_rev(&ctx.shape()).expect("λ/κ is a horizontal strip")
}

/// `s_2^{ε_2} ⋯ s_{b-a}^{ε_{b-a}} 𝕋`, together with its `r^ε_j` and `J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketElement {
    pub tableau: StandardTableau,
    /// `epsilons[j - 1] = ε_j` for `1 <= j <= b - a`; `ε_1 = 0`.
    pub epsilons: Vec<u8>,
    /// `r[j - 1] = r^ε_j`, the axial distance from `j + 1` to `j` just before
    /// `s_j^{ε_j}` is applied.
    pub r: Vec<i64>,
    pub j: usize,
}

impl BracketElement {
    pub fn epsilon(&self, j: usize) -> u8 {
        self.epsilons[j - 1]
    }

    pub fn r_eps(&self, j: usize) -> i64 {
        self.r[j - 1]
    }

    pub fn is_tspec(&self) -> bool {
        self.epsilons.iter().all(|&e| e == 0)
    }

    /// `β²` of the restriction to `λ/ν`: `∏_{j ≥ 2} ((r_j - 1)/(r_j + 1))^{ε_j}`.
    pub fn beta_squared(&self) -> Rational {
        let mut acc = Rational::one();
        for (&e, &r) in self.epsilons.iter().zip(&self.r).skip(1) {
            if e == 1 {
                acc *= Rational::new((r - 1).into(), (r + 1).into());
            }
        }
        acc
    }

    /// `θ(T) = δ_{T,𝕋} + Σ_{k=J}^{b-a} ∏_{j<=k} f_j` with
    /// `f_j = 1/r_j` if `ε_j = 0` and `(r_j - 1)/r_j` otherwise.
    pub fn theta_term(&self) -> Result<Rational> {
        let mut total = if self.is_tspec() { Rational::one() } else { Rational::zero() };
        let mut prod = Rational::one();
        for (idx, (&e, &r)) in self.epsilons.iter().zip(&self.r).enumerate() {
            if r == 0 {
                return Err(FihlError::Invariant(format!(
                    "r^ε_{} = 0 on {}",
                    idx + 1,
                    self.tableau
                )));
            }
            let num = if e == 1 { r - 1 } else { 1 };
            prod *= Rational::new(num.into(), r.into());
            if idx + 1 >= self.j {
                total += &prod;
            }
        }
        Ok(total)
    }
}

/// `⟨𝕋⟩`, one element per admissible `ε`, in lexicographic order of
/// `(ε_{b-a}, …, ε_2)` with 0 before 1.
pub fn bracket_set(ctx: &ThetaContext) -> Vec<BracketElement> {
    let top = tspec(ctx);
    let gap = ctx.gap();
    if gap == 0 {
        return vec![BracketElement {
            tableau: top,
            epsilons: Vec::new(),
            r: Vec::new(),
            j: 1,
        }];
    }
    let mut out = Vec::new();
    let mut eps = vec![0u8; gap];
    let mut r = vec![0i64; gap];
    descend(&top, gap, &mut eps, &mut r, &mut out);
    out
}

fn descend(t: &StandardTableau, k: usize, eps: &mut [u8], r: &mut [i64], out: &mut Vec<BracketElement>) {
    let rk = t.r(k).expect("labels k, k+1 exist");
    r[k - 1] = rk;
    if k == 1 {
        let j = eps.iter().rposition(|&e| e == 1).map_or(1, |p| p + 1);
        out.push(BracketElement {
            tableau: t.clone(),
            epsilons: eps.to_vec(),
            r: r.to_vec(),
            j,
        });
        return;
    }
    eps[k - 1] = 0;
    descend(t, k - 1, eps, r, out);
    if let CoxeterMove::Swapped(next) = t.coxeter_apply(k).expect("k < size") {
        eps[k - 1] = 1;
        descend(&next, k - 1, eps, r, out);
        eps[k - 1] = 0;
    }
}

/// `θ(λ, ν, κ)` as an exact rational; a nonpositive value is reported as an
/// internal error.
pub fn theta_exact(ctx: &ThetaContext) -> Result<Rational> {
    let mut total = Rational::zero();
    for el in bracket_set(ctx) {
        total += el.theta_term()?;
    }
    if !total.is_positive() {
        return Err(FihlError::Invariant(format!("θ{ctx} = {total} is not positive")));
    }
    Ok(total)
}

/// `(ν⁺, κ⁺)`: the box labelled 2 in `𝕋`, which is the left-most box of
/// `λ/κ`, moved into both `ν` and `κ`. Requires `|λ/ν| >= 2` and `𝕋 ≠ T^rev`. Returns the new context and the
/// factor `1 + 1/r_1(𝕋)` with `θ(λ, ν, κ) = factor · θ(λ, ν⁺, κ⁺)`.
pub fn plus_reduction(ctx: &ThetaContext) -> Result<(ThetaContext, Rational)> {
    let top = tspec(ctx);
    if ctx.gap() < 2 || top == t_rev_full(ctx) {
        return Err(FihlError::InvalidContext(format!(
            "{ctx}: the reduction needs |λ/ν| >= 2 and 𝕋 ≠ T^rev"
        )));
    }
    let (row, _) = top.cell(2)?;
    let grow = |p: &Partition| p.add_box(row).expect("the box labelled 2 is addable");
    let plus = ThetaContext::new(ctx.lambda.clone(), grow(&ctx.nu), grow(&ctx.kappa))?;
    let r1 = top.r(1)?;
    let factor = Rational::one() + Rational::new(1.into(), r1.into());
    Ok((plus, factor))
}

/// Applies [`plus_reduction`] until it no longer applies. Returns the base
/// context, the accumulated factor and the number of steps.
pub fn reduce_to_base(ctx: &ThetaContext) -> (ThetaContext, Rational, usize) {
    let mut cur = ctx.clone();
    let mut factor = Rational::one();
    let mut steps = 0;
    while let Ok((next, f)) = plus_reduction(&cur) {
        factor *= f;
        cur = next;
        steps += 1;
    }
    (cur, factor, steps)
}
