//! Young's orthogonal form in double precision: `S^{λ/μ}` with basis `Φ_T`,
//! the invariant `Σ β_T Φ_T`, and a numeric evaluation of `θ(λ, ν, κ)`.
//!
//! Independent of the rational formula in [`crate::theta`]: it only uses the
//! action `s_j Φ_T = (1/r) Φ_T + √(1 - 1/r²) Φ_{s_j T}`.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::error::Result;
use crate::partition::{Partition, SkewShape};
use crate::tableau::{join_relative, standard_tableaux, t_rev, tab_relative, CoxeterMove, StandardTableau};
use crate::theta::{tspec, ThetaContext};

/// The action of one Coxeter generator on one basis vector.
#[derive(Clone, Copy, Debug)]
struct Move {
    diag: f64,
    off: Option<(usize, f64)>,
}

pub struct YoungForm {
    basis: Vec<StandardTableau>,
    index: HashMap<StandardTableau, usize>,
    /// `moves[j - 1][t]` for the generator `s_j`.
    moves: Vec<Vec<Move>>,
}

impl YoungForm {
    pub fn new(shape: &SkewShape) -> Self {
        let basis = standard_tableaux(shape);
        let index: HashMap<StandardTableau, usize> =
            basis.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        let n = shape.size();
        let moves = (1..n.max(1))
            .map(|j| {
                basis
                    .iter()
                    .map(|t| {
                        let r = t.r(j).expect("j < n") as f64;
                        let off = match t.coxeter_apply(j).expect("j < n") {
                            CoxeterMove::SameRow => None,
                            CoxeterMove::Swapped(s) => Some((index[&s], (1.0 - 1.0 / (r * r)).sqrt())),
                        };
                        Move { diag: 1.0 / r, off }
                    })
                    .collect()
            })
            .collect();
        YoungForm { basis, index, moves }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[StandardTableau] {
        &self.basis
    }

    pub fn index_of(&self, t: &StandardTableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Number of letters `n`; generators are `s_1 … s_{n-1}`.
    pub fn letters(&self) -> usize {
        self.moves.len() + 1
    }

    pub fn apply_s(&self, j: usize, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; v.len()];
        for (k, m) in self.moves[j - 1].iter().enumerate() {
            let c = v[k];
            if c == 0.0 {
                continue;
            }
            out[k] += m.diag * c;
            if let Some((t, w)) = m.off {
                out[t] += w * c;
            }
        }
        out
    }

    /// Applies `s_{w_1} s_{w_2} ⋯ s_{w_k}`, rightmost letter first.
    pub fn apply_word(&self, word: &[usize], v: &[f64]) -> Vec<f64> {
        word.iter().rev().fold(v.to_vec(), |acc, &j| self.apply_s(j, &acc))
    }

    /// `s_j` on the first (`side = 0`) or second factor of a tensor stored
    /// row-major as `v[x * other.dim() + y]`.
    fn apply_on_factor(&self, other: &YoungForm, j: usize, side: usize, v: &[f64]) -> Vec<f64> {
        let (n1, n2) = if side == 0 { (self.dim(), other.dim()) } else { (other.dim(), self.dim()) };
        let mut out = vec![0.0; n1 * n2];
        for x in 0..n1 {
            for y in 0..n2 {
                let c = v[x * n2 + y];
                if c == 0.0 {
                    continue;
                }
                let (k, fixed) = if side == 0 { (x, y) } else { (y, x) };
                let m = self.moves[j - 1][k];
                let idx = |kk: usize| if side == 0 { kk * n2 + fixed } else { fixed * n2 + kk };
                out[idx(k)] += m.diag * c;
                if let Some((t, w)) = m.off {
                    out[idx(t)] += w * c;
                }
            }
        }
        out
    }
}

/// `(1, i) = s_{i-1} ⋯ s_2 s_1 s_2 ⋯ s_{i-1}` as a word; empty for `i = 1`.
pub fn transposition_word(i: usize) -> Vec<usize> {
    if i <= 1 {
        return Vec::new();
    }
    let mut w: Vec<usize> = (1..i).rev().collect();
    w.extend(2..i);
    w
}

fn max_abs_diff(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

/// The `β_T` with `Σ β_T Φ_T` invariant and `β_{T^rev} = 1`, found by walking
/// out from `T^rev` along Coxeter moves.
pub fn beta_coefficients(form: &YoungForm, strip: &SkewShape) -> Result<Vec<f64>> {
    let start = t_rev(strip)?;
    let mut beta = vec![f64::NAN; form.dim()];
    let s = form.index[&start];
    beta[s] = 1.0;
    let mut queue = VecDeque::from([s]);
    while let Some(k) = queue.pop_front() {
        for j in 1..form.letters() {
            if let Some((t, _)) = form.moves[j - 1][k].off {
                if beta[t].is_nan() {
                    let r = form.basis[k].r(j)? as f64;
                    beta[t] = beta[k] * ((r - 1.0) / (r + 1.0)).sqrt();
                    queue.push_back(t);
                }
            }
        }
    }
    Ok(beta)
}

/// Numeric pieces of `θ`, for inspection and testing.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaOracle {
    pub theta: f64,
    /// Largest deviation of `Y` from invariance under `s_2, …, s_{b-a}`.
    pub y_defect: f64,
    /// Largest deviation of `Σ (1, i) Y` from full invariance.
    pub sum_defect: f64,
}

/// `Y = Σ_{T ∈ Tab(λ/κ; ν/κ)} β_{T|λ/ν} Φ_T`, then `Σ_{i=1}^{b-a+1} (1, i) Y`,
/// read at `Φ_𝕋`.
pub fn oracle_full(ctx: &ThetaContext) -> Result<ThetaOracle> {
    let form = YoungForm::new(&ctx.shape());
    let strip = SkewShape::new(ctx.lambda().clone(), ctx.nu().clone())?;
    let strip_form = YoungForm::new(&strip);
    let beta = beta_coefficients(&strip_form, &strip)?;
    let marked = ctx.marked_box();

    let mut y = vec![0.0; form.dim()];
    for (k, t) in form.basis.iter().enumerate() {
        if t.cell(1)? != marked {
            continue;
        }
        let rest = t.restrict(&strip)?;
        y[k] = beta[strip_form.index[&rest]];
    }

    let n = form.letters();
    let y_defect = (2..n)
        .map(|j| max_abs_diff(&form.apply_s(j, &y), &y))
        .fold(0.0, f64::max);

    let mut sum = vec![0.0; form.dim()];
    for i in 1..=n {
        for (acc, x) in sum.iter_mut().zip(form.apply_word(&transposition_word(i), &y)) {
            *acc += x;
        }
    }
    let sum_defect = (1..n)
        .map(|j| max_abs_diff(&form.apply_s(j, &sum), &sum))
        .fold(0.0, f64::max);

    let top = form.index[&tspec(ctx)];
    Ok(ThetaOracle {
        theta: sum[top],
        y_defect,
        sum_defect,
    })
}

pub fn oracle_numeric(ctx: &ThetaContext) -> Result<f64> {
    Ok(oracle_full(ctx)?.theta)
}

/// Largest deviations found by [`invariant_checks`].
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    /// `Σ_T w_T ⊗ w_T ∈ S^λ ⊗ S^λ` under the diagonal action.
    pub diagonal: f64,
    /// `Φ_{T^rev} ∈ S^{λ/ν}` under the row Young subgroup.
    pub row_stabilizer: f64,
    /// `Σ β_T Φ_T ∈ S^{λ/ν}` under all of `Sym(b - a)`.
    pub skew_invariant: f64,
    /// `X_{λ,ν} ∈ S^λ ⊗ S^ν` under `Sym(b - a) × ΔSym(a)`.
    pub x_invariant: f64,
}

impl InvariantReport {
    pub fn max(&self) -> f64 {
        [self.diagonal, self.row_stabilizer, self.skew_invariant, self.x_invariant]
            .into_iter()
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

/// Requires `hs λ ⪯ ν ⪯ λ`.
pub fn invariant_checks(lambda: &Partition, nu: &Partition) -> Result<InvariantReport> {
    let (b, a) = (lambda.size(), nu.size());
    let full = YoungForm::new(&SkewShape::straight(lambda.clone()));
    let f = full.dim();

    let mut diag_vec = vec![0.0; f * f];
    for k in 0..f {
        diag_vec[k * f + k] = 1.0;
    }
    let mut diagonal: f64 = 0.0;
    for j in 1..b {
        let once = full.apply_on_factor(&full, j, 0, &diag_vec);
        let twice = full.apply_on_factor(&full, j, 1, &once);
        diagonal = diagonal.max(max_abs_diff(&twice, &diag_vec));
    }

    let strip = SkewShape::new(lambda.clone(), nu.clone())?;
    let strip_form = YoungForm::new(&strip);
    let rev = t_rev(&strip)?;
    let mut phi = vec![0.0; strip_form.dim()];
    phi[strip_form.index[&rev]] = 1.0;
    let mut row_stabilizer: f64 = 0.0;
    for j in 1..strip_form.letters() {
        if rev.r(j)? == 1 {
            row_stabilizer = row_stabilizer.max(max_abs_diff(&strip_form.apply_s(j, &phi), &phi));
        }
    }

    let beta = beta_coefficients(&strip_form, &strip)?;
    let skew_invariant = (1..strip_form.letters())
        .map(|j| max_abs_diff(&strip_form.apply_s(j, &beta), &beta))
        .fold(0.0, f64::max);

    let small = YoungForm::new(&SkewShape::straight(nu.clone()));
    let g = small.dim();
    let mut x = vec![0.0; f * g];
    for inner in small.basis() {
        for outer in strip_form.basis() {
            let t = join_relative(inner, outer)?;
            let coeff = beta[strip_form.index[outer]];
            x[full.index[&t] * g + small.index[inner]] = coeff;
        }
    }
    debug_assert_eq!(
        tab_relative(lambda, nu)?.len(),
        small.dim() * strip_form.dim()
    );
    let mut x_invariant: f64 = 0.0;
    for j in a + 1..b {
        let moved = full.apply_on_factor(&small, j, 0, &x);
        x_invariant = x_invariant.max(max_abs_diff(&moved, &x));
    }
    for j in 1..a {
        let once = full.apply_on_factor(&small, j, 0, &x);
        let twice = small.apply_on_factor(&full, j, 1, &once);
        x_invariant = x_invariant.max(max_abs_diff(&twice, &x));
    }

    Ok(InvariantReport {
        diagonal,
        row_stabilizer,
        skew_invariant,
        x_invariant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::{contexts, theta_exact};
    use num_traits::ToPrimitive;

    #[test]
    fn coxeter_relations() {
        let form = YoungForm::new(&SkewShape::straight(Partition::of(&[3, 2, 1])));
        let n = form.letters();
        for k in 0..form.dim() {
            let mut e = vec![0.0; form.dim()];
            e[k] = 1.0;
            for j in 1..n {
                assert!(max_abs_diff(&form.apply_word(&[j, j], &e), &e) < 1e-12);
                if j + 1 < n {
                    let lhs = form.apply_word(&[j, j + 1, j], &e);
                    let rhs = form.apply_word(&[j + 1, j, j + 1], &e);
                    assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn transposition_words() {
        assert_eq!(transposition_word(1), Vec::<usize>::new());
        assert_eq!(transposition_word(2), vec![1]);
        assert_eq!(transposition_word(4), vec![3, 2, 1, 2, 3]);
    }

    #[test]
    fn oracle_matches_exact_small() {
        for b in 1..=6 {
            for c in contexts(b) {
                let o = oracle_full(&c).unwrap();
                let exact = theta_exact(&c).unwrap().to_f64().unwrap();
                assert!((o.theta - exact).abs() < 1e-9, "{c}: {} vs {exact}", o.theta);
                assert!(o.y_defect < 1e-10 && o.sum_defect < 1e-10);
            }
        }
    }

    #[test]
    fn invariants_small() {
        let r = invariant_checks(&Partition::of(&[2]), &Partition::of(&[1])).unwrap();
        assert!(r.passes(1e-12));
        let r = invariant_checks(&Partition::of(&[2, 1]), &Partition::of(&[2])).unwrap();
        assert!(r.passes(1e-9));
        let r = invariant_checks(&Partition::of(&[4, 2, 1]), &Partition::of(&[2, 1])).unwrap();
        assert!(r.passes(1e-9), "{r:?}");
    }
}
