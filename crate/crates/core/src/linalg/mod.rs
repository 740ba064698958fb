//! Exact linear algebra over the rationals, with a multi-prime fast path.

pub mod echelon;
pub mod exact;
pub mod field;
pub mod modular;
pub mod sparse;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use echelon::{Echelon, Insertion};
pub use field::{Field, PrimeField, RationalField};
pub use modular::{modular_rank, prime_stream, ModularRank};
pub use sparse::{SparseMatrix, SparseVec};

use crate::error::{FihlError, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RankMode {
    Exact,
    Modular,
}

impl fmt::Display for RankMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMode::Exact => "exact",
            RankMode::Modular => "modular",
        })
    }
}

impl FromStr for RankMode {
    type Err = FihlError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(RankMode::Exact),
            "modular" => Ok(RankMode::Modular),
            _ => Err(FihlError::Parse {
                what: "rank mode",
                input: s.to_string(),
            }),
        }
    }
}

/// Chooses a rank mode per matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankPolicy {
    pub mode: RankMode,
    /// Matrices with more columns than this go modular even in exact mode.
    pub modular_above_cols: usize,
    pub force_exact: bool,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            mode: RankMode::Exact,
            modular_above_cols: 2000,
            force_exact: false,
        }
    }
}

impl RankPolicy {
    pub fn exact() -> Self {
        RankPolicy {
            force_exact: true,
            ..Self::default()
        }
    }

    pub fn modular() -> Self {
        RankPolicy {
            mode: RankMode::Modular,
            ..Self::default()
        }
    }

    pub fn mode_for(&self, m: &SparseMatrix) -> RankMode {
        if self.force_exact {
            RankMode::Exact
        } else if m.cols() > self.modular_above_cols {
            RankMode::Modular
        } else {
            self.mode
        }
    }
}

pub fn rank(m: &SparseMatrix, mode: RankMode) -> usize {
    match mode {
        RankMode::Exact => exact::exact_rank(m),
        RankMode::Modular => modular_rank(m).rank,
    }
}

fn tracked_columns(m: &SparseMatrix) -> (Echelon<RationalField>, Vec<Insertion<Rational>>) {
    let mut ech = Echelon::with_tracking(RationalField, m.rows());
    let outcomes = (0..m.cols())
        .map(|c| ech.insert(m.column(c)))
        .collect();
    (ech, outcomes)
}

fn dense(v: SparseVec<Rational>, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::default(); len];
    for (k, x) in v {
        out[k] = x;
    }
    out
}

/// Basis of `{x : M x = 0}`, one vector per non-pivot column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let (_, outcomes) = tracked_columns(m);
    outcomes
        .into_iter()
        .filter_map(|o| match o {
            Insertion::Dependent(rel) => Some(dense(rel.expect("tracking"), m.cols())),
            Insertion::Independent => None,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSpace {
    /// Columns of `M` that are independent of all earlier columns.
    pub pivot_columns: Vec<usize>,
    /// Fully reduced basis, one vector per pivot row position.
    pub reduced: Vec<(usize, SparseVec<Rational>)>,
}

pub fn colspace_basis(m: &SparseMatrix) -> ColumnSpace {
    let (ech, outcomes) = tracked_columns(m);
    let pivot_columns = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| matches!(o, Insertion::Independent))
        .map(|(c, _)| c)
        .collect();
    ColumnSpace {
        pivot_columns,
        reduced: ech.rref(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    Coefficients(Vec<Rational>),
    NotInSpace,
}

pub fn solve_in_colspace(m: &SparseMatrix, v: &[Rational]) -> Result<Solve> {
    if v.len() != m.rows() {
        return Err(FihlError::DimensionMismatch(format!(
            "right-hand side of length {} against {} rows",
            v.len(),
            m.rows()
        )));
    }
    let (ech, _) = tracked_columns(m);
    let sparse: SparseVec<Rational> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| *x != &Rational::default())
        .map(|(k, x)| (k, x.clone()))
        .collect();
    Ok(match ech.express(&sparse) {
        Some(x) => Solve::Coefficients(x),
        None => Solve::NotInSpace,
    })
}
