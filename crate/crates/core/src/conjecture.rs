//! Computed homology against the critical-pair prediction, degree by degree.

use std::fmt;

use serde::Serialize;

use crate::crit::{crit_euler, homology_prediction};
use crate::decomposition::DecompositionTable;
use crate::error::Result;
use crate::koszul::{homology_decomposition, HomologyReport};
use crate::linalg::RankPolicy;

/// Ordered from best to worst, so the status of a cell is the maximum over degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CellStatus {
    #[serde(rename = "match")]
    Match,
    #[serde(rename = "strict-inclusion")]
    StrictInclusion,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl fmt::Display for CellStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellStatus::Match => "match",
            CellStatus::StrictInclusion => "strict-inclusion",
            CellStatus::Violation => "VIOLATION",
        })
    }
}

/// `VIOLATION` if the prediction is not contained in the computed table.
pub fn compare(predicted: &DecompositionTable, computed: &DecompositionTable) -> CellStatus {
    if !predicted.is_submultiset_of(computed) {
        CellStatus::Violation
    } else if predicted == computed {
        CellStatus::Match
    } else {
        CellStatus::StrictInclusion
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeComparison {
    pub n: usize,
    pub predicted: DecompositionTable,
    pub computed: DecompositionTable,
    pub status: CellStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub a: usize,
    pub b: usize,
    pub status: CellStatus,
    pub degree0_equal: bool,
    pub euler_holds: bool,
    pub degrees: Vec<DegreeComparison>,
}

pub fn conjecture_report(a: usize, b: usize, policy: RankPolicy) -> Result<ConjectureReport> {
    let homology = homology_decomposition(a, b, policy)?;
    Ok(report_from(&homology))
}

pub fn report_from(homology: &HomologyReport) -> ConjectureReport {
    let (a, b) = (homology.a, homology.b);
    let prediction = homology_prediction(a, b);
    let degrees: Vec<DegreeComparison> = (0..=a)
        .map(|n| {
            let predicted = prediction.get(&n).cloned().unwrap_or_default();
            let computed = homology.degree(n);
            let status = compare(&predicted, &computed);
            DegreeComparison {
                n,
                predicted,
                computed,
                status,
            }
        })
        .collect();
    let status = degrees
        .iter()
        .map(|d| d.status)
        .max()
        .unwrap_or(CellStatus::Match);
    ConjectureReport {
        a,
        b,
        status,
        degree0_equal: degrees[0].status == CellStatus::Match,
        euler_holds: homology.euler() == crit_euler(a, b),
        degrees,
    }
}
