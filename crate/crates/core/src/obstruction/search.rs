//! Search over finite quotients `Q(p, q)` and coefficient rings for a
//! functional separating an element of `I^{⊗k}` from the relations.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Outcome, TargetDoc, Witness};
use super::quotient::{finite_quotient_test, QuotientBudget, QuotientSpec, QUOTIENT_STRATEGY};
use super::relations::{BasisKind, KeyComb};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub ps: Vec<i64>,
    pub qs: Vec<i64>,
    pub ells: Vec<u64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            ps: vec![2, 4],
            qs: (2..=8).collect(),
            ells: vec![0, 2, 3, 4],
        }
    }
}

impl Grid {
    /// Cells in search order: by module rank, then `(p, q, ell)`.
    pub fn cells(&self, arity: usize) -> Vec<(i64, i64, u64)> {
        let mut out: Vec<(i64, i64, u64)> = self
            .ps
            .iter()
            .flat_map(|&p| {
                self.qs
                    .iter()
                    .flat_map(move |&q| self.ells.iter().map(move |&l| (p, q, l)))
            })
            .collect();
        out.sort_by_key(|&(p, q, l)| (((p * q - 1) as u64).saturating_pow(arity as u32), p, q, l));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchBudget {
    pub per_cell: QuotientBudget,
    /// Cells are not started after this many seconds.
    pub total_seconds: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            per_cell: QuotientBudget::default(),
            total_seconds: 1800,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellStatus {
    Nonzero,
    Inconclusive,
    Skipped,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub p: i64,
    pub q: i64,
    pub ell: u64,
    pub status: CellStatus,
    pub detail: String,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub cells: Vec<CellReport>,
    /// The first nonzero certificate in grid order, else an inconclusive one.
    pub certificate: Certificate,
}

/// Runs [`finite_quotient_test`] on every grid cell. Cells run in parallel;
/// the report lists them in grid order and the first separating cell in that
/// order supplies the certificate. Never concludes `Zero`.
pub fn quotient_grid_search(
    target: &KeyComb,
    arity: usize,
    grid: &Grid,
    budget: &SearchBudget,
) -> Result<SearchReport> {
    let start = Instant::now();
    let stop = start + Duration::from_secs(budget.total_seconds);
    let results: Vec<(CellReport, Option<Certificate>)> = grid
        .cells(arity)
        .into_par_iter()
        .map(|(p, q, ell)| {
            let t0 = Instant::now();
            let report = |status, detail: String| CellReport {
                p,
                q,
                ell,
                status,
                detail,
                millis: t0.elapsed().as_millis() as u64,
            };
            if t0 >= stop {
                return (
                    report(CellStatus::Skipped, "search time budget exhausted".into()),
                    None,
                );
            }
            let spec = match QuotientSpec::new(p, q, ell) {
                Ok(s) => s,
                Err(e) => return (report(CellStatus::Failed, e.to_string()), None),
            };
            if spec.module_rank(arity) > budget.per_cell.max_rank {
                let msg = format!(
                    "module rank {} above {}",
                    spec.module_rank(arity),
                    budget.per_cell.max_rank
                );
                return (report(CellStatus::Skipped, msg), None);
            }
            match finite_quotient_test(target, arity, &spec, &budget.per_cell) {
                Ok(cert) => {
                    let status = match cert.outcome {
                        Outcome::Nonzero => CellStatus::Nonzero,
                        _ => CellStatus::Inconclusive,
                    };
                    (
                        report(status, cert.note.clone().unwrap_or_default()),
                        Some(cert),
                    )
                }
                Err(Error::Budget(msg)) => (report(CellStatus::Skipped, msg), None),
                Err(e) => (report(CellStatus::Failed, e.to_string()), None),
            }
        })
        .collect();
    let found = results
        .iter()
        .find_map(|(r, c)| c.clone().filter(|_| r.status == CellStatus::Nonzero));
    let cells: Vec<CellReport> = results.into_iter().map(|(r, _)| r).collect();
    let certificate = found.unwrap_or_else(|| {
        let tried = cells
            .iter()
            .filter(|c| c.status == CellStatus::Inconclusive)
            .count();
        Certificate::new(
            Outcome::Inconclusive,
            QUOTIENT_STRATEGY,
            TargetDoc::new(BasisKind::Alpha, arity, target),
            Witness::None,
            Some(format!(
                "no separating functional in {tried} of {} grid cells",
                cells.len()
            )),
        )
    });
    Ok(SearchReport { cells, certificate })
}
