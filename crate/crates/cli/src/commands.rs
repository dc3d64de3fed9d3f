use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use klein_core::delta_complex::{klein_bottle_squared, kxk_printed_cells};
use klein_core::group_ring::PairRing;
use klein_core::groupring_linalg::{nonzero_rows, Generator, RingMatrix};
use klein_core::obstruction::{
    finite_quotient_test, windowed_membership, BasisKind, CellStatus, Certificate, Outcome,
    SearchReport,
};
use klein_core::twisted_cohomology::{
    cf_one_cochain, coboundary_matrix, coboundary_matrix_fixture, cup_power4, f_table_fixture,
    format_pair_entry, parse_matrix_table,
};
use klein_core::{
    obstruction_value, quotient_grid_search, reduce_full_ring, row_reduce, verify_certificate,
    EpsilonSign,
};

use crate::config::{CommandConfig, ObstructionStrategy, RunConfig};

/// Process exit statuses.
pub mod status {
    pub const OK: u8 = 0;
    pub const FAILED: u8 = 1;
    pub const NONZERO: u8 = 10;
    pub const INCONCLUSIVE: u8 = 20;
}

pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Report {
    fn new(text: String, json: Value, status: u8) -> Self {
        Self { text, json, status }
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    match &config.command {
        CommandConfig::Cells { verify } => cells(*verify),
        CommandConfig::Matrix {
            verify,
            fixture,
            row,
        } => matrix(*verify, fixture.as_deref(), *row),
        CommandConfig::Reduce { verify } => reduce(*verify),
        CommandConfig::FTable { verify } => f_table(*verify),
        CommandConfig::Obstruction {
            strategy,
            certificate,
            ..
        } => obstruction(config, *strategy, certificate.as_deref()),
        CommandConfig::QuotientSearch { certificate } => {
            quotient_search(config, certificate.as_deref())
        }
        CommandConfig::Verify { path } => verify(path),
    }
}

fn verdict(verified: Option<bool>) -> u8 {
    if verified == Some(false) {
        status::FAILED
    } else {
        status::OK
    }
}

fn cells(verify: bool) -> Result<Report> {
    let kk = klein_bottle_squared();
    let counts = kk.counts();
    let mut text: String = counts
        .iter()
        .enumerate()
        .map(|(d, n)| format!("{d}:{n}"))
        .collect::<Vec<_>>()
        .join(" ")
        + "\n";
    text.push_str(&kk.cell_table());
    let mut mismatches = Vec::new();
    if verify {
        for pc in kxk_printed_cells() {
            let mut expected = pc.representatives.clone();
            expected.sort();
            let ok = kk.cell(pc.dimension, pc.index).is_ok_and(|c| {
                let mut got = c.representatives.clone();
                got.sort();
                got == expected
            });
            if !ok {
                mismatches.push(format!("{}-cell {}", pc.dimension, pc.index));
            }
        }
        write_verification(&mut text, &mismatches);
    }
    let verified = verify.then_some(mismatches.is_empty());
    let json = json!({"kind": "cells", "complex": kk.export(), "verified": verified, "mismatches": mismatches});
    Ok(Report::new(text, json, verdict(verified)))
}

fn write_verification(text: &mut String, mismatches: &[String]) {
    write_verification_as(text, mismatches, "matches the bundled table")
}

fn write_verification_as(text: &mut String, mismatches: &[String], success: &str) {
    if mismatches.is_empty() {
        let _ = writeln!(text, "verified: {success}");
    } else {
        let _ = writeln!(text, "verification failed: {} mismatches", mismatches.len());
        for m in mismatches {
            let _ = writeln!(text, "  {m}");
        }
    }
}

/// Compact symbol, naming the ideal generators `b-1`, `b'-1`, `c+1`, `c'+1`.
fn entry_symbol(x: &PairRing) -> String {
    Generator::ALL
        .into_iter()
        .find(|g| g.ring_element() == *x)
        .map_or_else(|| format_pair_entry(x), |g| g.to_string())
}

/// `x at column j, y at column k` over the nonzero entries.
fn sparse_row(row: &[PairRing]) -> String {
    let parts: Vec<String> = row
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| format!("{} at column {}", entry_symbol(x), j + 1))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(", ")
    }
}

fn matrix_json(m: &RingMatrix) -> Value {
    m.iter()
        .map(|r| r.iter().map(entry_symbol).collect::<Vec<_>>())
        .collect()
}

fn matrix(verify: bool, fixture: Option<&Path>, row: Option<usize>) -> Result<Report> {
    let m = coboundary_matrix(&klein_bottle_squared(), 3)?;
    let mut text = String::new();
    for (i, r) in m.iter().enumerate() {
        if row.is_none_or(|k| k == i + 1) {
            let _ = writeln!(text, "row {}: {}", i + 1, sparse_row(r));
        }
    }
    let mut mismatches = Vec::new();
    if verify {
        let expected = match fixture {
            Some(p) => parse_matrix_table(
                &std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            )
            .with_context(|| format!("parsing {}", p.display()))?,
            None => coboundary_matrix_fixture(),
        };
        if expected.len() != m.len() || expected.iter().any(|r| r.len() != m[0].len()) {
            mismatches.push(json!({"shape": format!("fixture is {}x{}", expected.len(), expected.first().map_or(0, Vec::len))}));
        } else {
            for (i, (a, b)) in m.iter().zip(&expected).enumerate() {
                for (j, (x, y)) in a.iter().zip(b).enumerate() {
                    if x != y {
                        mismatches.push(json!({
                            "row": i + 1,
                            "column": j + 1,
                            "computed": format_pair_entry(x),
                            "fixture": format_pair_entry(y),
                        }));
                    }
                }
            }
        }
        let lines: Vec<String> = mismatches
            .iter()
            .map(|v| match (v.get("row"), v.get("column")) {
                (Some(i), Some(j)) => format!(
                    "({i},{j}): computed {}, fixture {}",
                    v["computed"].as_str().unwrap_or(""),
                    v["fixture"].as_str().unwrap_or("")
                ),
                _ => v["shape"].as_str().unwrap_or("").to_string(),
            })
            .collect();
        write_verification(&mut text, &lines);
    }
    let verified = verify.then_some(mismatches.is_empty());
    let json = json!({"kind": "matrix", "rows": matrix_json(&m), "verified": verified, "mismatches": mismatches});
    Ok(Report::new(text, json, verdict(verified)))
}

fn reduce(verify: bool) -> Result<Report> {
    let m = coboundary_matrix(&klein_bottle_squared(), 3)?;
    let (reduced, log) = row_reduce(&m)?;
    if log.replay(&m)? != reduced || log.replay_inverse(&reduced)? != m {
        bail!("the reduction log does not replay");
    }
    let rows = nonzero_rows(&reduced);
    let mut text = format!("nonzero rows: {rows}\n");
    for (i, r) in reduced
        .iter()
        .enumerate()
        .filter(|(_, r)| r.iter().any(|x| !x.is_zero()))
    {
        let _ = writeln!(text, "row {}: {}", i + 1, sparse_row(r));
    }
    let eps = EpsilonSign::from_reduced(&reduced);
    let mut problems = Vec::new();
    match &eps {
        Ok(e) => {
            let signs: Vec<String> = e
                .as_slice()
                .iter()
                .map(|s| if *s > 0 { "+" } else { "-" }.to_string())
                .collect();
            let _ = writeln!(text, "epsilon: {}", signs.join(" "));
            if *e != EpsilonSign::from_congruence(e.len()) {
                problems.push("epsilon differs from the j = 2 mod 3 pattern".to_string());
            }
        }
        Err(err) => problems.push(err.to_string()),
    }
    if rows != 27 {
        problems.push(format!("{rows} nonzero rows, expected 27"));
    }
    let _ = writeln!(text, "operations: {}", log.ops.len());
    let _ = writeln!(text, "log hash: {}", log.hash());
    text.push_str("audit log (rows numbered from 1, multipliers on the right):\n");
    for op in &log.ops {
        let _ = writeln!(text, "  {}", serde_json::to_string(op)?);
    }
    if verify {
        write_verification_as(
            &mut text,
            &problems,
            "27 rows, unit pivots, epsilon column and ideal generators",
        );
    }
    let verified = verify.then_some(problems.is_empty());
    let json = json!({
        "kind": "reduce",
        "nonzero_rows": rows,
        "rows": matrix_json(&reduced),
        "epsilon": eps.ok().map(|e| e.as_slice().to_vec()),
        "log": log,
        "log_hash": log.hash(),
        "verified": verified,
        "mismatches": problems,
    });
    Ok(Report::new(text, json, verdict(verified)))
}

fn f_table(verify: bool) -> Result<Report> {
    let kk = klein_bottle_squared();
    let f = cf_one_cochain(&kk);
    let values: Vec<String> = (1..=15)
        .map(|i| f.get(i).map_or("0".into(), ToString::to_string))
        .collect();
    let mut text: String = values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("e{}: {v}\n", i + 1))
        .collect();
    let mut mismatches = Vec::new();
    if verify {
        for (i, expected) in f_table_fixture().iter().enumerate() {
            if f.get(i + 1).cloned().unwrap_or_default() != *expected {
                mismatches.push(format!(
                    "e{}: computed {}, table {expected}",
                    i + 1,
                    values[i]
                ));
            }
        }
        write_verification(&mut text, &mismatches);
    }
    let verified = verify.then_some(mismatches.is_empty());
    let json = json!({"kind": "f-table", "values": values, "verified": verified, "mismatches": mismatches});
    Ok(Report::new(text, json, verdict(verified)))
}

fn outcome_status(c: &Certificate) -> u8 {
    match c.outcome {
        Outcome::Zero => status::OK,
        Outcome::Nonzero => status::NONZERO,
        Outcome::Inconclusive => status::INCONCLUSIVE,
    }
}

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Zero => "zero",
        Outcome::Nonzero => "nonzero",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn write_certificate(c: &Certificate, path: Option<&Path>, text: &mut String) -> Result<()> {
    let _ = writeln!(
        text,
        "outcome: {} ({})",
        outcome_name(c.outcome),
        c.strategy
    );
    if let Some(note) = &c.note {
        let _ = writeln!(text, "note: {note}");
    }
    let _ = writeln!(text, "replay hash: {}", c.replay_hash);
    if let Some(p) = path {
        std::fs::write(p, c.to_json()).with_context(|| format!("writing {}", p.display()))?;
        let _ = writeln!(text, "certificate written to {}", p.display());
    }
    Ok(())
}

fn grid_lines(report: &SearchReport, text: &mut String) {
    for c in &report.cells {
        let s = match c.status {
            CellStatus::Nonzero => "nonzero",
            CellStatus::Inconclusive => "inconclusive",
            CellStatus::Skipped => "skipped",
            CellStatus::Failed => "failed",
        };
        let _ = writeln!(text, "Q({},{}) ell={}: {s}: {}", c.p, c.q, c.ell, c.detail);
    }
}

fn obstruction(
    config: &RunConfig,
    strategy: ObstructionStrategy,
    certificate: Option<&Path>,
) -> Result<Report> {
    let kk = klein_bottle_squared();
    let f = cf_one_cochain(&kk);
    let f4 = cup_power4(&kk, &f)?;
    let value = obstruction_value()?;
    let mut text = String::from("f table\n");
    for i in 1..=15 {
        let _ = writeln!(
            text,
            "  e{i}: {}",
            f.get(i).map_or("0".into(), ToString::to_string)
        );
    }
    text.push_str("f^4 on the 4-cells\n");
    let mut f4_json = Vec::new();
    for j in 1..=24 {
        let v = f4.get(j);
        let _ = writeln!(
            text,
            "  gamma{j}: {}",
            v.map_or("0".into(), ToString::to_string)
        );
        f4_json.push(json!({"cell": j, "rows": v.map(|t| t.to_rows()).unwrap_or_default()}));
    }
    let _ = writeln!(text, "obstruction value ({} terms): {value}", value.len());
    let mut extra = Value::Null;
    let cert = match strategy {
        ObstructionStrategy::FullRing => {
            reduce_full_ring(value.to_group_tensor().terms(), 4, config.window.window)?
        }
        ObstructionStrategy::Windowed => {
            windowed_membership(BasisKind::Alpha, 4, value.terms(), &config.window)?
        }
        ObstructionStrategy::Quotient => {
            let CommandConfig::Obstruction {
                quotient: Some(spec),
                ..
            } = &config.command
            else {
                bail!("--strategy quotient needs --quotient");
            };
            match finite_quotient_test(value.terms(), 4, spec, &config.budget.per_cell) {
                Ok(c) => c,
                Err(klein_core::Error::Budget(msg)) => inconclusive_budget(&value, msg),
                Err(e) => return Err(e.into()),
            }
        }
        ObstructionStrategy::Grid => {
            let report = quotient_grid_search(value.terms(), 4, &config.grid, &config.budget)?;
            grid_lines(&report, &mut text);
            extra = serde_json::to_value(&report.cells)?;
            report.certificate
        }
    };
    write_certificate(&cert, certificate, &mut text)?;
    let json = json!({
        "kind": "obstruction",
        "f_table": (1..=15).map(|i| f.get(i).map_or("0".into(), ToString::to_string)).collect::<Vec<String>>(),
        "f4": f4_json,
        "value": value.to_rows(),
        "grid": extra,
        "certificate": cert,
    });
    Ok(Report::new(text, json, outcome_status(&cert)))
}

fn inconclusive_budget(value: &klein_core::IdealTensor, msg: String) -> Certificate {
    Certificate::new(
        Outcome::Inconclusive,
        klein_core::obstruction::QUOTIENT_STRATEGY,
        klein_core::obstruction::TargetDoc::new(BasisKind::Alpha, 4, value.terms()),
        klein_core::obstruction::Witness::None,
        Some(msg),
    )
}

fn quotient_search(config: &RunConfig, certificate: Option<&Path>) -> Result<Report> {
    let value = obstruction_value()?;
    let report = quotient_grid_search(value.terms(), 4, &config.grid, &config.budget)?;
    let mut text = String::new();
    grid_lines(&report, &mut text);
    write_certificate(&report.certificate, certificate, &mut text)?;
    let json = json!({"kind": "quotient-search", "cells": report.cells, "certificate": report.certificate});
    Ok(Report::new(text, json, outcome_status(&report.certificate)))
}

fn verify(path: &Path) -> Result<Report> {
    let doc =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(match verify_certificate(&doc) {
        Ok(r) => {
            let mut text = format!("certificate verified: {} via {}\n", r.outcome, r.strategy);
            for c in &r.checks {
                let _ = writeln!(text, "  {c}");
            }
            let json = json!({"kind": "verify", "valid": true, "outcome": r.outcome, "strategy": r.strategy, "checks": r.checks});
            Report::new(text, json, status::OK)
        }
        Err(e) => Report::new(
            format!("{e}\n"),
            json!({"kind": "verify", "valid": false, "error": e.to_string()}),
            status::FAILED,
        ),
    })
}
