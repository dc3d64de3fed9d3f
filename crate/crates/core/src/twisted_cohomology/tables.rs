//! Bundled coefficient tables for `K×K`, and the compact symbols used to
//! print coboundary matrix entries (`b`, `b'`, `c`, `c'` with `c = ab^-1`).

use crate::error::{Error, Result};
use crate::group_ring::{Group, GroupElement, IdealElement, PairElement, PairRing};

const F_TABLE: &str = include_str!("../../fixtures/f_table.txt");
const COBOUNDARY_M4: &str = include_str!("../../fixtures/coboundary_m4.txt");

fn data_lines(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| l.split_once(':'))
        .map(|(i, rest)| (i.trim(), rest.trim()))
}

fn symbol_element(s: &str) -> Option<GroupElement> {
    match s {
        "1" => Some(GroupElement::identity()),
        "a" => Some(GroupElement::a()),
        "b" => Some(GroupElement::b()),
        "c" => Some(GroupElement::c()),
        _ => None,
    }
}

/// Parses `0`, `±1`, `±g` or `±g'` for `g` in `{a, b, c}`.
pub fn parse_pair_entry(s: &str) -> Result<PairRing> {
    if s == "0" {
        return Ok(PairRing::zero());
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s),
    };
    let (body, primed) = match body.strip_suffix('\'') {
        Some(rest) => (rest, true),
        None => (body, false),
    };
    let g =
        symbol_element(body).ok_or_else(|| Error::Format(format!("unknown matrix entry {s:?}")))?;
    let p = if primed {
        PairElement::right(g)
    } else {
        PairElement::left(g)
    };
    Ok(PairRing::monomial(p, sign))
}

fn symbol_of(g: &GroupElement) -> Option<&'static str> {
    ["a", "b", "c"]
        .into_iter()
        .find(|s| symbol_element(s) == Some(*g))
}

/// Inverse of [`parse_pair_entry`]; other elements fall back to the general
/// ring notation.
pub fn format_pair_entry(x: &PairRing) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if let Some((p, c)) = x.as_monomial() {
        let sign = if c == -1 { "-" } else { "" };
        if c.abs() == 1 {
            if p.is_identity() {
                return format!("{sign}1");
            }
            if p.second.is_identity() {
                if let Some(s) = symbol_of(&p.first) {
                    return format!("{sign}{s}");
                }
            }
            if p.first.is_identity() {
                if let Some(s) = symbol_of(&p.second) {
                    return format!("{sign}{s}'");
                }
            }
        }
    }
    x.to_string()
}

/// Parses a matrix in the `row: entry entry ...` layout of the bundled table.
/// Rows must be numbered `1, 2, ...` and have equal length.
pub fn parse_matrix_table(text: &str) -> Result<Vec<Vec<PairRing>>> {
    let mut rows: Vec<Vec<PairRing>> = Vec::new();
    for (i, row) in data_lines(text) {
        if i.parse::<usize>().ok() != Some(rows.len() + 1) {
            return Err(Error::Format(format!(
                "expected row {}, found {i:?}",
                rows.len() + 1
            )));
        }
        let entries = row
            .split_whitespace()
            .map(parse_pair_entry)
            .collect::<Result<Vec<_>>>()?;
        if rows.first().is_some_and(|r| r.len() != entries.len()) {
            return Err(Error::Format(format!(
                "row {i} has {} entries",
                entries.len()
            )));
        }
        rows.push(entries);
    }
    Ok(rows)
}

/// Renders a matrix in the layout read by [`parse_matrix_table`].
pub fn format_matrix_table(m: &[Vec<PairRing>]) -> String {
    let mut out = format!(
        "# row: entries for columns 1..{}\n",
        m.first().map_or(0, Vec::len)
    );
    for (i, row) in m.iter().enumerate() {
        let entries: Vec<String> = row.iter().map(format_pair_entry).collect();
        out.push_str(&format!("{}: {}\n", i + 1, entries.join(" ")));
    }
    out
}

/// The printed 60×24 top coboundary matrix.
pub fn coboundary_matrix_fixture() -> Vec<Vec<PairRing>> {
    parse_matrix_table(COBOUNDARY_M4).expect("bundled table parses")
}

fn parse_alpha(s: &str) -> Result<IdealElement> {
    if s == "0" {
        return Ok(IdealElement::zero());
    }
    let bad = || Error::Format(format!("bad alpha entry {s:?}"));
    let inner = s
        .strip_prefix("a(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (m, n) = inner.split_once(',').ok_or_else(bad)?;
    let m = m.trim().parse().map_err(|_| bad())?;
    let n = n.trim().parse().map_err(|_| bad())?;
    Ok(IdealElement::alpha(GroupElement::new(m, n)))
}

/// The printed values of the canonical one-cochain on the 15 edges.
pub fn f_table_fixture() -> Vec<IdealElement> {
    data_lines(F_TABLE)
        .map(|(_, v)| parse_alpha(v).expect("bundled entry parses"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_round_trip() {
        for s in ["0", "1", "-1", "b", "b'", "c", "-c'", "a"] {
            assert_eq!(format_pair_entry(&parse_pair_entry(s).unwrap()), s);
        }
        assert!(parse_pair_entry("d").is_err());
        let m = coboundary_matrix_fixture();
        assert_eq!(parse_matrix_table(&format_matrix_table(&m)).unwrap(), m);
        assert!(parse_matrix_table("2: 1 0").is_err());
        assert!(parse_matrix_table("1: 1 0\n2: 1").is_err());
        let c = parse_pair_entry("c").unwrap();
        assert_eq!(
            c,
            PairRing::monomial(PairElement::left(GroupElement::new(1, -1)), 1)
        );
    }
}
