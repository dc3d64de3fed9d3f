//! The printed `K×K` cell tables, bundled for cross-checking the computed
//! complex and its numbering.

use super::{Representative, Vertex};
use crate::error::{Error, Result};

const KXK_CELLS: &str = include_str!("../../fixtures/kxk_cells.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedCell {
    pub dimension: usize,
    pub index: usize,
    /// In printed order; the first one is not always the least.
    pub representatives: Vec<Representative>,
}

fn parse_vertex(s: &str) -> Result<Vertex> {
    let digit = |c: char| -> Result<Option<u32>> {
        match c {
            'v' => Ok(None),
            _ => c
                .to_digit(10)
                .map(Some)
                .ok_or_else(|| Error::Format(format!("bad vertex {s:?}"))),
        }
    };
    let cs: Vec<char> = s.chars().collect();
    if cs.len() != 2 {
        return Err(Error::Format(format!("bad vertex {s:?}")));
    }
    Ok(Vertex::Pair(digit(cs[0])?, digit(cs[1])?))
}

/// Parses `(00,10,11)` into a representative.
pub fn parse_pair_representative(s: &str) -> Result<Representative> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Format(format!("bad representative {s:?}")))?;
    inner.split(',').map(|v| parse_vertex(v.trim())).collect()
}

pub fn parse_cell_table(text: &str) -> Result<Vec<PrintedCell>> {
    let mut out = Vec::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let (head, reps) = line
            .split_once(':')
            .ok_or_else(|| Error::Format(format!("bad line {line:?}")))?;
        let mut nums = head.split_whitespace().map(str::parse::<usize>);
        let (Some(Ok(dimension)), Some(Ok(index)), None) = (nums.next(), nums.next(), nums.next())
        else {
            return Err(Error::Format(format!("bad line {line:?}")));
        };
        let representatives = reps
            .split('=')
            .map(parse_pair_representative)
            .collect::<Result<_>>()?;
        out.push(PrintedCell {
            dimension,
            index,
            representatives,
        });
    }
    Ok(out)
}

/// The bundled printed `K×K` tables.
pub fn kxk_printed_cells() -> Vec<PrintedCell> {
    parse_cell_table(KXK_CELLS).expect("bundled cell table parses")
}
