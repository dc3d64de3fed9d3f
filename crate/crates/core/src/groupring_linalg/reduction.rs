//! Row reduction of matrices over `Z[pi x pi]` with an invertible,
//! replayable operation log.
//!
//! Matrices act on coefficient vectors from the left of each entry, so the
//! image of `M` is `{ (sum_i m_ij x_i)_j }`. Row operations therefore multiply
//! rows by ring elements on the right: `r_t <- r_t + r_s * lambda` replaces
//! `x_s` by `x_s + lambda x_t` and leaves the image unchanged.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::character::{chi_ring, kernel_witness, Generator};
use crate::error::{Error, Result};
use crate::group_ring::{Group, PairElement, PairRing};

pub type RingMatrix = Vec<Vec<PairRing>>;

/// An elementary row operation. Rows are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum RowOp {
    Swap {
        first: usize,
        second: usize,
    },
    Negate {
        row: usize,
    },
    /// `row[target] += row[source] * (scalar * monomial)`.
    AddMultiple {
        target: usize,
        source: usize,
        scalar: i64,
        monomial: PairElement,
    },
    /// `row *= monomial`, a unit.
    ScaleRight {
        row: usize,
        monomial: PairElement,
    },
}

fn row_index(m: &RingMatrix, row: usize) -> Result<usize> {
    if row == 0 || row > m.len() {
        return Err(Error::ReductionStalled(format!("row {row} out of range")));
    }
    Ok(row - 1)
}

impl RowOp {
    pub fn apply(&self, m: &mut RingMatrix) -> Result<()> {
        match *self {
            RowOp::Swap { first, second } => {
                let (i, j) = (row_index(m, first)?, row_index(m, second)?);
                m.swap(i, j);
            }
            RowOp::Negate { row } => {
                let i = row_index(m, row)?;
                for e in &mut m[i] {
                    *e = e.scaled(-1);
                }
            }
            RowOp::AddMultiple {
                target,
                source,
                scalar,
                monomial,
            } => {
                let (t, s) = (row_index(m, target)?, row_index(m, source)?);
                if t == s {
                    return Err(Error::ReductionStalled(format!(
                        "row {target} added to itself"
                    )));
                }
                for j in 0..m[t].len() {
                    let add = m[s][j].right_mul_group(&monomial).scaled(scalar);
                    m[t][j] = &m[t][j] + &add;
                }
            }
            RowOp::ScaleRight { row, monomial } => {
                let i = row_index(m, row)?;
                for e in &mut m[i] {
                    *e = e.right_mul_group(&monomial);
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> RowOp {
        match self.clone() {
            RowOp::AddMultiple {
                target,
                source,
                scalar,
                monomial,
            } => RowOp::AddMultiple {
                target,
                source,
                scalar: -scalar,
                monomial,
            },
            RowOp::ScaleRight { row, monomial } => RowOp::ScaleRight {
                row,
                monomial: monomial.inverse(),
            },
            op => op,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicationSide {
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLog {
    pub multiplication_side: MultiplicationSide,
    pub ops: Vec<RowOp>,
}

impl Default for ReductionLog {
    fn default() -> Self {
        Self {
            multiplication_side: MultiplicationSide::Right,
            ops: Vec::new(),
        }
    }
}

impl ReductionLog {
    pub fn replay(&self, m: &RingMatrix) -> Result<RingMatrix> {
        let mut out = m.clone();
        for op in &self.ops {
            op.apply(&mut out)?;
        }
        Ok(out)
    }

    /// Undoes the log, mapping the reduced matrix back to the original.
    pub fn replay_inverse(&self, reduced: &RingMatrix) -> Result<RingMatrix> {
        let mut out = reduced.clone();
        for op in self.ops.iter().rev() {
            op.inverse().apply(&mut out)?;
        }
        Ok(out)
    }

    /// SHA-256 of the JSON encoding, hex.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("log serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

struct Reducer {
    m: RingMatrix,
    log: ReductionLog,
}

impl Reducer {
    fn push(&mut self, op: RowOp) {
        op.apply(&mut self.m)
            .expect("reducer emits valid operations");
        self.log.ops.push(op);
    }

    fn swap(&mut self, i: usize, j: usize) {
        if i != j {
            self.push(RowOp::Swap {
                first: i + 1,
                second: j + 1,
            });
        }
    }

    /// Cancels `entry * unit` into the row, for every term of `entry`.
    fn eliminate_with(&mut self, target: usize, source: usize, entry: &PairRing) {
        for (g, k) in entry.terms().iter() {
            self.push(RowOp::AddMultiple {
                target: target + 1,
                source: source + 1,
                scalar: -k,
                monomial: *g,
            });
        }
    }

    /// Turns a `±g` pivot into 1.
    fn normalize(&mut self, row: usize, sign: i64, g: PairElement) {
        if sign < 0 {
            self.push(RowOp::Negate { row: row + 1 });
        }
        if !g.is_identity() {
            self.push(RowOp::ScaleRight {
                row: row + 1,
                monomial: g.inverse(),
            });
        }
    }
}

/// Reduces the top coboundary matrix of `K×K` to the form: rows `1..n-1` with
/// 1 on the diagonal and an integer in the last column, then rows holding
/// `b-1, b'-1, c+1, c'+1` in the last column, then zero rows.
///
/// Columns `1..n-1` are cleared with unit pivots, top to bottom; the last
/// column is then reduced modulo the right ideal `ker chi` using explicit
/// generator decompositions.
pub fn row_reduce(m: &RingMatrix) -> Result<(RingMatrix, ReductionLog)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 || rows < cols + 3 {
        return Err(Error::ReductionStalled(format!(
            "unexpected matrix shape {rows}x{cols}"
        )));
    }
    let last = cols - 1;
    let mut r = Reducer {
        m: m.clone(),
        log: ReductionLog::default(),
    };

    for col in 0..last {
        let pivot = (col..rows)
            .find(|&i| r.m[i][col].is_unit_monomial())
            .ok_or_else(|| {
                Error::ReductionStalled(format!(
                    "no unit pivot in column {} among rows {}..{rows}",
                    col + 1,
                    col + 1
                ))
            })?;
        r.swap(col, pivot);
        let (g, sign) = r.m[col][col]
            .as_monomial()
            .map(|(g, c)| (*g, c))
            .expect("unit pivot");
        r.normalize(col, sign, g);
        for i in (0..rows).filter(|&i| i != col) {
            let entry = r.m[i][col].clone();
            if !entry.is_zero() {
                r.eliminate_with(i, col, &entry);
            }
        }
    }

    // place the four generators, each found as ±gen * g in some remaining row
    for (k, gen) in Generator::ALL.iter().enumerate() {
        let slot = last + k;
        let gen_elem = gen.ring_element();
        let found = (slot..rows).find_map(|i| {
            r.m[i][last].terms().keys().find_map(|g| {
                let scaled = r.m[i][last].right_mul_group(&g.inverse());
                if scaled == gen_elem {
                    Some((i, 1, *g))
                } else if scaled == gen_elem.scaled(-1) {
                    Some((i, -1, *g))
                } else {
                    None
                }
            })
        });
        let (i, sign, g) = found.ok_or_else(|| {
            Error::ReductionStalled(format!(
                "no row reduces to a unit multiple of {gen} in the last column"
            ))
        })?;
        r.swap(slot, i);
        r.normalize(slot, sign, g);
    }

    for i in (0..rows).filter(|&i| !(last..last + 4).contains(&i)) {
        let entry = r.m[i][last].clone();
        if entry.is_zero() {
            continue;
        }
        for term in kernel_witness(&entry) {
            let source = last
                + Generator::ALL
                    .iter()
                    .position(|g| *g == term.generator)
                    .expect("known generator");
            r.push(RowOp::AddMultiple {
                target: i + 1,
                source: source + 1,
                scalar: -term.coefficient,
                monomial: term.monomial,
            });
        }
        debug_assert_eq!(
            r.m[i][last],
            PairRing::monomial(PairElement::identity(), chi_ring(&entry))
        );
        if i >= last + 4 && !r.m[i][last].is_zero() {
            return Err(Error::ReductionStalled(format!(
                "row {} keeps the integer {} in the last column",
                i + 1,
                chi_ring(&entry)
            )));
        }
    }
    Ok((r.m, r.log))
}

/// The signs `epsilon_j`, `j = 1..n`, read off a reduced matrix:
/// `epsilon_j = -m_{j,n}` for `j < n` and `epsilon_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EpsilonSign(Vec<i64>);

impl EpsilonSign {
    /// `epsilon_j = -1` iff `j ≡ 2 (mod 3)`.
    pub fn from_congruence(n: usize) -> Self {
        Self((1..=n).map(|j| if j % 3 == 2 { -1 } else { 1 }).collect())
    }

    /// Checks the shape produced by [`row_reduce`] and extracts the signs.
    pub fn from_reduced(reduced: &RingMatrix) -> Result<Self> {
        let cols = reduced.first().map_or(0, Vec::len);
        let last = cols - 1;
        let bad = |i: usize, j: usize, why: &str| {
            Err(Error::ReductionStalled(format!(
                "reduced entry ({}, {}) {why}",
                i + 1,
                j + 1
            )))
        };
        let mut eps = Vec::with_capacity(cols);
        for (i, row) in reduced.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let expected_zero = match (i, j) {
                    (i, j) if i < last && j == i => {
                        if *e != PairRing::one() {
                            return bad(i, j, "is not 1");
                        }
                        false
                    }
                    (i, j) if i < last && j == last => {
                        match e.as_monomial() {
                            Some((g, c)) if g.is_identity() && (c == 1 || c == -1) => eps.push(-c),
                            _ => return bad(i, j, "is not ±1"),
                        }
                        false
                    }
                    (i, j) if (last..last + 4).contains(&i) && j == last => {
                        if *e != Generator::ALL[i - last].ring_element() {
                            return bad(i, j, "is not the expected generator");
                        }
                        false
                    }
                    _ => true,
                };
                if expected_zero && !e.is_zero() {
                    return bad(i, j, "is not zero");
                }
            }
        }
        eps.push(1);
        Ok(Self(eps))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `epsilon_j` for `j` counted from 1.
    pub fn get(&self, j: usize) -> i64 {
        self.0[j - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

/// Number of rows with a nonzero entry.
pub fn nonzero_rows(m: &RingMatrix) -> usize {
    m.iter()
        .filter(|row| row.iter().any(|e| !e.is_zero()))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta_complex::klein_bottle_squared;
    use crate::group_ring::GroupElement;
    use crate::twisted_cohomology::coboundary_matrix;

    fn top_matrix() -> RingMatrix {
        coboundary_matrix(&klein_bottle_squared(), 3).unwrap()
    }

    #[test]
    fn reduces_to_the_27_row_form() {
        let m = top_matrix();
        let (reduced, log) = row_reduce(&m).unwrap();
        assert_eq!(nonzero_rows(&reduced), 27);
        let eps = EpsilonSign::from_reduced(&reduced).unwrap();
        assert_eq!(eps, EpsilonSign::from_congruence(24));
        assert_eq!(reduced[23][23], Generator::BLeft.ring_element());
        assert_eq!(reduced[4][4], PairRing::one());
        assert_eq!(reduced[4][23], PairRing::one());
        assert_eq!(log.replay(&m).unwrap(), reduced);
        assert_eq!(log.replay_inverse(&reduced).unwrap(), m);
    }

    #[test]
    fn log_is_deterministic_and_serializes() {
        let m = top_matrix();
        let (_, log1) = row_reduce(&m).unwrap();
        let (_, log2) = row_reduce(&m).unwrap();
        assert_eq!(log1.hash(), log2.hash());
        let json = serde_json::to_string(&log1).unwrap();
        assert!(json.contains("\"multiplication_side\":\"right\""));
        let back: ReductionLog = serde_json::from_str(&json).unwrap();
        assert_eq!(back, log1);
    }

    #[test]
    fn operations_invert() {
        let m = top_matrix();
        let g = PairElement::new(GroupElement::new(1, 2), GroupElement::new(-1, 0));
        let ops = [
            RowOp::Swap {
                first: 1,
                second: 5,
            },
            RowOp::Negate { row: 3 },
            RowOp::AddMultiple {
                target: 2,
                source: 7,
                scalar: 3,
                monomial: g,
            },
            RowOp::ScaleRight {
                row: 9,
                monomial: g,
            },
        ];
        for op in ops {
            let mut x = m.clone();
            op.apply(&mut x).unwrap();
            op.inverse().apply(&mut x).unwrap();
            assert_eq!(x, m, "{op:?}");
        }
        let mut x = m.clone();
        let bad = RowOp::AddMultiple {
            target: 2,
            source: 2,
            scalar: 1,
            monomial: g,
        };
        assert!(bad.apply(&mut x).is_err());
    }

    #[test]
    fn epsilon_congruence() {
        let e = EpsilonSign::from_congruence(24);
        assert_eq!(e.get(1), 1);
        assert_eq!(e.get(2), -1);
        assert_eq!(e.get(5), -1);
        assert_eq!(e.get(24), 1);
        assert_eq!(e.as_slice().iter().filter(|x| **x < 0).count(), 8);
    }
}
