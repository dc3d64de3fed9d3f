//! Row echelon form of an integer lattice with sparse rows, built by
//! insertion with unimodular `2×2` steps, recording each basis row as a
//! combination of the inserted generators.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Sorted `(column, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, i128)>;

fn overflow() -> Error {
    Error::Overflow("integer lattice reduction".into())
}

/// `x*a + y*b`, merged by column.
fn combine(a: &SparseVec, x: i128, b: &SparseVec, y: i128) -> Result<SparseVec> {
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, v) = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, va.checked_mul(x).ok_or_else(overflow)?)
            }
            (Some(&(ca, _)), Some(&(cb, vb))) if cb < ca => {
                j += 1;
                (cb, vb.checked_mul(y).ok_or_else(overflow)?)
            }
            (Some(&(ca, va)), Some(&(_, vb))) => {
                i += 1;
                j += 1;
                let s = va
                    .checked_mul(x)
                    .and_then(|p| vb.checked_mul(y).and_then(|q| p.checked_add(q)));
                (ca, s.ok_or_else(overflow)?)
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, va.checked_mul(x).ok_or_else(overflow)?)
            }
            (None, Some(&(cb, vb))) => {
                j += 1;
                (cb, vb.checked_mul(y).ok_or_else(overflow)?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((col, v));
        }
    }
    Ok(out)
}

/// `(g, u, v)` with `g = gcd(a, b) = u a + v b`, `g > 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (a, b, 1i128, 0i128, 0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

#[derive(Clone, Debug)]
struct Row {
    entries: SparseVec,
    combo: SparseVec,
}

impl Row {
    fn lead(&self) -> Option<(usize, i128)> {
        self.entries.first().copied()
    }

    fn combine(&self, x: i128, other: &Row, y: i128, track: bool) -> Result<Row> {
        Ok(Row {
            entries: combine(&self.entries, x, &other.entries, y)?,
            combo: if track {
                combine(&self.combo, x, &other.combo, y)?
            } else {
                Vec::new()
            },
        })
    }
}

/// Echelon basis of the lattice spanned by inserted generators: at most one
/// row per leading column.
#[derive(Clone, Debug, Default)]
pub struct IntegerLattice {
    rows: BTreeMap<usize, Row>,
    track: bool,
    generators: usize,
}

impl IntegerLattice {
    /// With `track`, membership answers carry a combination of generators.
    pub fn new(track: bool) -> Self {
        Self {
            rows: BTreeMap::new(),
            track,
            generators: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Adds a generator; its id is the number of generators inserted before it.
    pub fn insert(&mut self, v: SparseVec) -> Result<usize> {
        let id = self.generators;
        self.generators += 1;
        let combo = if self.track {
            vec![(id, 1)]
        } else {
            Vec::new()
        };
        let mut row = Row { entries: v, combo };
        while let Some((col, b)) = row.lead() {
            let Some(pivot) = self.rows.get(&col) else {
                self.rows.insert(col, row);
                break;
            };
            let a = pivot.lead().expect("stored rows are nonzero").1;
            if b % a == 0 {
                row = row.combine(1, pivot, -(b / a), self.track)?;
                continue;
            }
            let (g, u, w) = ext_gcd(a, b);
            let new_pivot = pivot.combine(u, &row, w, self.track)?;
            let rest = row.combine(a / g, pivot, -(b / g), self.track)?;
            self.rows.insert(col, new_pivot);
            row = rest;
        }
        Ok(id)
    }

    /// Reduces `v` by the basis. Returns the remainder (empty iff `v` is in the
    /// lattice) and, when tracking, the combination `c` of generators with
    /// `v - remainder = sum c_i g_i`.
    pub fn reduce(&self, v: &SparseVec) -> Result<(SparseVec, SparseVec)> {
        let mut rest = v.clone();
        let mut combo: SparseVec = Vec::new();
        while let Some(&(col, b)) = rest.first() {
            let Some(pivot) = self.rows.get(&col) else {
                break;
            };
            let a = pivot.lead().expect("stored rows are nonzero").1;
            if b % a != 0 {
                break;
            }
            let q = b / a;
            rest = combine(&rest, 1, &pivot.entries, -q)?;
            if self.track {
                combo = combine(&combo, 1, &pivot.combo, q)?;
            }
        }
        Ok((rest, combo))
    }

    /// `Some(combination)` iff `v` lies in the lattice (combination empty when
    /// not tracking).
    pub fn membership(&self, v: &SparseVec) -> Result<Option<SparseVec>> {
        let (rest, combo) = self.reduce(v)?;
        Ok(rest.is_empty().then_some(combo))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(v: &SparseVec, n: usize) -> Vec<i128> {
        let mut out = vec![0; n];
        for (c, x) in v {
            out[*c] = *x;
        }
        out
    }

    fn sparse(v: &[i128]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i, *x))
            .collect()
    }

    #[test]
    fn gcd_and_membership() {
        assert_eq!(ext_gcd(12, -18).0, 6);
        let mut l = IntegerLattice::new(true);
        l.insert(sparse(&[4, 2, 0])).unwrap();
        l.insert(sparse(&[6, 0, 2])).unwrap();
        // lattice contains (2, -2, 2) = (6,0,2) - (4,2,0)
        let combo = l.membership(&sparse(&[2, -2, 2])).unwrap().unwrap();
        assert_eq!(combo, vec![(0, -1), (1, 1)]);
        assert!(l.membership(&sparse(&[1, 0, 0])).unwrap().is_none());
        assert!(l.membership(&sparse(&[0, 0, 1])).unwrap().is_none());
        assert_eq!(l.membership(&Vec::new()).unwrap(), Some(Vec::new()));
    }

    proptest! {
        #[test]
        fn random_combinations_are_members(
            gens in prop::collection::vec(prop::collection::vec(-3i128..=3, 6), 1..6),
            coeffs in prop::collection::vec(-4i128..=4, 6),
        ) {
            let mut l = IntegerLattice::new(true);
            for g in &gens {
                l.insert(sparse(g)).unwrap();
            }
            let mut v = vec![0i128; 6];
            for (g, c) in gens.iter().zip(&coeffs) {
                for k in 0..6 {
                    v[k] += g[k] * c;
                }
            }
            let combo = l.membership(&sparse(&v)).unwrap().expect("member");
            let mut replay = vec![0i128; 6];
            for (i, c) in dense(&combo, gens.len()).iter().enumerate() {
                for k in 0..6 {
                    replay[k] += gens[i][k] * c;
                }
            }
            prop_assert_eq!(replay, v);
        }
    }
}
