//! Submodules of `(Z/p^k)^n` in Howell form, with membership witnesses and,
//! for non-members, a separating functional from a Smith form.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The modulus `p^k` with `p` prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    pub prime: u64,
    pub power: u32,
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl Modulus {
    pub fn new(prime: u64, power: u32) -> Result<Self> {
        if !is_prime(prime) || power == 0 {
            return Err(Error::Quotient(format!(
                "{prime}^{power} is not a prime power modulus"
            )));
        }
        match prime.checked_pow(power) {
            Some(m) if m < 1 << 31 => Ok(Self { prime, power }),
            _ => Err(Error::Quotient(format!(
                "modulus {prime}^{power} is too large"
            ))),
        }
    }

    /// Splits `m = p^k`.
    pub fn from_value(m: u64) -> Result<Self> {
        let p = (2..=m)
            .find(|d| m.is_multiple_of(*d))
            .ok_or_else(|| Error::Quotient(format!("modulus {m} < 2")))?;
        let mut k = 0;
        let mut x = m;
        while x.is_multiple_of(p) {
            x /= p;
            k += 1;
        }
        if x != 1 {
            return Err(Error::Quotient(format!("modulus {m} is not a prime power")));
        }
        Self::new(p, k)
    }

    pub fn value(&self) -> u64 {
        self.prime.pow(self.power)
    }

    /// Exponent of `p` in `x` (`k` for zero).
    pub fn valuation(&self, x: u64) -> u32 {
        let m = self.value();
        let mut x = x % m;
        if x == 0 {
            return self.power;
        }
        let mut e = 0;
        while x.is_multiple_of(self.prime) {
            x /= self.prime;
            e += 1;
        }
        e
    }

    /// Inverse of a unit.
    pub fn inverse(&self, u: u64) -> u64 {
        let m = self.value() as i128;
        let (mut r0, mut r1, mut s0, mut s1) = (u as i128 % m, m, 1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        assert_eq!(r0, 1, "{u} is not a unit mod {m}");
        s0.rem_euclid(m) as u64
    }

    pub fn reduce_signed(&self, x: i128) -> u64 {
        x.rem_euclid(self.value() as i128) as u64
    }
}

#[derive(Clone, Copy)]
struct Arith {
    m: u64,
    mask: Option<u64>,
}

impl Arith {
    fn new(modulus: Modulus) -> Self {
        let m = modulus.value();
        Self {
            m,
            mask: (modulus.prime == 2).then_some(m - 1),
        }
    }

    #[inline]
    fn red(&self, x: u64) -> u64 {
        match self.mask {
            Some(mask) => x & mask,
            None => x % self.m,
        }
    }

    /// `dst[from..] -= f * src[from..]`.
    #[inline]
    fn axpy(&self, dst: &mut [u64], f: u64, src: &[u64], from: usize) {
        let g = self.m - self.red(f);
        if g == self.m {
            return;
        }
        for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
            if *s != 0 {
                *d = self.red(*d + g * *s);
            }
        }
    }

    fn scale(&self, v: &mut [u64], f: u64) {
        for x in v.iter_mut() {
            *x = self.red(*x * f);
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    entries: Vec<u64>,
    combo: BTreeMap<usize, u64>,
}

/// Howell form of a submodule of `(Z/p^k)^dim`: one row per pivot column,
/// pivots normalized to powers of `p`, closed under the multiples that clear
/// a pivot.
#[derive(Clone, Debug)]
pub struct ModularLattice {
    modulus: Modulus,
    arith_m: u64,
    dim: usize,
    pivots: Vec<Option<Row>>,
    track: bool,
    generators: usize,
    deadline: Option<Instant>,
}

fn timed_out(deadline: Option<Instant>) -> Result<()> {
    match deadline {
        Some(d) if Instant::now() >= d => Err(Error::Budget("time limit reached".into())),
        _ => Ok(()),
    }
}

impl ModularLattice {
    pub fn new(modulus: Modulus, dim: usize, track: bool) -> Self {
        Self {
            modulus,
            arith_m: modulus.value(),
            dim,
            pivots: vec![None; dim],
            track,
            generators: 0,
            deadline: None,
        }
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    fn arith(&self) -> Arith {
        Arith::new(self.modulus)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.iter().filter(|p| p.is_some()).count()
    }

    fn combo_axpy(&self, dst: &mut BTreeMap<usize, u64>, f: u64, src: &BTreeMap<usize, u64>) {
        if !self.track {
            return;
        }
        let a = self.arith();
        let g = self.arith_m - a.red(f);
        for (k, v) in src {
            let e = dst.entry(*k).or_insert(0);
            *e = a.red(*e + g * v);
            if *e == 0 {
                dst.remove(k);
            }
        }
    }

    fn combo_scale(&self, c: &mut BTreeMap<usize, u64>, f: u64) {
        let a = self.arith();
        c.values_mut().for_each(|v| *v = a.red(*v * f));
        c.retain(|_, v| *v != 0);
    }

    /// Adds a generator given as dense entries (reduced mod `p^k`).
    pub fn insert(&mut self, entries: Vec<u64>) -> Result<usize> {
        timed_out(self.deadline)?;
        assert_eq!(entries.len(), self.dim, "generator length");
        let id = self.generators;
        self.generators += 1;
        let a = self.arith();
        let mut first = Row {
            entries: entries.into_iter().map(|x| a.red(x)).collect(),
            combo: BTreeMap::new(),
        };
        if self.track {
            first.combo.insert(id, 1);
        }
        let mut stack = vec![first];
        while let Some(row) = stack.pop() {
            self.absorb(row, &mut stack);
        }
        Ok(id)
    }

    fn absorb(&mut self, mut row: Row, stack: &mut Vec<Row>) {
        let a = self.arith();
        let md = self.modulus;
        for c in 0..self.dim {
            let x = row.entries[c];
            if x == 0 {
                continue;
            }
            let f = md.valuation(x);
            let pe = md.prime.pow(f);
            match self.pivots[c].take() {
                None => {
                    let u = md.inverse(x / pe);
                    a.scale(&mut row.entries[c..], u);
                    self.combo_scale(&mut row.combo, u);
                    self.push_closure(&row, f, stack);
                    self.pivots[c] = Some(row);
                    return;
                }
                Some(piv) => {
                    let e = md.valuation(piv.entries[c]);
                    if f >= e {
                        let t = x / md.prime.pow(e);
                        a.axpy(&mut row.entries, t, &piv.entries, c);
                        let mut combo = std::mem::take(&mut row.combo);
                        self.combo_axpy(&mut combo, t, &piv.combo);
                        row.combo = combo;
                        self.pivots[c] = Some(piv);
                    } else {
                        // the incoming row has the smaller valuation and takes over
                        let u = md.inverse(x / pe);
                        a.scale(&mut row.entries[c..], u);
                        self.combo_scale(&mut row.combo, u);
                        self.push_closure(&row, f, stack);
                        let mut old = piv;
                        let t = md.prime.pow(e - f);
                        a.axpy(&mut old.entries, t, &row.entries, c);
                        let mut combo = std::mem::take(&mut old.combo);
                        self.combo_axpy(&mut combo, t, &row.combo);
                        old.combo = combo;
                        self.pivots[c] = Some(row);
                        row = old;
                    }
                }
            }
        }
    }

    /// `p^{k-e}` times a new pivot row of valuation `e > 0` vanishes in its
    /// pivot column and must itself lie in the module.
    fn push_closure(&self, row: &Row, e: u32, stack: &mut Vec<Row>) {
        if e == 0 {
            return;
        }
        let f = self.modulus.prime.pow(self.modulus.power - e);
        let mut r = row.clone();
        self.arith().scale(&mut r.entries, f);
        self.combo_scale(&mut r.combo, f);
        if r.entries.iter().any(|x| *x != 0) {
            stack.push(r);
        }
    }

    /// `Some(c)` with `v = sum c_i g_i (mod p^k)` iff `v` is in the module; `c`
    /// is empty when not tracking.
    pub fn membership(&self, v: &[u64]) -> Option<BTreeMap<usize, u64>> {
        let a = self.arith();
        let md = self.modulus;
        let mut rest: Vec<u64> = v.iter().map(|x| a.red(*x)).collect();
        let mut combo = BTreeMap::new();
        for c in 0..self.dim {
            let x = rest[c];
            if x == 0 {
                continue;
            }
            let piv = self.pivots[c].as_ref()?;
            let e = md.valuation(piv.entries[c]);
            if md.valuation(x) < e {
                return None;
            }
            let t = x / md.prime.pow(e);
            a.axpy(&mut rest, t, &piv.entries, c);
            // combo += t * piv.combo
            self.combo_axpy(&mut combo, self.arith_m - a.red(t), &piv.combo);
        }
        Some(combo)
    }

    /// A functional `lambda` vanishing on the module with `lambda(v) != 0`, or
    /// `None` when `v` is a member. Sparse `(index, value)` pairs.
    pub fn separating_functional(&self, v: &[u64]) -> Result<Option<Vec<(usize, u64)>>> {
        let a = self.arith();
        let md = self.modulus;
        let n = self.dim;
        let mut h: Vec<Vec<u64>> = self
            .pivots
            .iter()
            .flatten()
            .map(|r| r.entries.clone())
            .collect();
        let mut vt: Vec<Vec<u64>> = (0..n)
            .map(|j| {
                let mut col = vec![0; n];
                col[j] = 1;
                col
            })
            .collect();
        let mut diag = Vec::new();
        let r = h.len();
        for t in 0..r.min(n) {
            timed_out(self.deadline)?;
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for (i, row) in h.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if *x != 0 {
                        let e = md.valuation(*x);
                        if best.is_none_or(|b| e < b.0) {
                            best = Some((e, i, j));
                            if e == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((e, i, j)) = best else { break };
            h.swap(t, i);
            if j != t {
                for row in h.iter_mut() {
                    row.swap(t, j);
                }
                vt.swap(t, j);
            }
            let pe = md.prime.pow(e);
            let u = md.inverse(h[t][t] / pe);
            a.scale(&mut h[t][t..], u);
            let pivot_row = h[t].clone();
            for row in h.iter_mut().skip(t + 1) {
                if row[t] != 0 {
                    let f = row[t] / pe;
                    a.axpy(row, f, &pivot_row, t);
                }
            }
            let pivot_col = vt[t].clone();
            for j in t + 1..n {
                let x = h[t][j];
                if x != 0 {
                    a.axpy(&mut vt[j], x / pe, &pivot_col, 0);
                    h[t][j] = 0;
                }
            }
            diag.push(e);
        }
        let dot = |col: &[u64], scale: u64| -> u64 {
            col.iter().zip(v).fold(0, |acc, (x, y)| {
                a.red(acc + a.red(a.red(*x * scale) * a.red(*y)))
            })
        };
        for (t, col) in vt.iter().enumerate() {
            let scale = match diag.get(t) {
                Some(&0) => continue,
                Some(&e) => md.prime.pow(md.power - e),
                None => 1,
            };
            if dot(col, scale) != 0 {
                let lambda = col
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (i, a.red(*x * scale)))
                    .filter(|(_, x)| *x != 0)
                    .collect();
                return Ok(Some(lambda));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(lambda: &[(usize, u64)], v: &[u64], m: u64) -> u64 {
        lambda.iter().fold(0, |acc, (i, x)| (acc + x * v[*i]) % m)
    }

    #[test]
    fn modulus_parsing() {
        assert_eq!(
            Modulus::from_value(8).unwrap(),
            Modulus { prime: 2, power: 3 }
        );
        assert!(Modulus::from_value(12).is_err());
        assert!(Modulus::new(4, 1).is_err());
        let m = Modulus::new(3, 2).unwrap();
        assert_eq!(m.valuation(18), 2);
        assert_eq!(m.valuation(0), 2);
        assert_eq!((m.inverse(7) * 7) % 9, 1);
    }

    #[test]
    fn torsion_is_detected() {
        // over Z/4: the module generated by (2, 0) contains (2,0) but not (1,0);
        // over Z/4 the element (0, 2) is outside the span of (2, 2)
        let md = Modulus::new(2, 2).unwrap();
        let mut l = ModularLattice::new(md, 2, true);
        l.insert(vec![2, 2]).unwrap();
        assert!(l.membership(&[2, 2]).is_some());
        assert!(l.membership(&[0, 0]).is_some());
        assert!(l.membership(&[1, 1]).is_none());
        assert!(l.membership(&[0, 2]).is_none());
        let lambda = l.separating_functional(&[0, 2]).unwrap().unwrap();
        assert_eq!(apply(&lambda, &[2, 2], 4), 0);
        assert_ne!(apply(&lambda, &[0, 2], 4), 0);
    }

    proptest! {
        #[test]
        fn membership_and_functionals_agree(
            gens in prop::collection::vec(prop::collection::vec(0u64..8, 5), 1..6),
            coeffs in prop::collection::vec(0u64..8, 6),
            probe in prop::collection::vec(0u64..8, 5),
        ) {
            let md = Modulus::new(2, 3).unwrap();
            let mut l = ModularLattice::new(md, 5, true);
            for g in &gens {
                l.insert(g.clone()).unwrap();
            }
            let mut member = vec![0u64; 5];
            for (g, c) in gens.iter().zip(&coeffs) {
                for k in 0..5 {
                    member[k] = (member[k] + g[k] * c) % 8;
                }
            }
            let combo = l.membership(&member).expect("combination is a member");
            let mut replay = vec![0u64; 5];
            for (i, c) in &combo {
                for k in 0..5 {
                    replay[k] = (replay[k] + gens[*i][k] * c) % 8;
                }
            }
            prop_assert_eq!(replay, member.clone());
            prop_assert!(l.separating_functional(&member).unwrap().is_none());

            match l.separating_functional(&probe).unwrap() {
                Some(lambda) => {
                    prop_assert!(l.membership(&probe).is_none());
                    prop_assert_ne!(apply(&lambda, &probe, 8), 0);
                    for g in &gens {
                        prop_assert_eq!(apply(&lambda, g, 8), 0);
                    }
                }
                None => prop_assert!(l.membership(&probe).is_some()),
            }
        }
    }
}
