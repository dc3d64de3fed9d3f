use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// A group with a canonical normal form, so that `Eq`/`Ord`/`Hash` on the
/// representation agree with equality in the group.
pub trait Group: Clone + Eq + Ord + Hash + fmt::Debug {
    fn identity() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// `(-1)^k`.
#[inline]
pub(crate) fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// An element `a^m b^n` of the Klein bottle group `<a, b | ba = ab^-1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub m: i64,
    pub n: i64,
}

impl GroupElement {
    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    pub const fn a() -> Self {
        Self::new(1, 0)
    }

    pub const fn b() -> Self {
        Self::new(0, 1)
    }

    /// `c = ab^-1 = ba`.
    pub const fn c() -> Self {
        Self::new(1, -1)
    }

    /// Largest absolute exponent, used for window checks.
    pub fn extent(&self) -> i64 {
        self.m.abs().max(self.n.abs())
    }
}

impl Group for GroupElement {
    fn identity() -> Self {
        Self::new(0, 0)
    }

    // b^n a^m = a^m b^{(-1)^m n}
    fn mul(&self, other: &Self) -> Self {
        Self::new(self.m + other.m, self.n * parity_sign(other.m) + other.n)
    }

    fn inverse(&self) -> Self {
        Self::new(-self.m, -self.n * parity_sign(self.m))
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, letter: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{letter}"),
        _ => write!(f, "{letter}^{e}"),
    }
}

impl GroupElement {
    fn fmt_with_prime(&self, f: &mut fmt::Formatter<'_>, prime: &str) -> fmt::Result {
        write_power(f, &format!("a{prime}"), self.m)?;
        write_power(f, &format!("b{prime}"), self.n)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        self.fmt_with_prime(f, "")
    }
}

/// An element of a direct product `G x H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair<A, B> {
    pub first: A,
    pub second: B,
}

impl<A, B> Pair<A, B> {
    pub const fn new(first: A, second: B) -> Self {
        Self { first, second }
    }
}

impl<A: Group, B: Group> Group for Pair<A, B> {
    fn identity() -> Self {
        Self::new(A::identity(), B::identity())
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(self.first.mul(&other.first), self.second.mul(&other.second))
    }

    fn inverse(&self) -> Self {
        Self::new(self.first.inverse(), self.second.inverse())
    }
}

/// An element of `pi x pi`; the second factor carries the primed generators.
pub type PairElement = Pair<GroupElement, GroupElement>;

impl PairElement {
    pub const fn left(g: GroupElement) -> Self {
        Self::new(g, GroupElement::new(0, 0))
    }

    pub const fn right(h: GroupElement) -> Self {
        Self::new(GroupElement::new(0, 0), h)
    }
}

impl fmt::Display for PairElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        self.first.fmt_with_prime(f, "")?;
        self.second.fmt_with_prime(f, "'")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GroupElement;

    /// Rewrites a word in a^{±1}, b^{±1} to the normal form a^m b^n using only
    /// the relation ba = ab^-1 (and its consequences b^-1 a = a b, b a^-1 = a^-1 b^-1,
    /// b^-1 a^-1 = a^-1 b) plus free cancellation.
    fn rewrite(word: &[(char, i64)]) -> G {
        let mut w: Vec<(char, i64)> = word.iter().copied().filter(|(_, e)| *e != 0).collect();
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                let (x, ex) = w[i];
                let (y, ey) = w[i + 1];
                if x == y {
                    w[i] = (x, ex + ey);
                    w.remove(i + 1);
                    if w[i].1 == 0 {
                        w.remove(i);
                    }
                    changed = true;
                    continue;
                }
                if x == 'b' && y == 'a' {
                    // b^ex a^{±1} = a^{±1} b^{-ex}
                    let s = ey.signum();
                    w[i] = ('a', s);
                    w[i + 1] = ('b', -ex);
                    if ey - s != 0 {
                        w.insert(i + 2, ('a', ey - s));
                    }
                    changed = true;
                    break;
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        let mut out = G::identity();
        for (x, e) in w {
            match x {
                'a' => out.m += e,
                _ => out.n += e,
            }
        }
        out
    }

    fn word_of(g: G) -> Vec<(char, i64)> {
        vec![('a', g.m), ('b', g.n)]
    }

    #[test]
    fn relation_ba_is_c() {
        assert_eq!(G::b().mul(&G::a()), G::c());
        assert_eq!(G::a().mul(&G::b().inverse()), G::c());
        assert_eq!(G::identity().mul(&G::new(3, -4)), G::new(3, -4));
        assert_eq!(G::c().mul(&G::c()), G::new(2, 0));
        assert_eq!(G::c().inverse(), G::new(-1, -1));
        assert_eq!(G::identity().inverse(), G::identity());
    }

    #[test]
    fn multiplication_matches_rewriting_oracle() {
        let r = -5..=5;
        for m1 in r.clone() {
            for n1 in r.clone() {
                for m2 in r.clone() {
                    for n2 in r.clone() {
                        let (g, h) = (G::new(m1, n1), G::new(m2, n2));
                        let mut w = word_of(g);
                        w.extend(word_of(h));
                        assert_eq!(g.mul(&h), rewrite(&w), "{g:?} * {h:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_and_inverses() {
        let els: Vec<G> = (-5..=5)
            .flat_map(|m| (-5..=5).map(move |n| G::new(m, n)))
            .collect();
        for g in &els {
            assert_eq!(g.mul(&g.inverse()), G::identity());
            assert_eq!(g.inverse().mul(g), G::identity());
        }
        for g in els.iter().step_by(3) {
            for h in els.iter().step_by(2) {
                for k in els.iter().step_by(5) {
                    assert_eq!(g.mul(h).mul(k), g.mul(&h.mul(k)));
                }
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(G::c().to_string(), "ab^-1");
        assert_eq!(G::new(-1, -1).to_string(), "a^-1b^-1");
        assert_eq!(G::identity().to_string(), "1");
        assert_eq!(PairElement::new(G::c(), G::b()).to_string(), "ab^-1b'");
        assert_eq!(PairElement::right(G::new(2, 0)).to_string(), "a'^2");
    }
}
