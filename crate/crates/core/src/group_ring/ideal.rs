use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{Group, GroupElement, PairElement};
use super::lincomb::LinComb;
use super::ring::KleinRing;
use crate::error::{Error, Result};

/// Index of the basis element `alpha_{m,n} = a^m b^n - 1` of the augmentation
/// ideal. The identity never occurs as an index.
pub type AlphaIndex = GroupElement;

/// An element of the augmentation ideal `I ⊂ Z[pi]`, stored in the
/// `alpha_{m,n}` basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealElement {
    terms: LinComb<AlphaIndex>,
}

impl IdealElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `alpha_g = g - 1`; zero when `g` is the identity.
    pub fn alpha(g: GroupElement) -> Self {
        let mut out = Self::zero();
        out.add_alpha(g, 1);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (AlphaIndex, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (g, c) in terms {
            out.add_alpha(g, c);
        }
        out
    }

    pub(crate) fn add_alpha(&mut self, g: GroupElement, coeff: i64) {
        if !g.is_identity() {
            self.terms.add_term(g, coeff);
        }
    }

    pub fn terms(&self) -> &LinComb<AlphaIndex> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, g: &AlphaIndex) -> i64 {
        self.terms.coeff(g)
    }

    pub fn to_ring(&self) -> KleinRing {
        let mut out = LinComb::zero();
        for (g, c) in self.terms.iter() {
            out.add_term(*g, *c);
            out.add_term(GroupElement::identity(), -c);
        }
        KleinRing::from_lincomb(out)
    }

    /// Re-expresses an augmentation-zero ring element in the alpha basis.
    pub fn from_ring(x: &KleinRing) -> Result<Self> {
        let aug = x.augmentation();
        if aug != 0 {
            return Err(Error::NotInAugmentationIdeal(aug));
        }
        Ok(Self::from_terms(x.terms().iter().map(|(g, c)| (*g, *c))))
    }

    /// The left/right action `(g, h) . x = g x h^-1`.
    pub fn act(&self, p: &PairElement) -> Self {
        let hinv = p.second.inverse();
        let shift = p.first.mul(&hinv);
        let mut out = Self::zero();
        for (x, c) in self.terms.iter() {
            out.add_alpha(p.first.mul(x).mul(&hinv), *c);
            out.add_alpha(shift, -c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.add_scaled(&other.terms, 1);
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            terms: self.terms.scaled(k),
        }
    }
}

/// Renders `alpha_{m,n}` the way the tables print it.
pub fn alpha_label(g: &AlphaIndex) -> String {
    format!("α_{{{},{}}}", g.m, g.n)
}

impl fmt::Display for IdealElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            write!(f, "{}", alpha_label(g))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::ring::KleinRing;

    type G = GroupElement;

    fn alpha(m: i64, n: i64) -> IdealElement {
        IdealElement::alpha(G::new(m, n))
    }

    fn from_first_principles(p: &PairElement, x: &IdealElement) -> IdealElement {
        let g = KleinRing::monomial(p.first, 1);
        let hinv = KleinRing::monomial(p.second.inverse(), 1);
        IdealElement::from_ring(&(&(&g * &x.to_ring()) * &hinv)).unwrap()
    }

    #[test]
    fn closed_form_generator_actions() {
        let b = G::b();
        let c = G::c();
        for m in -6..=6i64 {
            for n in -6..=6i64 {
                if (m, n) == (0, 0) {
                    continue;
                }
                let x = alpha(m, n);
                let sgn = if m % 2 == 0 { 1 } else { -1 };
                let cases = [
                    (
                        PairElement::left(b),
                        alpha(m, n + sgn).add(&alpha(0, 1).scaled(-1)),
                    ),
                    (
                        PairElement::right(b),
                        alpha(m, n - 1).add(&alpha(0, -1).scaled(-1)),
                    ),
                    (
                        PairElement::left(c),
                        alpha(m + 1, n - sgn).add(&alpha(1, -1).scaled(-1)),
                    ),
                    (
                        PairElement::right(c),
                        alpha(m - 1, -n - 1).add(&alpha(-1, -1).scaled(-1)),
                    ),
                ];
                for (p, expected) in cases {
                    let got = x.act(&p);
                    assert_eq!(got, expected, "{p} . alpha_({m},{n})");
                    assert_eq!(got, from_first_principles(&p, &x));
                    assert_eq!(got.to_ring().augmentation(), 0);
                }
            }
        }
    }

    #[test]
    fn action_is_a_group_action() {
        let ps = [
            PairElement::new(G::new(1, 2), G::new(-1, 0)),
            PairElement::new(G::new(0, -3), G::new(2, 1)),
            PairElement::new(G::c(), G::c()),
        ];
        let x = alpha(1, -1).add(&alpha(-2, 3).scaled(4));
        for p in &ps {
            for q in &ps {
                assert_eq!(x.act(&p.mul(q)), x.act(q).act(p));
            }
        }
    }

    #[test]
    fn ring_round_trip_and_rejection() {
        let x = alpha(1, -1).add(&alpha(0, 2).scaled(-3));
        assert_eq!(IdealElement::from_ring(&x.to_ring()).unwrap(), x);
        assert!(IdealElement::from_ring(&KleinRing::one()).is_err());
        assert_eq!(x.to_string(), "-3α_{0,2} + α_{1,-1}");
    }
}
