use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::group::{Group, GroupElement, PairElement};
use super::lincomb::{checked_mul, LinComb};

/// An element of the integral group ring `Z[G]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElement<G: Group> {
    terms: LinComb<G>,
}

/// `Z[pi]`.
pub type KleinRing = RingElement<GroupElement>;
/// `Z[pi x pi]`.
pub type PairRing = RingElement<PairElement>;

impl<G: Group> Default for RingElement<G> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<G: Group> RingElement<G> {
    pub fn zero() -> Self {
        Self {
            terms: LinComb::zero(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(G::identity(), 1)
    }

    pub fn monomial(g: G, coeff: i64) -> Self {
        Self {
            terms: LinComb::single(g, coeff),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (G, i64)>>(terms: I) -> Self {
        Self {
            terms: LinComb::from_terms(terms),
        }
    }

    pub fn from_lincomb(terms: LinComb<G>) -> Self {
        Self { terms }
    }

    /// `g - 1`.
    pub fn minus_one(g: G) -> Self {
        Self::from_terms([(g, 1), (G::identity(), -1)])
    }

    pub fn terms(&self) -> &LinComb<G> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coeff(&self, g: &G) -> i64 {
        self.terms.coeff(g)
    }

    /// The augmentation `Z[G] -> Z`, i.e. the sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.coefficient_sum()
    }

    /// Returns `(g, c)` when this element is `c * g` for a single group element.
    pub fn as_monomial(&self) -> Option<(&G, i64)> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((g, c)), None) => Some((g, *c)),
            _ => None,
        }
    }

    /// Units of the form `±g`.
    pub fn is_unit_monomial(&self) -> bool {
        matches!(self.as_monomial(), Some((_, c)) if c == 1 || c == -1)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            terms: self.terms.scaled(k),
        }
    }

    pub fn ring_mul(&self, other: &Self) -> Self {
        let mut out = LinComb::zero();
        for (g, c) in self.terms.iter() {
            for (h, d) in other.terms.iter() {
                out.add_term(g.mul(h), checked_mul(*c, *d));
            }
        }
        Self { terms: out }
    }

    /// `g * self`.
    pub fn left_mul_group(&self, g: &G) -> Self {
        Self {
            terms: self.terms.map_keys(|x| g.mul(x)),
        }
    }

    /// `self * g`.
    pub fn right_mul_group(&self, g: &G) -> Self {
        Self {
            terms: self.terms.map_keys(|x| x.mul(g)),
        }
    }

    /// Applies a ring homomorphism to `Z` determined by a character `G -> {±1}`
    /// (or any multiplicative map to `Z`).
    pub fn evaluate<F: Fn(&G) -> i64>(&self, chi: F) -> i64 {
        self.terms.iter().fold(0i64, |acc, (g, c)| {
            acc.checked_add(checked_mul(*c, chi(g)))
                .expect("integer coefficient overflow")
        })
    }
}

impl<G: Group> Add for RingElement<G> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.terms.add_scaled(&rhs.terms, 1);
        self
    }
}

impl<G: Group> Add<&RingElement<G>> for &RingElement<G> {
    type Output = RingElement<G>;
    fn add(self, rhs: &RingElement<G>) -> RingElement<G> {
        self.clone() + rhs.clone()
    }
}

impl<G: Group> Sub for RingElement<G> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.terms.add_scaled(&rhs.terms, -1);
        self
    }
}

impl<G: Group> Sub<&RingElement<G>> for &RingElement<G> {
    type Output = RingElement<G>;
    fn sub(self, rhs: &RingElement<G>) -> RingElement<G> {
        self.clone() - rhs.clone()
    }
}

impl<G: Group> Neg for RingElement<G> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scaled(-1)
    }
}

impl<G: Group> Mul for &RingElement<G> {
    type Output = RingElement<G>;
    fn mul(self, rhs: Self) -> RingElement<G> {
        self.ring_mul(rhs)
    }
}

impl<G: Group> Mul for RingElement<G> {
    type Output = RingElement<G>;
    fn mul(self, rhs: Self) -> RingElement<G> {
        self.ring_mul(&rhs)
    }
}

impl<G: Group + fmt::Display> fmt::Display for RingElement<G> {
    /// Terms in descending basis order, e.g. `b^2 - 2b + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if g.is_identity() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}{g}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GroupElement;

    fn x(terms: &[((i64, i64), i64)]) -> KleinRing {
        KleinRing::from_terms(terms.iter().map(|((m, n), c)| (G::new(*m, *n), *c)))
    }

    #[test]
    fn products_from_the_examples() {
        let bm1 = KleinRing::minus_one(G::b());
        assert_eq!(&bm1 * &bm1, x(&[((0, 2), 1), ((0, 1), -2), ((0, 0), 1)]));
        assert_eq!((&bm1 * &bm1).to_string(), "b^2 - 2b + 1");

        let c = KleinRing::monomial(G::c(), 1);
        assert_eq!(&c * &bm1, x(&[((1, 0), 1), ((1, -1), -1)]));
        assert_eq!((&c * &bm1).to_string(), "a - ab^-1");

        let am1 = KleinRing::minus_one(G::a());
        // term-by-term: a*b = ab, a*(-1) = -a, (-1)*b = -b, (-1)(-1) = 1
        let expected = x(&[((1, 1), 1), ((1, 0), -1), ((0, 1), -1), ((0, 0), 1)]);
        assert_eq!(&am1 * &bm1, expected);
        assert_eq!(expected.to_string(), "ab - a - b + 1");
        assert_eq!(KleinRing::minus_one(G::c()).to_string(), "ab^-1 - 1");
    }

    #[test]
    fn augmentation_is_multiplicative() {
        let p = x(&[((1, 2), 3), ((0, -1), -1), ((-2, 0), 2)]);
        let q = x(&[((1, 1), 1), ((3, 0), 5)]);
        assert_eq!(
            (&p * &q).augmentation(),
            p.augmentation() * q.augmentation()
        );
    }
}
