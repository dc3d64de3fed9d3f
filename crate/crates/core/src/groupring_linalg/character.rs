//! The character `chi: pi x pi -> {±1}` sending `a, a'` to `-1` and `b, b'`
//! to `1`, and explicit decompositions of `ker chi` as the right ideal
//! generated by `b-1`, `b'-1`, `c+1`, `c'+1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group_ring::{parity_sign, Group, GroupElement, PairElement, PairRing};

/// One of the four generators `s` of `pi x pi` whose `s - chi(s)` generate the
/// kernel of the character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    BLeft,
    BRight,
    CLeft,
    CRight,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::BLeft,
        Generator::BRight,
        Generator::CLeft,
        Generator::CRight,
    ];

    pub fn element(self) -> PairElement {
        match self {
            Generator::BLeft => PairElement::left(GroupElement::b()),
            Generator::BRight => PairElement::right(GroupElement::b()),
            Generator::CLeft => PairElement::left(GroupElement::c()),
            Generator::CRight => PairElement::right(GroupElement::c()),
        }
    }

    pub fn chi(self) -> i64 {
        chi(&self.element())
    }

    /// `s - chi(s)`: `b-1`, `b'-1`, `c+1` or `c'+1`.
    pub fn ring_element(self) -> PairRing {
        PairRing::from_terms([(self.element(), 1), (PairElement::identity(), -self.chi())])
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::BLeft => "b-1",
            Generator::BRight => "b'-1",
            Generator::CLeft => "c+1",
            Generator::CRight => "c'+1",
        })
    }
}

pub fn chi_group(g: &GroupElement) -> i64 {
    parity_sign(g.m)
}

pub fn chi(p: &PairElement) -> i64 {
    chi_group(&p.first) * chi_group(&p.second)
}

pub fn chi_ring(x: &PairRing) -> i64 {
    x.evaluate(chi)
}

/// `coefficient * (s - chi(s)) * monomial`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealTerm {
    pub generator: Generator,
    pub monomial: PairElement,
    pub coefficient: i64,
}

/// Sum of the terms as a ring element.
pub fn expand_terms(terms: &[IdealTerm]) -> PairRing {
    terms.iter().fold(PairRing::zero(), |acc, t| {
        acc + t
            .generator
            .ring_element()
            .right_mul_group(&t.monomial)
            .scaled(t.coefficient)
    })
}

/// Spells `g` in the letters `b^±1, c^±1` of each factor, left factor first,
/// using `a = cb`.
pub(crate) fn word(p: &PairElement) -> Vec<(Generator, bool)> {
    let mut out = Vec::new();
    for (g, b, c) in [
        (p.first, Generator::BLeft, Generator::CLeft),
        (p.second, Generator::BRight, Generator::CRight),
    ] {
        for _ in 0..g.m.abs() {
            if g.m > 0 {
                out.extend([(c, false), (b, false)]);
            } else {
                out.extend([(b, true), (c, true)]);
            }
        }
        out.extend(std::iter::repeat_n(
            (b, g.n < 0),
            g.n.unsigned_abs() as usize,
        ));
    }
    out
}

/// Terms of `g - chi(g)` from `R(hs) = R(h) s + chi(h) R(s)`, where
/// `R(s^-1) = -chi(s) (s - chi(s)) s^-1`.
fn monomial_witness(
    p: &PairElement,
    scale: i64,
    acc: &mut BTreeMap<(Generator, PairElement), i64>,
) {
    let letters = word(p);
    let elems: Vec<PairElement> = letters
        .iter()
        .map(|(s, inv)| {
            if *inv {
                s.element().inverse()
            } else {
                s.element()
            }
        })
        .collect();
    debug_assert_eq!(
        elems.iter().fold(PairElement::identity(), |a, e| a.mul(e)),
        *p
    );
    let mut suffix = vec![PairElement::identity(); elems.len() + 1];
    for t in (0..elems.len()).rev() {
        suffix[t] = elems[t].mul(&suffix[t + 1]);
    }
    let mut prefix_chi = 1;
    for (t, (s, inv)) in letters.iter().enumerate() {
        let (coeff, unit) = if *inv {
            (-s.chi(), elems[t])
        } else {
            (1, PairElement::identity())
        };
        let monomial = unit.mul(&suffix[t + 1]);
        *acc.entry((*s, monomial)).or_insert(0) += scale * prefix_chi * coeff;
        prefix_chi *= s.chi();
    }
}

/// Decomposes `x - chi(x)` into generator terms; the result expands back
/// exactly (see [`expand_terms`]).
pub fn kernel_witness(x: &PairRing) -> Vec<IdealTerm> {
    let mut acc = BTreeMap::new();
    for (g, c) in x.terms().iter() {
        monomial_witness(g, *c, &mut acc);
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|((generator, monomial), coefficient)| IdealTerm {
            generator,
            monomial,
            coefficient,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pe(m1: i64, n1: i64, m2: i64, n2: i64) -> PairElement {
        PairElement::new(GroupElement::new(m1, n1), GroupElement::new(m2, n2))
    }

    #[test]
    fn generators_and_values() {
        assert_eq!(Generator::CLeft.chi(), -1);
        assert_eq!(Generator::BRight.chi(), 1);
        assert_eq!(chi(&pe(1, 5, 0, 0)), -1);
        assert_eq!(chi(&pe(1, 0, -1, 2)), 1);
        assert_eq!(Generator::CRight.to_string(), "c'+1");
        assert_eq!(chi_ring(&Generator::CLeft.ring_element()), 0);
    }

    /// Every `g - chi(g)` over a window lies in the right ideal, with a witness
    /// that expands back exactly; so the quotient by the ideal is `Z` via chi.
    #[test]
    fn kernel_is_generated_on_a_window() {
        for m1 in -3..=3 {
            for n1 in -3..=3 {
                for m2 in -2..=2 {
                    for n2 in -2..=2 {
                        let g = pe(m1, n1, m2, n2);
                        let x = PairRing::monomial(g, 1);
                        let target =
                            x.clone() - PairRing::monomial(PairElement::identity(), chi(&g));
                        assert_eq!(expand_terms(&kernel_witness(&x)), target, "{g}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn witness_expands_to_kernel_part(
            terms in prop::collection::vec(((-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4), -5i64..=5), 0..6)
        ) {
            let x = PairRing::from_terms(terms.into_iter().map(|((a, b, c, d), k)| (pe(a, b, c, d), k)));
            let chi_x = chi_ring(&x);
            let expected = x.clone() - PairRing::monomial(PairElement::identity(), chi_x);
            prop_assert_eq!(expand_terms(&kernel_witness(&x)), expected);
        }
    }
}
