//! The vanishing criterion for four-cochains: `psi` is a coboundary modulo
//! the reduction iff `sigma(psi) = sum_j eps_j psi(gamma_j)` lies in `J N`,
//! where `J = ker chi` is generated by `b-1, b'-1, c+1, c'+1`.

use serde::{Deserialize, Serialize};

use super::character::{chi_ring, kernel_witness};
use super::reduction::EpsilonSign;
use crate::error::{Error, Result};
use crate::group_ring::{IdealTensor, PairRing};
use crate::obstruction::{
    finite_quotient_test, windowed_membership, BasisKind, Certificate, KeyComb, Outcome,
    QuotientBudget, QuotientSpec, RelationTerm, RelationTermDoc, TargetDoc, WindowedSearch,
    Witness,
};
use crate::twisted_cohomology::{Cochain, Coefficient};

pub const CHARACTER_STRATEGY: &str = "character";

/// How membership in `J N` is decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Strategy {
    /// `N = Z[pi x pi]`: `N / J N = Z` through `chi`. Complete.
    Character,
    /// Integer linear algebra on a window of relations. Sound for zero only.
    WindowedInteger { search: WindowedSearch },
    /// Image in a finite quotient. Sound for nonzero only.
    FiniteQuotient {
        spec: QuotientSpec,
        budget: QuotientBudget,
    },
}

/// `sum_j eps_j psi(gamma_j)`, `None` when it vanishes.
pub fn sigma<V: Coefficient>(eps: &EpsilonSign, psi: &Cochain<V>) -> Result<Option<V>> {
    if psi.degree() != 4 {
        return Err(Error::Degree(format!(
            "sigma needs a four-cochain, got degree {}",
            psi.degree()
        )));
    }
    let mut acc: Option<V> = None;
    for (j, v) in psi.values() {
        if j == 0 || j > eps.len() {
            return Err(Error::Degree(format!(
                "four-cell {j} outside 1..={}",
                eps.len()
            )));
        }
        let term = v.scaled(eps.get(j));
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term),
        });
    }
    Ok(acc.filter(|v| !v.is_zero()))
}

/// Values that the criterion can be evaluated on.
pub trait CriterionValue: Coefficient {
    fn decide(value: Option<&Self>, strategy: &Strategy) -> Result<Certificate>;
}

fn pair_comb(x: &PairRing) -> KeyComb {
    x.terms().map_keys(|p| vec![p.first, p.second])
}

impl CriterionValue for PairRing {
    fn decide(value: Option<&Self>, strategy: &Strategy) -> Result<Certificate> {
        let zero = PairRing::zero();
        let x = value.unwrap_or(&zero);
        let doc = TargetDoc::new(BasisKind::Pair, 2, &pair_comb(x));
        match strategy {
            Strategy::Character => {
                let v = chi_ring(x);
                if v != 0 {
                    return Ok(Certificate::new(
                        Outcome::Nonzero,
                        CHARACTER_STRATEGY,
                        doc,
                        Witness::Character { value: v },
                        None,
                    ));
                }
                let terms = kernel_witness(x)
                    .into_iter()
                    .map(|t| {
                        RelationTermDoc::from(&RelationTerm {
                            generator: t.generator,
                            seed: vec![t.monomial.first, t.monomial.second],
                            coefficient: t.coefficient,
                        })
                    })
                    .collect();
                Ok(Certificate::new(
                    Outcome::Zero,
                    CHARACTER_STRATEGY,
                    doc,
                    Witness::Relations { terms },
                    None,
                ))
            }
            Strategy::WindowedInteger { search } => {
                windowed_membership(BasisKind::Pair, 2, &pair_comb(x), search)
            }
            Strategy::FiniteQuotient { .. } => Err(Error::Strategy(
                "finite quotients apply to augmentation-ideal tensors".into(),
            )),
        }
    }
}

impl CriterionValue for IdealTensor {
    fn decide(value: Option<&Self>, strategy: &Strategy) -> Result<Certificate> {
        let arity = value.map_or(4, |v| v.arity());
        let zero = KeyComb::zero();
        let target = value.map_or(&zero, |v| v.terms());
        match strategy {
            Strategy::Character => Err(Error::Strategy(
                "the character decides only Z[pi x pi]-valued classes".into(),
            )),
            Strategy::WindowedInteger { search } => {
                windowed_membership(BasisKind::Alpha, arity, target, search)
            }
            Strategy::FiniteQuotient { spec, budget } => {
                finite_quotient_test(target, arity, spec, budget)
            }
        }
    }
}

/// Evaluates the criterion on `psi`; the certificate carries `sigma(psi)` as
/// its target.
pub fn class_is_zero<V: CriterionValue>(
    eps: &EpsilonSign,
    psi: &Cochain<V>,
    strategy: &Strategy,
) -> Result<Certificate> {
    V::decide(sigma(eps, psi)?.as_ref(), strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta_complex::klein_bottle_squared;
    use crate::group_ring::{Group, GroupElement, IdealElement, PairElement};
    use crate::obstruction::expand_relations;
    use crate::twisted_cohomology::coboundary;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn pe(r: &mut StdRng, e: i64) -> PairElement {
        let mut g = || GroupElement::new(r.gen_range(-e..=e), r.gen_range(-e..=e));
        PairElement::new(g(), g())
    }

    fn random_pair_ring(r: &mut StdRng, e: i64) -> PairRing {
        let n = r.gen_range(1..=3);
        PairRing::from_terms((0..n).map(|_| (pe(r, e), r.gen_range(-3..=3))))
    }

    fn check_relations(cert: &Certificate, basis: BasisKind) {
        let Witness::Relations { terms } = &cert.witness else {
            panic!("no relations: {cert:?}")
        };
        let terms: Vec<RelationTerm> = terms.iter().map(RelationTermDoc::term).collect();
        assert_eq!(
            expand_relations(basis, &terms),
            cert.target.value().unwrap()
        );
    }

    #[test]
    fn coboundaries_are_zero_under_the_character() {
        let x = klein_bottle_squared();
        let eps = EpsilonSign::from_congruence(24);
        let mut r = StdRng::seed_from_u64(7);
        for i in 1..=60 {
            let mut phi = Cochain::zero(3);
            phi.set(i, random_pair_ring(&mut r, 2));
            let cert =
                class_is_zero(&eps, &coboundary(&x, &phi).unwrap(), &Strategy::Character).unwrap();
            assert_eq!(cert.outcome, Outcome::Zero, "3-cell {i}");
            check_relations(&cert, BasisKind::Pair);
        }
    }

    #[test]
    fn coboundaries_are_zero_in_the_tensor_power() {
        let x = klein_bottle_squared();
        let eps = EpsilonSign::from_congruence(24);
        let mut r = StdRng::seed_from_u64(11);
        let strategy = Strategy::WindowedInteger {
            search: WindowedSearch::default(),
        };
        for i in 1..=60 {
            let mut g = || GroupElement::new(r.gen_range(-1..=1), r.gen_range(-1..=1));
            let factors: Vec<IdealElement> = (0..4)
                .map(|_| {
                    let mut h = g();
                    if h.m == 0 && h.n == 0 {
                        h = GroupElement::new(0, 1);
                    }
                    IdealElement::alpha(h)
                })
                .collect();
            let mut phi = Cochain::zero(3);
            phi.set(i, IdealTensor::from_ideals(&factors));
            let cert = class_is_zero(&eps, &coboundary(&x, &phi).unwrap(), &strategy).unwrap();
            assert_eq!(cert.outcome, Outcome::Zero, "3-cell {i}: {:?}", cert.note);
            check_relations(&cert, BasisKind::Alpha);
        }
    }

    /// On `Z[pi x pi]` the character and the windowed search agree whenever
    /// the latter terminates with zero, and the character is never zero when
    /// the windowed search finds no combination near `chi != 0`.
    #[test]
    fn character_and_windowed_agree() {
        let mut r = StdRng::seed_from_u64(3);
        let search = WindowedSearch {
            window: 4,
            radius: 6,
            max_relations: 50_000,
        };
        for _ in 0..50 {
            let mut v = random_pair_ring(&mut r, 1);
            if r.gen_bool(0.5) {
                // push into the kernel of chi
                let c = chi_ring(&v);
                v = v - PairRing::monomial(PairElement::identity(), c);
            }
            let mut psi = Cochain::zero(4);
            psi.set(1, v.clone());
            let eps = EpsilonSign::from_congruence(24);
            let by_chi = class_is_zero(&eps, &psi, &Strategy::Character).unwrap();
            let by_window =
                class_is_zero(&eps, &psi, &Strategy::WindowedInteger { search }).unwrap();
            match by_chi.outcome {
                Outcome::Zero => {
                    check_relations(&by_chi, BasisKind::Pair);
                    assert_eq!(by_window.outcome, Outcome::Zero, "{v}");
                    check_relations(&by_window, BasisKind::Pair);
                }
                _ => assert_eq!(by_window.outcome, Outcome::Inconclusive, "{v}"),
            }
        }
    }

    #[test]
    fn sigma_rejects_wrong_degree() {
        let psi: Cochain<PairRing> = Cochain::zero(3);
        assert!(sigma(&EpsilonSign::from_congruence(24), &psi).is_err());
        assert!(class_is_zero(
            &EpsilonSign::from_congruence(24),
            &Cochain::<IdealTensor>::zero(4),
            &Strategy::Character
        )
        .is_err());
    }
}
