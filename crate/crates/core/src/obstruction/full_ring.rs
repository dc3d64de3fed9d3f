//! Reduction in `Z[pi]^{⊗k}` modulo the relations. Group-element tuples are
//! permuted by `pi x pi`, so every tuple `x` is congruent to `chi(u) u.x`; the
//! quotient is free on the orbits (stabilizers lie in `ker chi`), and an
//! element vanishes iff each orbit's signed coefficient sum does. Walking each
//! tuple to its orbit representative one generator at a time records the
//! relations used.

use std::collections::BTreeMap;

use super::certificate::{Certificate, Outcome, RelationTermDoc, TargetDoc, Witness};
use super::relations::{key_extent, BasisKind, Key, KeyComb, RelationTerm};
use crate::error::{Error, Result};
use crate::group_ring::{Group, GroupElement, PairElement};
use crate::groupring_linalg::character::{chi, word};
use crate::groupring_linalg::Generator;

pub const FULL_RING_STRATEGY: &str = "orbit-walk";

/// Moves `x` to `x1^-1 x`, then conjugates by `b^q a^e` (`e ∈ {0,1}`) choosing
/// `q` to bring the first odd-`m` slot to `n ∈ {0,1}`; the least of the two
/// candidates represents the orbit. Returns the representative and the acting
/// element.
pub fn orbit_representative(x: &[GroupElement]) -> (Key, PairElement) {
    let x1inv = x[0].inverse();
    let y: Vec<GroupElement> = x.iter().map(|g| x1inv.mul(g)).collect();
    let mut best: Option<(Key, PairElement)> = None;
    for e in 0..2 {
        let ae = GroupElement::new(e, 0);
        let z: Vec<GroupElement> = y.iter().map(|g| ae.mul(g).mul(&ae.inverse())).collect();
        let q = z
            .iter()
            .find(|g| g.m.rem_euclid(2) == 1)
            .map_or(0, |g| g.n.div_euclid(2));
        let k = GroupElement::new(0, q).mul(&ae);
        let u = PairElement::new(k.mul(&x1inv), k);
        let rep = BasisKind::Group.main_image(&u, x);
        if best.as_ref().is_none_or(|(b, _)| rep < *b) {
            best = Some((rep, u));
        }
    }
    best.expect("two candidates")
}

/// Relation terms with `x - chi(u) u.x = sum` of them, walking `u` letter by
/// letter.
fn walk(
    x: &[GroupElement],
    u: &PairElement,
    scale: i64,
    out: &mut BTreeMap<(Generator, Key), i64>,
) -> Key {
    let mut cur: Key = x.to_vec();
    let mut kappa = 1;
    for (s, inv) in word(u).into_iter().rev() {
        let step = if inv {
            s.element().inverse()
        } else {
            s.element()
        };
        let next = BasisKind::Group.main_image(&step, &cur);
        let (seed, coeff) = if inv {
            (next.clone(), 1)
        } else {
            (cur.clone(), -s.chi())
        };
        *out.entry((s, seed)).or_insert(0) += scale * kappa * coeff;
        kappa *= s.chi();
        cur = next;
    }
    debug_assert_eq!(kappa, chi(u));
    cur
}

/// Reduces an element of `Z[pi]^{⊗k}` to its orbit invariants. Returns `Zero`
/// with the full relation combination when all invariants vanish and every
/// seed stays inside `|m|, |n| <= window`; otherwise `Inconclusive`, listing
/// the nonzero invariants.
pub fn reduce_full_ring(target: &KeyComb, arity: usize, window: i64) -> Result<Certificate> {
    if target.keys().any(|k| k.len() != arity || k.is_empty()) {
        return Err(Error::Format(format!(
            "target keys must have {arity} > 0 slots"
        )));
    }
    let doc = TargetDoc::new(BasisKind::Group, arity, target);
    let mut invariants: BTreeMap<Key, i64> = BTreeMap::new();
    let mut terms: BTreeMap<(Generator, Key), i64> = BTreeMap::new();
    for (x, c) in target.iter() {
        let (rep, u) = orbit_representative(x);
        let end = walk(x, &u, *c, &mut terms);
        if end != rep {
            return Err(Error::Format(format!(
                "orbit walk from {x:?} ended at {end:?}"
            )));
        }
        *invariants.entry(rep).or_insert(0) += c * chi(&u);
    }
    invariants.retain(|_, v| *v != 0);
    terms.retain(|_, v| *v != 0);
    if !invariants.is_empty() {
        let shown: Vec<String> = invariants
            .iter()
            .take(5)
            .map(|(k, v)| format!("{v} at {k:?}"))
            .collect();
        return Ok(Certificate::new(
            Outcome::Inconclusive,
            FULL_RING_STRATEGY,
            doc,
            Witness::None,
            Some(format!(
                "{} orbit invariants are nonzero, e.g. {}",
                invariants.len(),
                shown.join("; ")
            )),
        ));
    }
    let extent = terms.keys().map(|(_, k)| key_extent(k)).max().unwrap_or(0);
    if extent > window {
        return Ok(Certificate::new(
            Outcome::Inconclusive,
            FULL_RING_STRATEGY,
            doc,
            Witness::None,
            Some(format!(
                "witness needs seeds of extent {extent}, beyond window {window}"
            )),
        ));
    }
    let terms = terms
        .into_iter()
        .map(|((generator, seed), coefficient)| {
            RelationTermDoc::from(&RelationTerm {
                generator,
                seed,
                coefficient,
            })
        })
        .collect();
    Ok(Certificate::new(
        Outcome::Zero,
        FULL_RING_STRATEGY,
        doc,
        Witness::Relations { terms },
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::relations::{expand_relations, relation};
    use proptest::prelude::*;

    type G = GroupElement;

    fn key_strategy() -> impl Strategy<Value = Key> {
        prop::collection::vec((-3i64..=3, -3i64..=3).prop_map(|(m, n)| G::new(m, n)), 4)
    }

    proptest! {
        #[test]
        fn representative_is_constant_on_orbits(x in key_strategy(), g in (-3i64..=3, -3i64..=3), h in (-3i64..=3, -3i64..=3)) {
            let p = PairElement::new(G::new(g.0, g.1), G::new(h.0, h.1));
            let y = BasisKind::Group.main_image(&p, &x);
            prop_assert_eq!(orbit_representative(&x).0, orbit_representative(&y).0);
        }

        #[test]
        fn walk_witness_replays(x in key_strategy()) {
            let (rep, u) = orbit_representative(&x);
            let mut terms = BTreeMap::new();
            walk(&x, &u, 1, &mut terms);
            let ts: Vec<RelationTerm> = terms.into_iter().map(|((generator, seed), coefficient)| RelationTerm { generator, seed, coefficient }).collect();
            let mut expected = KeyComb::single(x.clone(), 1);
            expected.add_term(rep, -chi(&u));
            prop_assert_eq!(expand_relations(BasisKind::Group, &ts), expected);
        }
    }

    #[test]
    fn relations_reduce_to_zero() {
        let seed = vec![G::new(1, 2), G::new(0, -1), G::new(-1, 1), G::new(2, 0)];
        let mut target = relation(BasisKind::Group, Generator::CLeft, &seed);
        target.add_scaled(&relation(BasisKind::Group, Generator::BRight, &seed), 3);
        let cert = reduce_full_ring(&target, 4, 8).unwrap();
        assert_eq!(cert.outcome, Outcome::Zero);
        let Witness::Relations { terms } = &cert.witness else {
            panic!()
        };
        let ts: Vec<RelationTerm> = terms.iter().map(RelationTermDoc::term).collect();
        assert_eq!(expand_relations(BasisKind::Group, &ts), target);
    }

    #[test]
    fn single_tuples_are_not_zero() {
        let target = KeyComb::single(vec![G::new(0, 1); 4], 1);
        let cert = reduce_full_ring(&target, 4, 8).unwrap();
        assert_eq!(cert.outcome, Outcome::Inconclusive);
        assert_eq!(
            reduce_full_ring(&KeyComb::zero(), 4, 8).unwrap().outcome,
            Outcome::Zero
        );
    }
}
