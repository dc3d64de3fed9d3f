//! Membership in the relation submodule by integer linear algebra over a
//! finite window of basis elements. Success yields an exact witness; failure
//! only means the window was too small.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, Outcome, RelationTermDoc, TargetDoc, Witness};
use super::relations::{key_extent, neighbors, relation, BasisKind, Key, KeyComb, RelationTerm};
use crate::error::{Error, Result};
use crate::groupring_linalg::Generator;
use crate::lattice::{IntegerLattice, SparseVec};

pub const WINDOWED_STRATEGY: &str = "windowed-integer";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowedSearch {
    /// Every slot of every basis element used satisfies `|m|, |n| <= window`.
    pub window: i64,
    /// Seeds are the target support plus this many generator steps.
    pub radius: usize,
    /// Upper bound on the number of relations instantiated.
    pub max_relations: usize,
}

impl Default for WindowedSearch {
    fn default() -> Self {
        Self {
            window: 8,
            radius: 1,
            max_relations: 200_000,
        }
    }
}

struct Columns(HashMap<Key, usize>);

impl Columns {
    fn sparse(&mut self, v: &KeyComb) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .map(|(k, c)| {
                let n = self.0.len();
                (*self.0.entry(k.clone()).or_insert(n), *c as i128)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

fn inconclusive(target: TargetDoc, note: String) -> Certificate {
    Certificate::new(
        Outcome::Inconclusive,
        WINDOWED_STRATEGY,
        target,
        Witness::None,
        Some(note),
    )
}

/// Decides whether `target` is an integer combination of relations seeded in
/// a neighborhood of its support, returning `Zero` with the combination or
/// `Inconclusive`; never `Nonzero`.
pub fn windowed_membership(
    basis: BasisKind,
    arity: usize,
    target: &KeyComb,
    search: &WindowedSearch,
) -> Result<Certificate> {
    let doc = TargetDoc::new(basis, arity, target);
    if target.is_zero() {
        return Ok(Certificate::new(
            Outcome::Zero,
            WINDOWED_STRATEGY,
            doc,
            Witness::Relations { terms: Vec::new() },
            None,
        ));
    }
    if target.keys().any(|k| key_extent(k) > search.window) {
        return Ok(inconclusive(
            doc,
            format!("target support exceeds window {}", search.window),
        ));
    }
    let mut columns = Columns(HashMap::new());
    let mut lattice = IntegerLattice::new(true);
    let mut generators: Vec<(Generator, Key)> = Vec::new();
    let mut seen: BTreeSet<Key> = BTreeSet::new();
    let mut frontier: BTreeSet<Key> = target.keys().cloned().collect();
    for level in 0..=search.radius {
        for seed in &frontier {
            for kind in Generator::ALL {
                let rel = relation(basis, kind, seed);
                if rel.is_zero() || rel.keys().any(|k| key_extent(k) > search.window) {
                    continue;
                }
                if generators.len() >= search.max_relations {
                    return Ok(inconclusive(
                        doc,
                        format!("relation budget {} exhausted", search.max_relations),
                    ));
                }
                lattice.insert(columns.sparse(&rel))?;
                generators.push((kind, seed.clone()));
            }
        }
        seen.extend(frontier.iter().cloned());
        if let Some(combo) = lattice.membership(&columns.sparse(target))? {
            let terms = combo
                .into_iter()
                .map(|(i, c)| {
                    let coefficient = i64::try_from(c)
                        .map_err(|_| Error::Overflow("witness coefficient".into()))?;
                    let (generator, seed) = generators[i].clone();
                    Ok(RelationTermDoc::from(&RelationTerm {
                        generator,
                        seed,
                        coefficient,
                    }))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Certificate::new(
                Outcome::Zero,
                WINDOWED_STRATEGY,
                doc,
                Witness::Relations { terms },
                Some(format!("{} relations, radius {level}", generators.len())),
            ));
        }
        if level < search.radius {
            frontier = frontier
                .iter()
                .flat_map(|k| neighbors(basis, k))
                .filter(|k| key_extent(k) <= search.window && !seen.contains(k))
                .collect();
        }
    }
    Ok(inconclusive(
        doc,
        format!(
            "not in the span of {} relations within window {} and radius {}",
            generators.len(),
            search.window,
            search.radius
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::GroupElement;
    use crate::obstruction::relations::expand_relations;

    type G = GroupElement;

    #[test]
    fn relation_sums_are_found() {
        let s1 = vec![G::new(0, 1), G::new(1, -1)];
        let s2 = vec![G::new(-1, 2), G::new(1, 0)];
        let terms = vec![
            RelationTerm {
                generator: Generator::CLeft,
                seed: s1.clone(),
                coefficient: 2,
            },
            RelationTerm {
                generator: Generator::BRight,
                seed: s2,
                coefficient: -3,
            },
            RelationTerm {
                generator: Generator::CRight,
                seed: s1,
                coefficient: 1,
            },
        ];
        let target = expand_relations(BasisKind::Alpha, &terms);
        let cert =
            windowed_membership(BasisKind::Alpha, 2, &target, &WindowedSearch::default()).unwrap();
        assert_eq!(cert.outcome, Outcome::Zero);
        let Witness::Relations { terms } = &cert.witness else {
            panic!("expected relations")
        };
        let replay: Vec<RelationTerm> = terms.iter().map(RelationTermDoc::term).collect();
        assert_eq!(expand_relations(BasisKind::Alpha, &replay), target);
    }

    #[test]
    fn basis_elements_are_not_claimed_zero() {
        let mut target = KeyComb::zero();
        target.add_term(vec![G::new(0, 1), G::new(1, 0)], 1);
        let cert =
            windowed_membership(BasisKind::Alpha, 2, &target, &WindowedSearch::default()).unwrap();
        assert_eq!(cert.outcome, Outcome::Inconclusive);
        let far = windowed_membership(
            BasisKind::Alpha,
            2,
            &target,
            &WindowedSearch {
                window: 0,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(far.outcome, Outcome::Inconclusive);
    }

    #[test]
    fn zero_target() {
        let cert = windowed_membership(
            BasisKind::Pair,
            2,
            &KeyComb::zero(),
            &WindowedSearch::default(),
        )
        .unwrap();
        assert_eq!(cert.outcome, Outcome::Zero);
    }
}
