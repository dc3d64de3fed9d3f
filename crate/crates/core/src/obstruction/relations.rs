//! Relations `s.t - chi(s) t` for the generators `s` of `pi x pi`, on basis
//! elements `t` of `I^{⊗k}`, `Z[pi]^{⊗k}` or `Z[pi x pi]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::group_ring::{
    AlphaBasis, Group, GroupBasis, GroupElement, LinComb, PairElement, TensorBasis, TensorElement,
    TensorKey,
};
use crate::groupring_linalg::Generator;

pub type Key = TensorKey;
pub type KeyComb = LinComb<Key>;

/// Which module a key indexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    /// `alpha_{x1} ⊗ ... ⊗ alpha_{xk}` in `I^{⊗k}`, acted on by `g x h^-1`.
    Alpha,
    /// `x1 ⊗ ... ⊗ xk` in `Z[pi]^{⊗k}`, acted on by `g x h^-1`.
    Group,
    /// `(x1, x2)` in `Z[pi x pi]`, acted on by left multiplication.
    Pair,
}

impl BasisKind {
    pub fn valid_key(self, key: &[GroupElement]) -> bool {
        match self {
            BasisKind::Alpha => key.iter().all(AlphaBasis::valid_slot),
            BasisKind::Group => true,
            BasisKind::Pair => key.len() == 2,
        }
    }

    /// `p . key` expanded in the basis.
    pub fn act(self, p: &PairElement, key: &[GroupElement]) -> KeyComb {
        match self {
            BasisKind::Alpha => TensorElement::<AlphaBasis>::basis(key.to_vec())
                .act(p)
                .terms()
                .clone(),
            BasisKind::Group => TensorElement::<GroupBasis>::basis(key.to_vec())
                .act(p)
                .terms()
                .clone(),
            BasisKind::Pair => LinComb::single(self.main_image(p, key), 1),
        }
    }

    /// The key obtained by moving every slot: `g x h^-1` (or `(g x1, h x2)`
    /// for [`BasisKind::Pair`]). For the alpha basis this is the leading term
    /// of the action and may contain an identity slot.
    pub fn main_image(self, p: &PairElement, key: &[GroupElement]) -> Key {
        match self {
            BasisKind::Pair => vec![p.first.mul(&key[0]), p.second.mul(&key[1])],
            _ => {
                let hinv = p.second.inverse();
                key.iter().map(|x| p.first.mul(x).mul(&hinv)).collect()
            }
        }
    }
}

/// `s . seed - chi(s) seed`.
pub fn relation(basis: BasisKind, generator: Generator, seed: &[GroupElement]) -> KeyComb {
    let mut out = basis.act(&generator.element(), seed);
    out.add_term(seed.to_vec(), -generator.chi());
    out
}

/// `coefficient * relation(generator, seed)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub generator: Generator,
    pub seed: Key,
    pub coefficient: i64,
}

pub fn expand_relations(basis: BasisKind, terms: &[RelationTerm]) -> KeyComb {
    let mut out = KeyComb::zero();
    for t in terms {
        out.add_scaled(&relation(basis, t.generator, &t.seed), t.coefficient);
    }
    out
}

/// One instantiated relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationVector {
    pub kind: Generator,
    pub seed: Key,
    pub expansion: KeyComb,
}

pub fn key_extent(key: &[GroupElement]) -> i64 {
    key.iter().map(GroupElement::extent).max().unwrap_or(0)
}

/// All four kinds on every seed, keeping those whose expansion stays within
/// `|m|, |n| <= window` in every slot.
pub fn relation_generators(basis: BasisKind, seeds: &[Key], window: i64) -> Vec<RelationVector> {
    let mut out = Vec::new();
    for seed in seeds {
        if !basis.valid_key(seed) || key_extent(seed) > window {
            continue;
        }
        for kind in Generator::ALL {
            let expansion = relation(basis, kind, seed);
            if expansion.keys().all(|k| key_extent(k) <= window) {
                out.push(RelationVector {
                    kind,
                    seed: seed.clone(),
                    expansion,
                });
            }
        }
    }
    out
}

/// Keys reached from `key` by one generator step `s^{±1}` on either side.
pub fn neighbors(basis: BasisKind, key: &[GroupElement]) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for g in Generator::ALL {
        for p in [g.element(), g.element().inverse()] {
            let k = basis.main_image(&p, key);
            if basis.valid_key(&k) {
                out.insert(k);
            }
        }
    }
    out
}
