//! Self-contained, replayable answers to "is this element zero modulo the
//! relations?".

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::relations::{BasisKind, Key, KeyComb, RelationTerm};
use crate::error::{Error, Result};
use crate::group_ring::GroupElement;
use crate::groupring_linalg::Generator;

pub const CERTIFICATE_FORMAT: &str = "klein-obstruction-certificate/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Zero,
    Nonzero,
    Inconclusive,
}

/// Element of the module as rows `(m1, n1, ..., mk, nk, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetDoc {
    pub basis: BasisKind,
    pub arity: usize,
    pub rows: Vec<Vec<i64>>,
}

fn key_doc(key: &[GroupElement]) -> Vec<[i64; 2]> {
    key.iter().map(|g| [g.m, g.n]).collect()
}

fn key_from_doc(doc: &[[i64; 2]]) -> Key {
    doc.iter().map(|[m, n]| GroupElement::new(*m, *n)).collect()
}

impl TargetDoc {
    pub fn new(basis: BasisKind, arity: usize, value: &KeyComb) -> Self {
        let rows = value
            .iter()
            .map(|(k, c)| {
                let mut row: Vec<i64> = k.iter().flat_map(|g| [g.m, g.n]).collect();
                row.push(*c);
                row
            })
            .collect();
        Self { basis, arity, rows }
    }

    pub fn value(&self) -> Result<KeyComb> {
        let mut out = KeyComb::zero();
        for row in &self.rows {
            if row.len() != 2 * self.arity + 1 {
                return Err(Error::Format(format!(
                    "target row {row:?} does not have arity {}",
                    self.arity
                )));
            }
            let key: Key = row[..2 * self.arity]
                .chunks(2)
                .map(|p| GroupElement::new(p[0], p[1]))
                .collect();
            if !self.basis.valid_key(&key) {
                return Err(Error::Format(format!(
                    "target row {row:?} is not a basis element"
                )));
            }
            out.add_term(key, row[2 * self.arity]);
        }
        Ok(out)
    }
}

/// `coefficient * (s . seed - chi(s) seed)` with seed slots as `[m, n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationTermDoc {
    pub generator: Generator,
    pub seed: Vec<[i64; 2]>,
    pub coefficient: i64,
}

impl From<&RelationTerm> for RelationTermDoc {
    fn from(t: &RelationTerm) -> Self {
        Self {
            generator: t.generator,
            seed: key_doc(&t.seed),
            coefficient: t.coefficient,
        }
    }
}

impl RelationTermDoc {
    pub fn term(&self) -> RelationTerm {
        RelationTerm {
            generator: self.generator,
            seed: key_from_doc(&self.seed),
            coefficient: self.coefficient,
        }
    }
}

/// Value of a functional on one basis element of the quotient module; slots
/// are elements `a^m b^n` of `Q(p, q)` with `0 <= m < p`, `0 <= n < q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionalEntry {
    pub key: Vec<[i64; 2]>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Witness {
    None,
    /// The target equals the sum of the relation terms exactly.
    Relations {
        terms: Vec<RelationTermDoc>,
    },
    /// `chi(target) = value != 0` while `chi` kills every relation
    /// (target in `Z[pi x pi]`).
    Character {
        value: i64,
    },
    /// A functional on the augmentation-ideal tensor power of `Z[Q(p, q)]`,
    /// with values mod `modulus`, that vanishes on every relation of the
    /// quotient and takes `value != 0` on the image of the target.
    Functional {
        p: i64,
        q: i64,
        modulus: u64,
        value: u64,
        entries: Vec<FunctionalEntry>,
    },
    /// The image of the target in the quotient equals the sum of the quotient
    /// relation terms, mod `modulus` (`0` for exact integers).
    QuotientRelations {
        p: i64,
        q: i64,
        modulus: u64,
        terms: Vec<RelationTermDoc>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format: String,
    pub outcome: Outcome,
    pub strategy: String,
    pub target: TargetDoc,
    pub witness: Witness,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub replay_hash: String,
}

impl Certificate {
    pub fn new(
        outcome: Outcome,
        strategy: &str,
        target: TargetDoc,
        witness: Witness,
        note: Option<String>,
    ) -> Self {
        let mut c = Self {
            format: CERTIFICATE_FORMAT.into(),
            outcome,
            strategy: strategy.into(),
            target,
            witness,
            note,
            replay_hash: String::new(),
        };
        c.replay_hash = c.body_hash();
        c
    }

    /// SHA-256 of the compact JSON of every field except `replay_hash`, with
    /// object keys sorted.
    pub fn body_hash(&self) -> String {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("replay_hash");
        }
        hex::encode(Sha256::digest(
            serde_json::to_vec(&v).expect("json value serializes"),
        ))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_hash() {
        let mut value = KeyComb::zero();
        value.add_term(vec![GroupElement::new(1, -1), GroupElement::new(0, 2)], 3);
        let target = TargetDoc::new(BasisKind::Alpha, 2, &value);
        assert_eq!(target.value().unwrap(), value);
        let c = Certificate::new(
            Outcome::Inconclusive,
            "test",
            target,
            Witness::None,
            Some("n".into()),
        );
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.body_hash(), c.replay_hash);
        let mut tampered = c.clone();
        tampered.outcome = Outcome::Zero;
        assert_ne!(tampered.body_hash(), c.replay_hash);
    }

    #[test]
    fn alpha_targets_reject_identity_slots() {
        let doc = TargetDoc {
            basis: BasisKind::Alpha,
            arity: 1,
            rows: vec![vec![0, 0, 1]],
        };
        assert!(doc.value().is_err());
    }
}
