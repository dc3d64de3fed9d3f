//! Finite quotients `Q(p, q) = <a, b | a^p, b^q, a^-1 b a = b^-1>` of `pi`
//! (`p` even), the image of `I^{⊗k}` in the augmentation ideal of `Z[Q]`, and
//! exact membership tests there. A functional that vanishes on the quotient
//! relations but not on the image of an element proves that the element is
//! nonzero modulo the relations of `pi`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::certificate::{
    Certificate, FunctionalEntry, Outcome, RelationTermDoc, TargetDoc, Witness,
};
use super::relations::{BasisKind, Key, KeyComb, RelationTerm};
use crate::error::{Error, Result};
use crate::group_ring::{parity_sign, GroupElement, LinComb, PairElement};
use crate::groupring_linalg::Generator;
use crate::lattice::{IntegerLattice, ModularLattice, Modulus, SparseVec};

pub const QUOTIENT_STRATEGY: &str = "finite-quotient";

/// `Q(p, q)` with coefficients in `Z` (`ell = 0`) or `Z/ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientSpec {
    pub p: i64,
    pub q: i64,
    #[serde(default)]
    pub ell: u64,
}

impl QuotientSpec {
    pub fn new(p: i64, q: i64, ell: u64) -> Result<Self> {
        if p < 2 || p % 2 != 0 {
            return Err(Error::Quotient(format!(
                "order of a must be even and positive, got {p}"
            )));
        }
        if q < 1 {
            return Err(Error::Quotient(format!(
                "order of b must be positive, got {q}"
            )));
        }
        if ell == 1 {
            return Err(Error::Quotient("coefficient modulus 1 is trivial".into()));
        }
        if ell > 1 {
            Modulus::from_value(ell)?;
        }
        Ok(Self { p, q, ell })
    }

    pub fn order(&self) -> i64 {
        self.p * self.q
    }

    /// Rank of `I_Q^{⊗arity}`.
    pub fn module_rank(&self, arity: usize) -> u64 {
        ((self.order() - 1) as u64).saturating_pow(arity as u32)
    }
}

/// The quotient group with elements `a^m b^n`, `0 <= m < p`, `0 <= n < q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    pub p: i64,
    pub q: i64,
}

impl QuotientGroup {
    pub fn reduce(&self, g: &GroupElement) -> GroupElement {
        GroupElement::new(g.m.rem_euclid(self.p), g.n.rem_euclid(self.q))
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.reduce(&GroupElement::new(x.m + y.m, x.n * parity_sign(y.m) + y.n))
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        self.reduce(&GroupElement::new(-x.m, -x.n * parity_sign(x.m)))
    }

    pub fn order(&self) -> usize {
        (self.p * self.q) as usize
    }

    fn index(&self, x: &GroupElement) -> usize {
        (x.m * self.q + x.n) as usize
    }

    fn element(&self, i: usize) -> GroupElement {
        GroupElement::new(i as i64 / self.q, i as i64 % self.q)
    }
}

/// `I_Q^{⊗arity}` with basis `alpha_{x1} ⊗ ... ⊗ alpha_{xk}`, `xi != 1`.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub spec: QuotientSpec,
    pub group: QuotientGroup,
    pub arity: usize,
}

impl QuotientModule {
    pub fn new(spec: QuotientSpec, arity: usize) -> Self {
        Self {
            spec,
            group: QuotientGroup {
                p: spec.p,
                q: spec.q,
            },
            arity,
        }
    }

    pub fn dim(&self) -> usize {
        self.spec.module_rank(self.arity) as usize
    }

    fn slot_index(&self, x: &GroupElement) -> usize {
        self.group.index(x) - 1
    }

    pub fn index(&self, key: &[GroupElement]) -> usize {
        let d = self.group.order() - 1;
        key.iter().fold(0, |acc, x| acc * d + self.slot_index(x))
    }

    pub fn key(&self, mut i: usize) -> Key {
        let d = self.group.order() - 1;
        let mut out = vec![GroupElement::new(0, 0); self.arity];
        for slot in out.iter_mut().rev() {
            *slot = self.group.element(i % d + 1);
            i /= d;
        }
        out
    }

    /// Image of an element of `I^{⊗k}` (alpha basis over `pi`).
    pub fn image(&self, v: &KeyComb) -> KeyComb {
        let mut out = KeyComb::zero();
        for (k, c) in v.iter() {
            let key: Key = k.iter().map(|x| self.group.reduce(x)).collect();
            if key.iter().all(|x| x.m != 0 || x.n != 0) {
                out.add_term(key, *c);
            }
        }
        out
    }

    /// `(g, h) . key` with `g, h` taken in the quotient.
    pub fn act(&self, pe: &PairElement, key: &[GroupElement]) -> KeyComb {
        let g = self.group.reduce(&pe.first);
        let hinv = self.group.inverse(&self.group.reduce(&pe.second));
        let shift = self.group.mul(&g, &hinv);
        let mut acc: Vec<(Key, i64)> = vec![(Vec::with_capacity(key.len()), 1)];
        for x in key {
            let moved = self.group.mul(&self.group.mul(&g, x), &hinv);
            let mut next = Vec::with_capacity(acc.len() * 2);
            for (k, c) in &acc {
                for (y, s) in [(moved, 1), (shift, -1)] {
                    if y.m != 0 || y.n != 0 {
                        let mut k2 = k.clone();
                        k2.push(y);
                        next.push((k2, c * s));
                    }
                }
            }
            acc = next;
        }
        LinComb::from_terms(acc)
    }

    pub fn relation(&self, generator: Generator, key: &[GroupElement]) -> KeyComb {
        let mut out = self.act(&generator.element(), key);
        out.add_term(key.to_vec(), -generator.chi());
        out
    }

    /// Every relation of the quotient, in index order of the seed.
    pub fn relations(&self) -> impl Iterator<Item = (Generator, Key, KeyComb)> + '_ {
        (0..self.dim()).flat_map(move |i| {
            let key = self.key(i);
            Generator::ALL.into_iter().map(move |g| {
                let r = self.relation(g, &key);
                (g, key.clone(), r)
            })
        })
    }

    fn sparse(&self, v: &KeyComb) -> SparseVec {
        let mut out: SparseVec = v.iter().map(|(k, c)| (self.index(k), *c as i128)).collect();
        out.sort_unstable();
        out
    }

    fn dense(&self, v: &KeyComb, m: Modulus) -> Vec<u64> {
        let mut out = vec![0; self.dim()];
        for (k, c) in v.iter() {
            let i = self.index(k);
            out[i] = (out[i] + m.reduce_signed(*c as i128)) % m.value();
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientBudget {
    /// Largest module rank attempted.
    pub max_rank: u64,
    /// Wall-clock limit per quotient test, in seconds.
    pub seconds: u64,
    /// Largest rank for which membership witnesses are recorded.
    pub witness_rank: u64,
}

impl Default for QuotientBudget {
    fn default() -> Self {
        Self {
            max_rank: 2500,
            seconds: 300,
            witness_rank: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientVerdict {
    /// The image equals the combination of quotient relations, mod `modulus`
    /// (`0`: exactly). `terms` is empty when witnesses were not recorded.
    Member {
        modulus: u64,
        terms: Vec<RelationTerm>,
    },
    /// `functional` vanishes on all quotient relations mod `modulus` and
    /// takes `value != 0` on the image.
    Separated {
        modulus: u64,
        value: u64,
        functional: Vec<(Key, u64)>,
    },
    Undecided {
        reason: String,
    },
}

fn modulus_candidates(spec: &QuotientSpec) -> Vec<Modulus> {
    if spec.ell > 1 {
        return vec![Modulus::from_value(spec.ell).expect("validated")];
    }
    let n = spec.order() as u64;
    (2..=n)
        .filter(|r| n.is_multiple_of(*r) && (2..*r).all(|d| r % d != 0))
        .map(|r| {
            let mut k = 1;
            while r.pow(k + 1) <= 64 {
                k += 1;
            }
            Modulus::new(r, k).expect("prime power")
        })
        .collect()
}

impl QuotientModule {
    /// Decides whether `image` (already in the quotient basis) lies in the span
    /// of the quotient relations.
    pub fn decide(&self, image: &KeyComb, budget: &QuotientBudget) -> Result<QuotientVerdict> {
        let dim = self.dim() as u64;
        if dim > budget.max_rank {
            return Err(Error::Budget(format!(
                "Q({}, {}) has module rank {dim}, above the limit {}",
                self.spec.p, self.spec.q, budget.max_rank
            )));
        }
        let deadline = Instant::now() + std::time::Duration::from_secs(budget.seconds);
        let track = dim <= budget.witness_rank;
        let rels: Vec<(Generator, Key)> = self.relations().map(|(g, k, _)| (g, k)).collect();
        let to_terms = |combo: Vec<(usize, i64)>| -> Vec<RelationTerm> {
            combo
                .into_iter()
                .map(|(i, c)| RelationTerm {
                    generator: rels[i].0,
                    seed: rels[i].1.clone(),
                    coefficient: c,
                })
                .collect()
        };

        if self.spec.ell == 0 && track {
            match self.integer_membership(image, deadline) {
                Ok(Some(combo)) => {
                    return Ok(QuotientVerdict::Member {
                        modulus: 0,
                        terms: to_terms(combo),
                    })
                }
                Ok(None) => {}
                // coefficient growth: fall back to prime-power moduli
                Err(Error::Overflow(_)) => {}
                Err(Error::Budget(_)) => {
                    return Ok(QuotientVerdict::Undecided {
                        reason: "time limit reached".into(),
                    })
                }
                Err(e) => return Err(e),
            }
        }

        let mut member_mod = None;
        for md in modulus_candidates(&self.spec) {
            let mut lattice = ModularLattice::new(md, self.dim(), track && self.spec.ell > 0)
                .with_deadline(Some(deadline));
            let mut timed_out = false;
            for (_, _, r) in self.relations() {
                match lattice.insert(self.dense(&r, md)) {
                    Ok(_) => {}
                    Err(Error::Budget(_)) => {
                        timed_out = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
            if timed_out {
                return Ok(QuotientVerdict::Undecided {
                    reason: format!("time limit reached mod {}", md.value()),
                });
            }
            let v = self.dense(image, md);
            if let Some(combo) = lattice.membership(&v) {
                if self.spec.ell > 0 {
                    let combo = combo.into_iter().map(|(i, c)| (i, c as i64)).collect();
                    return Ok(QuotientVerdict::Member {
                        modulus: md.value(),
                        terms: to_terms(combo),
                    });
                }
                member_mod = Some(md.value());
                continue;
            }
            match lattice.separating_functional(&v) {
                Ok(Some(lambda)) => {
                    let value = lambda
                        .iter()
                        .fold(0, |acc, (i, x)| (acc + x * v[*i]) % md.value());
                    let functional = lambda.into_iter().map(|(i, x)| (self.key(i), x)).collect();
                    return Ok(QuotientVerdict::Separated {
                        modulus: md.value(),
                        value,
                        functional,
                    });
                }
                Ok(None) => unreachable!("non-members are separated"),
                Err(Error::Budget(_)) => {
                    return Ok(QuotientVerdict::Undecided {
                        reason: format!(
                            "time limit reached computing a functional mod {}",
                            md.value()
                        ),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        let reason = match (self.spec.ell, member_mod) {
            (0, Some(_)) if track => {
                "not in the integer relation lattice, but no torsion functional found".into()
            }
            (0, _) => "in the relation lattice modulo every tried prime power".into(),
            _ => "undecided".into(),
        };
        Ok(QuotientVerdict::Undecided { reason })
    }
}

impl QuotientModule {
    fn integer_membership(
        &self,
        image: &KeyComb,
        deadline: Instant,
    ) -> Result<Option<Vec<(usize, i64)>>> {
        let mut lattice = IntegerLattice::new(true);
        for (_, _, r) in self.relations() {
            lattice.insert(self.sparse(&r))?;
            if Instant::now() >= deadline {
                return Err(Error::Budget("integer membership".into()));
            }
        }
        let Some(combo) = lattice.membership(&self.sparse(image))? else {
            return Ok(None);
        };
        combo
            .into_iter()
            .map(|(i, c)| i64::try_from(c).map(|c| (i, c)))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Some)
            .map_err(|_| Error::Overflow("quotient witness coefficient".into()))
    }
}

fn key_doc(key: &[GroupElement]) -> Vec<[i64; 2]> {
    key.iter().map(|g| [g.m, g.n]).collect()
}

/// Pushes an element of `I^{⊗arity}` into `Q(p, q)` and tests it against the
/// quotient relations. `Nonzero` carries a separating functional; membership
/// in the quotient leaves the original question `Inconclusive`.
pub fn finite_quotient_test(
    target: &KeyComb,
    arity: usize,
    spec: &QuotientSpec,
    budget: &QuotientBudget,
) -> Result<Certificate> {
    let spec = QuotientSpec::new(spec.p, spec.q, spec.ell)?;
    let module = QuotientModule::new(spec, arity);
    let doc = TargetDoc::new(BasisKind::Alpha, arity, target);
    let image = module.image(target);
    let verdict = module.decide(&image, budget)?;
    let label = format!("Q({}, {}) with ell = {}", spec.p, spec.q, spec.ell);
    Ok(match verdict {
        QuotientVerdict::Separated {
            modulus,
            value,
            functional,
        } => Certificate::new(
            Outcome::Nonzero,
            QUOTIENT_STRATEGY,
            doc,
            Witness::Functional {
                p: spec.p,
                q: spec.q,
                modulus,
                value,
                entries: functional
                    .iter()
                    .map(|(k, v)| FunctionalEntry {
                        key: key_doc(k),
                        value: *v,
                    })
                    .collect(),
            },
            Some(format!("separated in {label}")),
        ),
        QuotientVerdict::Member { modulus, terms } => {
            let witness = if terms.is_empty() && !image.is_zero() {
                Witness::None
            } else {
                Witness::QuotientRelations {
                    p: spec.p,
                    q: spec.q,
                    modulus,
                    terms: terms.iter().map(RelationTermDoc::from).collect(),
                }
            };
            Certificate::new(
                Outcome::Inconclusive,
                QUOTIENT_STRATEGY,
                doc,
                witness,
                Some(format!("image lies in the relation lattice of {label}")),
            )
        }
        QuotientVerdict::Undecided { reason } => Certificate::new(
            Outcome::Inconclusive,
            QUOTIENT_STRATEGY,
            doc,
            Witness::None,
            Some(format!("{label}: {reason}")),
        ),
    })
}

/// Quotient relations as a combination, for replaying membership witnesses.
pub fn expand_quotient_relations(module: &QuotientModule, terms: &[RelationTerm]) -> KeyComb {
    let mut out = KeyComb::zero();
    for t in terms {
        out.add_scaled(&module.relation(t.generator, &t.seed), t.coefficient);
    }
    out
}

/// Reduces coefficients mod `m` (`m = 0`: unchanged).
pub fn reduce_comb(v: &KeyComb, m: u64) -> BTreeMap<Key, u64> {
    v.iter()
        .map(|(k, c)| {
            (
                k.clone(),
                if m == 0 {
                    *c as u64
                } else {
                    (*c as i128).rem_euclid(m as i128) as u64
                },
            )
        })
        .filter(|(_, c)| *c != 0)
        .collect()
}
