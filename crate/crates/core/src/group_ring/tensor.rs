use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::group::{Group, GroupElement, PairElement};
use super::ideal::{alpha_label, IdealElement};
use super::lincomb::{checked_mul, LinComb};
use super::ring::KleinRing;
use crate::error::{Error, Result};

/// Selects how a tensor slot index is read and acted upon.
pub trait TensorBasis:
    Clone + fmt::Debug + Default + PartialEq + Eq + Hash + PartialOrd + Ord
{
    const NAME: &'static str;

    /// Image of one basis slot under `(g, h)`, as a combination of basis slots.
    fn act_slot(x: &GroupElement, p: &PairElement) -> Vec<(GroupElement, i64)>;

    fn slot_label(x: &GroupElement) -> String;

    fn valid_slot(x: &GroupElement) -> bool;
}

/// Slots index `alpha_{m,n}`: tensors live in `I^{⊗k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaBasis;

/// Slots index group elements: tensors live in `Z[pi]^{⊗k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupBasis;

impl TensorBasis for AlphaBasis {
    const NAME: &'static str = "ideal";

    fn act_slot(x: &GroupElement, p: &PairElement) -> Vec<(GroupElement, i64)> {
        let img = IdealElement::alpha(*x).act(p);
        img.terms().iter().map(|(g, c)| (*g, *c)).collect()
    }

    fn slot_label(x: &GroupElement) -> String {
        alpha_label(x)
    }

    fn valid_slot(x: &GroupElement) -> bool {
        !x.is_identity()
    }
}

impl TensorBasis for GroupBasis {
    const NAME: &'static str = "group";

    fn act_slot(x: &GroupElement, p: &PairElement) -> Vec<(GroupElement, i64)> {
        vec![(p.first.mul(x).mul(&p.second.inverse()), 1)]
    }

    fn slot_label(x: &GroupElement) -> String {
        format!("[{x}]")
    }

    fn valid_slot(_: &GroupElement) -> bool {
        true
    }
}

/// One basis tensor: a tuple of slot indices.
pub type TensorKey = Vec<GroupElement>;

/// A sparse element of a `k`-fold tensor power, either `I^{⊗k}` or
/// `Z[pi]^{⊗k}` depending on `B`. `pi x pi` acts diagonally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorElement<B: TensorBasis> {
    arity: usize,
    terms: LinComb<TensorKey>,
    _basis: PhantomData<B>,
}

pub type IdealTensor = TensorElement<AlphaBasis>;
pub type GroupTensor = TensorElement<GroupBasis>;

impl<B: TensorBasis> TensorElement<B> {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: LinComb::zero(),
            _basis: PhantomData,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &LinComb<TensorKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[GroupElement]) -> i64 {
        self.terms.coeff(&key.to_vec())
    }

    /// Adds `coeff` times the basis tensor `key`. Keys with an invalid slot
    /// (the identity in an alpha slot) are the zero vector and are dropped.
    pub fn add_term(&mut self, key: TensorKey, coeff: i64) {
        assert_eq!(key.len(), self.arity, "tensor arity mismatch");
        if key.iter().all(B::valid_slot) {
            self.terms.add_term(key, coeff);
        }
    }

    pub fn basis(key: TensorKey) -> Self {
        let mut out = Self::zero(key.len());
        out.add_term(key, 1);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (TensorKey, i64)>>(arity: usize, terms: I) -> Self {
        let mut out = Self::zero(arity);
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, k: i64) {
        assert_eq!(self.arity, other.arity, "tensor arity mismatch");
        self.terms.add_scaled(&other.terms, k);
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, 1);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, -1);
        out
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self {
            arity: self.arity,
            terms: self.terms.scaled(k),
            _basis: PhantomData,
        }
    }

    /// Multilinear assembly of one-slot combinations.
    pub fn from_slots(slots: &[Vec<(GroupElement, i64)>]) -> Self {
        let mut out = Self::zero(slots.len());
        let mut acc: Vec<(TensorKey, i64)> = vec![(Vec::with_capacity(slots.len()), 1)];
        for slot in slots {
            let mut next = Vec::with_capacity(acc.len() * slot.len());
            for (key, c) in &acc {
                for (g, d) in slot {
                    let mut k = key.clone();
                    k.push(*g);
                    next.push((k, checked_mul(*c, *d)));
                }
            }
            acc = next;
        }
        for (k, c) in acc {
            out.add_term(k, c);
        }
        out
    }

    /// `self ⊗ other`, concatenating slots.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.arity + other.arity);
        for (k1, c1) in self.terms.iter() {
            for (k2, c2) in other.terms.iter() {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                out.add_term(k, checked_mul(*c1, *c2));
            }
        }
        out
    }

    /// Diagonal action of `(g, h)` on every slot, expanded multilinearly.
    pub fn act(&self, p: &PairElement) -> Self {
        let mut out = Self::zero(self.arity);
        for (key, c) in self.terms.iter() {
            let slots: Vec<Vec<(GroupElement, i64)>> =
                key.iter().map(|x| B::act_slot(x, p)).collect();
            out.add_scaled(&Self::from_slots(&slots), *c);
        }
        out
    }

    /// Largest absolute exponent over all slots of all terms.
    pub fn extent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(GroupElement::extent))
            .max()
            .unwrap_or(0)
    }

    /// Stable row serialization `(m1, n1, ..., mk, nk, coefficient)`.
    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut row: Vec<i64> = k.iter().flat_map(|g| [g.m, g.n]).collect();
                row.push(*c);
                row
            })
            .collect()
    }

    pub fn from_rows(arity: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut out = Self::zero(arity);
        for row in rows {
            if row.len() != 2 * arity + 1 {
                return Err(Error::Format(format!(
                    "tensor row has {} entries, expected {}",
                    row.len(),
                    2 * arity + 1
                )));
            }
            let key: TensorKey = row[..2 * arity]
                .chunks(2)
                .map(|p| GroupElement::new(p[0], p[1]))
                .collect();
            if !key.iter().all(B::valid_slot) {
                return Err(Error::Format(format!(
                    "invalid {} tensor slot in row {row:?}",
                    B::NAME
                )));
            }
            out.add_term(key, row[2 * arity]);
        }
        Ok(out)
    }
}

impl IdealTensor {
    pub fn from_ideals(factors: &[IdealElement]) -> Self {
        let slots: Vec<Vec<(GroupElement, i64)>> = factors
            .iter()
            .map(|x| x.terms().iter().map(|(g, c)| (*g, *c)).collect())
            .collect();
        Self::from_slots(&slots)
    }

    pub fn from_ideal(x: &IdealElement) -> Self {
        Self::from_ideals(std::slice::from_ref(x))
    }

    /// Image under the inclusion `I^{⊗k} -> Z[pi]^{⊗k}`.
    pub fn to_group_tensor(&self) -> GroupTensor {
        let mut out = GroupTensor::zero(self.arity);
        for (key, c) in self.terms.iter() {
            let slots: Vec<Vec<(GroupElement, i64)>> = key
                .iter()
                .map(|g| vec![(*g, 1), (GroupElement::identity(), -1)])
                .collect();
            out.add_scaled(&GroupTensor::from_slots(&slots), *c);
        }
        out
    }
}

impl GroupTensor {
    pub fn from_ring_elements(factors: &[KleinRing]) -> Self {
        let slots: Vec<Vec<(GroupElement, i64)>> = factors
            .iter()
            .map(|x| x.terms().iter().map(|(g, c)| (*g, *c)).collect())
            .collect();
        Self::from_slots(&slots)
    }
}

impl<B: TensorBasis> fmt::Display for TensorElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            match (i, sign) {
                (0, "-") => write!(f, "-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if mag != 1 {
                write!(f, "{mag}·")?;
            }
            let labels: Vec<String> = key.iter().map(B::slot_label).collect();
            write!(f, "{}", labels.join("⊗"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorDoc {
    basis: String,
    arity: usize,
    rows: Vec<Vec<i64>>,
}

impl<B: TensorBasis> Serialize for TensorElement<B> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorDoc {
            basis: B::NAME.to_string(),
            arity: self.arity,
            rows: self.to_rows(),
        }
        .serialize(s)
    }
}

impl<'de, B: TensorBasis> Deserialize<'de> for TensorElement<B> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = TensorDoc::deserialize(d)?;
        if doc.basis != B::NAME {
            return Err(serde::de::Error::custom(format!(
                "expected {} tensor, got {}",
                B::NAME,
                doc.basis
            )));
        }
        Self::from_rows(doc.arity, &doc.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = GroupElement;

    fn alpha(m: i64, n: i64) -> IdealElement {
        IdealElement::alpha(G::new(m, n))
    }

    #[test]
    fn identity_pair_acts_trivially() {
        let t = IdealTensor::from_ideals(&[alpha(1, -1), alpha(0, 2), alpha(-1, 0), alpha(3, 3)]);
        assert_eq!(t.act(&PairElement::identity()), t);
    }

    #[test]
    fn b_left_on_alpha01_fourth_power() {
        let t = IdealTensor::from_ideals(&[alpha(0, 1), alpha(0, 1), alpha(0, 1), alpha(0, 1)]);
        let got = t.act(&PairElement::left(G::b()));
        // slot oracle: b . alpha_{0,1} = alpha_{0,2} - alpha_{0,1}
        let slot = alpha(0, 2).add(&alpha(0, 1).scaled(-1));
        let expected = IdealTensor::from_ideals(&[slot.clone(), slot.clone(), slot.clone(), slot]);
        assert_eq!(got, expected);
        assert_eq!(got.len(), 16);
    }

    #[test]
    fn inclusion_into_group_tensors_commutes_with_action() {
        let t =
            IdealTensor::from_ideals(&[alpha(1, -1), alpha(1, 0).add(&alpha(1, -1).scaled(-1))]);
        let p = PairElement::new(G::c(), G::new(2, -1));
        assert_eq!(t.act(&p).to_group_tensor(), t.to_group_tensor().act(&p));
    }

    #[test]
    fn rows_round_trip() {
        let t = IdealTensor::from_ideals(&[alpha(1, -1), alpha(0, 2).scaled(3)]);
        let back = IdealTensor::from_rows(2, &t.to_rows()).unwrap();
        assert_eq!(back, t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<IdealTensor>(&json).unwrap(), t);
        assert!(serde_json::from_str::<GroupTensor>(&json).is_err());
        assert!(IdealTensor::from_rows(1, &[vec![0, 0, 1]]).is_err());
    }

    fn small_tensor() -> impl Strategy<Value = IdealTensor> {
        let idx = (-2i64..=2, -2i64..=2).prop_filter("nonzero", |(m, n)| (*m, *n) != (0, 0));
        prop::collection::vec((prop::collection::vec(idx, 4), -3i64..=3), 1..4).prop_map(|terms| {
            IdealTensor::from_terms(
                4,
                terms
                    .into_iter()
                    .map(|(k, c)| (k.into_iter().map(|(m, n)| G::new(m, n)).collect(), c)),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn c_left_then_inverse_is_identity(t in small_tensor()) {
            let p = PairElement::left(G::c());
            prop_assert_eq!(t.act(&p).act(&p.inverse()), t);
        }
    }
}
