use std::collections::btree_map;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// A finite integer-linear combination of basis keys.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// the combinations. Coefficients are `i64`; every operation checks for
/// overflow and panics instead of wrapping.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

pub(crate) fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("integer coefficient overflow")
}

pub(crate) fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(key: K, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coeff);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (K, i64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> i64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, i64> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, i64> {
        self.terms.keys()
    }

    /// Adds `coeff * key`, pruning the entry if it cancels.
    pub fn add_term(&mut self, key: K, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = checked_add(*e.get(), coeff);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Self, scale: i64) {
        if scale == 0 {
            return;
        }
        for (k, c) in other.iter() {
            self.add_term(k.clone(), checked_mul(*c, scale));
        }
    }

    pub fn scaled(&self, scale: i64) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1)
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().fold(0, |acc, c| checked_add(acc, *c))
    }

    /// Applies `f` to every key and re-collects, merging keys that collide.
    pub fn map_keys<K2: Ord + Clone, F: FnMut(&K) -> K2>(&self, mut f: F) -> LinComb<K2> {
        LinComb::from_terms(self.iter().map(|(k, c)| (f(k), *c)))
    }

    pub fn into_terms(self) -> BTreeMap<K, i64> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a i64);
    type IntoIter = btree_map::Iter<'a, K, i64>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
