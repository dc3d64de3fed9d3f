//! Cochains on `K×K` with local coefficients in left `Z[pi x pi]`-modules,
//! the twisted coboundary and cup product.
//!
//! For a `d`-cell `sigma` with vertex-path labels `rho_{i,j}`,
//! `(delta phi)(sigma) = rho_{0,1} . phi(d_0 sigma) + sum_{i>=1} (-1)^i phi(d_i sigma)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::delta_complex::DeltaComplex;
use crate::error::{Error, Result};
use crate::group_ring::{
    Group, GroupBasis, GroupElement, IdealElement, IdealTensor, PairElement, PairRing, TensorBasis,
    TensorElement,
};

mod tables;

pub use tables::{
    coboundary_matrix_fixture, f_table_fixture, format_matrix_table, format_pair_entry,
    parse_matrix_table, parse_pair_entry,
};

/// A left `Z[pi x pi]`-module with an integral basis.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn scaled(&self, k: i64) -> Self;
    fn act(&self, p: &PairElement) -> Self;
}

impl Coefficient for IdealElement {
    fn is_zero(&self) -> bool {
        IdealElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        IdealElement::add(self, other)
    }
    fn scaled(&self, k: i64) -> Self {
        IdealElement::scaled(self, k)
    }
    fn act(&self, p: &PairElement) -> Self {
        IdealElement::act(self, p)
    }
}

impl<B: TensorBasis> Coefficient for TensorElement<B> {
    fn is_zero(&self) -> bool {
        TensorElement::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        TensorElement::add(self, other)
    }
    fn scaled(&self, k: i64) -> Self {
        TensorElement::scaled(self, k)
    }
    fn act(&self, p: &PairElement) -> Self {
        TensorElement::act(self, p)
    }
}

/// `Z[pi x pi]` acting on itself by left multiplication.
impl Coefficient for PairRing {
    fn is_zero(&self) -> bool {
        PairRing::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled(&self, k: i64) -> Self {
        PairRing::scaled(self, k)
    }
    fn act(&self, p: &PairElement) -> Self {
        self.left_mul_group(p)
    }
}

/// A cochain of one degree, stored sparsely: absent cells evaluate to zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<V> {
    degree: usize,
    values: BTreeMap<usize, V>,
}

impl<V: Coefficient> Cochain<V> {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            values: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn set(&mut self, index: usize, value: V) {
        if value.is_zero() {
            self.values.remove(&index);
        } else {
            self.values.insert(index, value);
        }
    }

    /// Value on cell `index` (1-based), `None` meaning zero.
    pub fn get(&self, index: usize) -> Option<&V> {
        self.values.get(&index)
    }

    /// Nonzero values in cell order.
    pub fn values(&self) -> impl Iterator<Item = (usize, &V)> {
        self.values.iter().map(|(i, v)| (*i, v))
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

fn accumulate<V: Coefficient>(acc: &mut Option<V>, term: V) {
    *acc = Some(match acc.take() {
        Some(a) => a.add(&term),
        None => term,
    });
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn coboundary<V: Coefficient>(
    x: &DeltaComplex<PairElement>,
    phi: &Cochain<V>,
) -> Result<Cochain<V>> {
    let d = phi.degree + 1;
    let mut out = Cochain::zero(d);
    for cell in x.cells(d) {
        let rho = x.path_label(d, cell.index, 0, 1)?;
        let mut acc = None;
        for (i, face) in cell.faces.iter().enumerate() {
            if let Some(v) = phi.get(*face) {
                let term = if i == 0 {
                    v.act(&rho)
                } else {
                    v.scaled(sign(i))
                };
                accumulate(&mut acc, term);
            }
        }
        if let Some(v) = acc {
            out.set(cell.index, v);
        }
    }
    Ok(out)
}

/// Matrix of the coboundary `C^degree -> C^{degree+1}` for left-module
/// coefficients: entry `[i][j]` (0-based) is the element `m` with
/// `(delta phi)(cell j+1) = sum_i m_ij . phi(cell i+1)`.
pub fn coboundary_matrix(
    x: &DeltaComplex<PairElement>,
    degree: usize,
) -> Result<Vec<Vec<PairRing>>> {
    let rows = x.cells(degree).len();
    let cols = x.cells(degree + 1);
    if rows == 0 || cols.is_empty() {
        return Err(Error::Degree(format!(
            "no coboundary out of degree {degree}"
        )));
    }
    let mut m = vec![vec![PairRing::zero(); cols.len()]; rows];
    for cell in cols {
        let rho = x.path_label(degree + 1, cell.index, 0, 1)?;
        for (i, face) in cell.faces.iter().enumerate() {
            let entry = if i == 0 {
                PairRing::monomial(rho, 1)
            } else {
                PairRing::monomial(PairElement::identity(), sign(i))
            };
            let slot = &mut m[face - 1][cell.index - 1];
            *slot = &*slot + &entry;
        }
    }
    Ok(m)
}

/// The one-cochain `e -> g1 g2^-1 - 1` for an edge labeled `(g1, g2)`.
pub fn cf_one_cochain(x: &DeltaComplex<PairElement>) -> Cochain<IdealElement> {
    let mut f = Cochain::zero(1);
    for cell in x.cells(1) {
        let l = cell.label.as_ref().expect("edges are labeled");
        f.set(
            cell.index,
            IdealElement::alpha(l.first.mul(&l.second.inverse())),
        );
    }
    f
}

/// Promotes an ideal-valued cochain to a tensor-valued one of arity 1.
pub fn as_tensor_cochain(phi: &Cochain<IdealElement>) -> Cochain<IdealTensor> {
    let mut out = Cochain::zero(phi.degree);
    for (i, v) in phi.values() {
        out.set(i, IdealTensor::from_ideal(v));
    }
    out
}

/// Twisted cup product with values in the tensor product:
/// `(phi ∪ psi)(sigma) = (-1)^{pq} phi(front_p sigma) ⊗ rho_{0,p} . psi(back_q sigma)`.
pub fn cup<B: TensorBasis>(
    x: &DeltaComplex<PairElement>,
    phi: &Cochain<TensorElement<B>>,
    psi: &Cochain<TensorElement<B>>,
) -> Result<Cochain<TensorElement<B>>> {
    let (p, q) = (phi.degree, psi.degree);
    let n = p + q;
    let s = sign(p * q);
    let mut out = Cochain::zero(n);
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=n).collect();
    for cell in x.cells(n) {
        let Some(a) = phi.get(x.sub_face(n, cell.index, &front)?) else {
            continue;
        };
        let Some(b) = psi.get(x.sub_face(n, cell.index, &back)?) else {
            continue;
        };
        let rho = x.path_label(n, cell.index, 0, p)?;
        out.set(cell.index, a.tensor(&b.act(&rho)).scaled(s));
    }
    Ok(out)
}

/// The fourth cup power of a one-cochain, computed cellwise as
/// `⊗_{t=1..4} rho_{0,t-1} . phi(w_{t-1} w_t)`. Agrees with the left-associated
/// iterated [`cup`], whose signs multiply to `+1`.
pub fn cup_power4(
    x: &DeltaComplex<PairElement>,
    phi: &Cochain<IdealElement>,
) -> Result<Cochain<IdealTensor>> {
    if phi.degree != 1 {
        return Err(Error::Degree(format!(
            "cup power of a degree {} cochain",
            phi.degree
        )));
    }
    let mut out = Cochain::zero(4);
    'cells: for cell in x.cells(4) {
        let mut factors = Vec::with_capacity(4);
        for t in 1..=4 {
            let edge = x.sub_face(4, cell.index, &[t - 1, t])?;
            let Some(v) = phi.get(edge) else {
                continue 'cells;
            };
            factors.push(v.act(&x.path_label(4, cell.index, 0, t - 1)?));
        }
        out.set(cell.index, IdealTensor::from_ideals(&factors));
    }
    Ok(out)
}

/// Applies a cochain of `Z[pi]`-tensors coefficientwise through `I ⊂ Z[pi]`.
pub fn to_group_cochain(phi: &Cochain<IdealTensor>) -> Cochain<TensorElement<GroupBasis>> {
    let mut out = Cochain::zero(phi.degree);
    for (i, v) in phi.values() {
        out.set(i, v.to_group_tensor());
    }
    out
}

#[derive(Serialize)]
pub struct CochainRow {
    pub index: usize,
    pub value: String,
}

impl<V: Coefficient + fmt::Display> Cochain<V> {
    /// One row per cell of the degree, zeros included.
    pub fn rows(&self, cells: usize) -> Vec<CochainRow> {
        (1..=cells)
            .map(|i| CochainRow {
                index: i,
                value: self
                    .get(i)
                    .map_or_else(|| "0".to_string(), ToString::to_string),
            })
            .collect()
    }
}

/// `ρ` as a ring element, used where matrix entries are compared to labels.
pub fn label_entry(g: GroupElement, left: bool) -> PairRing {
    PairRing::monomial(
        if left {
            PairElement::left(g)
        } else {
            PairElement::right(g)
        },
        1,
    )
}
