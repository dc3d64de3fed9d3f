//! One-vertex Δ-complexes given by identified ordered simplices.
//!
//! A cell is an equivalence class of vertex sequences ("representatives").
//! Cells of each dimension are numbered from 1; faces are stored as the index
//! of the `(k-1)`-cell obtained by omitting each vertex of the canonical
//! (lexicographically least) representative. Every 1-cell carries a label in
//! the fundamental group, and labels of vertex paths inside a cell are the
//! products of the edge labels in path order.

mod fixtures;
mod union_find;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group_ring::{Group, GroupElement, Pair, PairElement};

pub use fixtures::{kxk_printed_cells, parse_cell_table, parse_pair_representative, PrintedCell};
pub use union_find::UnionFind;

/// A vertex of a representative: a vertex number of a base complex, or a pair
/// of factor vertices in a product where `None` stands for the collapsed
/// vertex `v` of a degenerate (constant) factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    Num(u32),
    Pair(Option<u32>, Option<u32>),
}

pub type Representative = Vec<Vertex>;

fn slot(x: Option<u32>) -> String {
    x.map_or_else(|| "v".to_string(), |n| n.to_string())
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Num(n) => write!(f, "{n}"),
            Vertex::Pair(a, b) => write!(f, "{}{}", slot(*a), slot(*b)),
        }
    }
}

/// `(0,1,2)` for base complexes, `(00,10,11)` for products.
pub fn format_representative(rep: &[Vertex]) -> String {
    let parts: Vec<String> = rep.iter().map(Vertex::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct Cell<L> {
    pub dimension: usize,
    /// 1-based.
    pub index: usize,
    /// Sorted; the first entry is the canonical representative.
    pub representatives: Vec<Representative>,
    /// `faces[i]` is the index of the face omitting vertex `i` of the
    /// canonical representative. Empty for the 0-cell.
    pub faces: Vec<usize>,
    /// Fundamental-group label; present exactly on 1-cells.
    pub label: Option<L>,
}

impl<L> Cell<L> {
    pub fn canonical(&self) -> &Representative {
        &self.representatives[0]
    }
}

#[derive(Clone, Debug)]
pub struct DeltaComplex<L> {
    cells: Vec<Vec<Cell<L>>>,
    lookup: HashMap<Representative, usize>,
}

impl<L: Group> DeltaComplex<L> {
    /// Assembles a complex from classes of representatives, sorting cells by
    /// canonical representative. `normalize` maps an arbitrary face sequence
    /// to the stored form of its representative.
    fn assemble<N, F>(classes: Vec<Vec<Representative>>, normalize: N, mut label: F) -> Result<Self>
    where
        N: Fn(Representative) -> Representative,
        F: FnMut(&Representative) -> Result<L>,
    {
        let mut by_dim: BTreeMap<usize, Vec<Vec<Representative>>> = BTreeMap::new();
        for mut reps in classes {
            reps.sort();
            reps.dedup();
            let dim = reps[0].len() - 1;
            if reps.iter().any(|r| r.len() != dim + 1) {
                return Err(Error::InvalidComplex("class mixes dimensions".into()));
            }
            by_dim.entry(dim).or_default().push(reps);
        }
        let top = by_dim.keys().next_back().copied().unwrap_or(0);
        let mut cells: Vec<Vec<Cell<L>>> = Vec::with_capacity(top + 1);
        let mut lookup = HashMap::new();
        for dim in 0..=top {
            let mut classes = by_dim.remove(&dim).ok_or_else(|| {
                Error::InvalidComplex(format!(
                    "no cells of dimension {dim} below the top dimension"
                ))
            })?;
            classes.sort_by(|a, b| a[0].cmp(&b[0]));
            let mut layer = Vec::with_capacity(classes.len());
            for (i, reps) in classes.into_iter().enumerate() {
                for r in &reps {
                    if lookup.insert(r.clone(), i + 1).is_some() {
                        return Err(Error::InvalidComplex(format!(
                            "representative {} belongs to two cells",
                            format_representative(r)
                        )));
                    }
                }
                let label = if dim == 1 {
                    Some(label(&reps[0])?)
                } else {
                    None
                };
                layer.push(Cell {
                    dimension: dim,
                    index: i + 1,
                    representatives: reps,
                    faces: Vec::new(),
                    label,
                });
            }
            cells.push(layer);
        }
        let mut out = Self { cells, lookup };
        for dim in 1..=top {
            for i in 0..out.cells[dim].len() {
                let canonical = out.cells[dim][i].canonical().clone();
                let mut faces = Vec::with_capacity(dim + 1);
                for omit in 0..=dim {
                    let mut face = canonical.clone();
                    face.remove(omit);
                    let face = normalize(face);
                    let idx = out.find(&face).ok_or_else(|| {
                        Error::InvalidComplex(format!(
                            "face {} of {} is not a cell",
                            format_representative(&face),
                            format_representative(&canonical)
                        ))
                    })?;
                    faces.push(idx);
                }
                out.cells[dim][i].faces = faces;
            }
        }
        if out.cells[0].len() != 1 {
            return Err(Error::InvalidComplex(format!(
                "expected one vertex, found {}",
                out.cells[0].len()
            )));
        }
        Ok(out)
    }

    pub fn dimension(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, dim: usize) -> &[Cell<L>] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn cell(&self, dim: usize, index: usize) -> Result<&Cell<L>> {
        self.cells
            .get(dim)
            .and_then(|layer| index.checked_sub(1).and_then(|i| layer.get(i)))
            .ok_or(Error::NoSuchCell {
                dimension: dim,
                index,
            })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, c)| {
                if d % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum()
    }

    /// Cell index of a representative (its dimension is `rep.len() - 1`).
    pub fn find(&self, rep: &[Vertex]) -> Option<usize> {
        self.lookup.get(rep).copied()
    }

    pub fn edge_label(&self, index: usize) -> Result<&L> {
        let cell = self.cell(1, index)?;
        Ok(cell.label.as_ref().expect("1-cells carry labels"))
    }

    /// The face of a cell spanned by the given increasing vertex positions,
    /// obtained by iterated face maps.
    pub fn sub_face(&self, dim: usize, index: usize, positions: &[usize]) -> Result<usize> {
        let mut keep = vec![false; dim + 1];
        for (i, &p) in positions.iter().enumerate() {
            if p > dim {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    dimension: dim,
                });
            }
            if i > 0 && positions[i - 1] >= p {
                return Err(Error::InvalidComplex("face positions must increase".into()));
            }
            keep[p] = true;
        }
        if positions.is_empty() {
            return Err(Error::InvalidComplex("empty face".into()));
        }
        let (mut d, mut idx) = (dim, index);
        for omit in (0..=dim).rev().filter(|p| !keep[*p]) {
            idx = self.cell(d, idx)?.faces[omit];
            d -= 1;
        }
        Ok(idx)
    }

    /// Product of the edge labels along consecutive vertices `from..=to` of the
    /// canonical representative.
    pub fn path_label(&self, dim: usize, index: usize, from: usize, to: usize) -> Result<L> {
        self.cell(dim, index)?;
        for p in [from, to] {
            if p > dim {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    dimension: dim,
                });
            }
        }
        if from > to {
            return Err(Error::InvalidComplex(format!(
                "path from {from} to {to} runs backwards"
            )));
        }
        let mut acc = L::identity();
        for t in from..to {
            let e = self.sub_face(dim, index, &[t, t + 1])?;
            acc = acc.mul(self.edge_label(e)?);
        }
        Ok(acc)
    }

    /// Applies a new numbering: `order[d][k]` is the current index of the cell
    /// that becomes number `k + 1` in dimension `d`.
    pub fn renumbered(&self, order: &[Vec<usize>]) -> Result<Self> {
        if order.len() != self.cells.len() {
            return Err(Error::InvalidComplex(
                "renumbering must cover every dimension".into(),
            ));
        }
        let mut new_of_old: Vec<Vec<usize>> = Vec::with_capacity(order.len());
        for (d, ord) in order.iter().enumerate() {
            let n = self.cells[d].len();
            let mut inv = vec![0; n + 1];
            for (k, &old) in ord.iter().enumerate() {
                if old == 0 || old > n || inv[old] != 0 {
                    return Err(Error::InvalidComplex(format!(
                        "renumbering of dimension {d} is not a permutation"
                    )));
                }
                inv[old] = k + 1;
            }
            if ord.len() != n {
                return Err(Error::InvalidComplex(format!(
                    "renumbering of dimension {d} is not a permutation"
                )));
            }
            new_of_old.push(inv);
        }
        let mut cells = Vec::with_capacity(self.cells.len());
        let mut lookup = HashMap::with_capacity(self.lookup.len());
        for (d, ord) in order.iter().enumerate() {
            let mut layer = Vec::with_capacity(ord.len());
            for (k, &old) in ord.iter().enumerate() {
                let mut cell = self.cells[d][old - 1].clone();
                cell.index = k + 1;
                if d > 0 {
                    cell.faces = cell.faces.iter().map(|f| new_of_old[d - 1][*f]).collect();
                }
                for r in &cell.representatives {
                    lookup.insert(r.clone(), k + 1);
                }
                layer.push(cell);
            }
            cells.push(layer);
        }
        Ok(Self { cells, lookup })
    }
}

fn check_increasing(rep: &[u32]) -> Result<()> {
    if rep.windows(2).all(|w| w[0] < w[1]) {
        Ok(())
    } else {
        Err(Error::UnorderedRepresentative(format!("{rep:?}")))
    }
}

fn num_rep(v: &[u32]) -> Representative {
    v.iter().map(|x| Vertex::Num(*x)).collect()
}

impl<L: Group> DeltaComplex<L> {
    /// Builds a one-vertex complex from top simplices (increasing vertex
    /// numbers), groups of simplices to identify, and labels for edges. Faces of
    /// identified simplices are identified positionally.
    pub fn from_simplices(
        top: &[Vec<u32>],
        identify: &[Vec<Vec<u32>>],
        labels: &[(Vec<u32>, L)],
    ) -> Result<Self> {
        let mut simplices: Vec<Vec<u32>> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        for s in top {
            check_increasing(s)?;
            for mask in 1u32..(1 << s.len()) {
                let face: Vec<u32> = s
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .collect();
                if !index.contains_key(&face) {
                    index.insert(face.clone(), simplices.len());
                    simplices.push(face);
                }
            }
        }
        let lookup_simplex = |s: &Vec<u32>| -> Result<usize> {
            check_increasing(s)?;
            index.get(s).copied().ok_or_else(|| {
                Error::InvalidComplex(format!("{s:?} is not a face of a top simplex"))
            })
        };
        let mut uf = UnionFind::new(simplices.len());
        for group in identify {
            let ids: Vec<usize> = group.iter().map(lookup_simplex).collect::<Result<_>>()?;
            for w in ids.windows(2) {
                if simplices[w[0]].len() != simplices[w[1]].len() {
                    return Err(Error::InvalidComplex(
                        "identified simplices differ in dimension".into(),
                    ));
                }
                uf.union(w[0], w[1]);
            }
        }
        // propagate identifications to faces, top dimension first
        let max_len = simplices.iter().map(Vec::len).max().unwrap_or(0);
        for len in (2..=max_len).rev() {
            let mut first_of_class: HashMap<usize, usize> = HashMap::new();
            for (i, s) in simplices.iter().enumerate().filter(|(_, s)| s.len() == len) {
                let root = uf.find(i);
                let Some(&j) = first_of_class.get(&root) else {
                    first_of_class.insert(root, i);
                    continue;
                };
                for omit in 0..len {
                    let mut f1 = s.clone();
                    f1.remove(omit);
                    let mut f2 = simplices[j].clone();
                    f2.remove(omit);
                    uf.union(index[&f1], index[&f2]);
                }
            }
        }
        let roots = uf.roots();
        let mut classes: BTreeMap<usize, Vec<Representative>> = BTreeMap::new();
        for (i, s) in simplices.iter().enumerate() {
            classes.entry(roots[i]).or_default().push(num_rep(s));
        }
        let mut label_of: HashMap<usize, L> = HashMap::new();
        for (edge, l) in labels {
            let root = roots[lookup_simplex(edge)?];
            if let Some(prev) = label_of.insert(root, l.clone()) {
                if prev != *l {
                    return Err(Error::InvalidComplex(format!(
                        "conflicting labels on edge {edge:?}"
                    )));
                }
            }
        }
        let rep_root: HashMap<Representative, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (num_rep(s), roots[i]))
            .collect();
        Self::assemble(
            classes.into_values().collect(),
            |r| r,
            |rep| {
                label_of.get(&rep_root[rep]).cloned().ok_or_else(|| {
                    Error::InvalidComplex(format!(
                        "edge {} has no label",
                        format_representative(rep)
                    ))
                })
            },
        )
    }
}

/// The Klein bottle: one vertex, edges `(0,2)=(4,5)` labeled `a`,
/// `(1,2)=(3,4)` labeled `b`, `(0,1)=(3,5)` labeled `c = ab^-1`, and 2-cells
/// `(0,1,2)`, `(3,4,5)`.
pub fn klein_bottle() -> DeltaComplex<GroupElement> {
    DeltaComplex::from_simplices(
        &[vec![0, 1, 2], vec![3, 4, 5]],
        &[
            vec![vec![0, 2], vec![4, 5]],
            vec![vec![1, 2], vec![3, 4]],
            vec![vec![0, 1], vec![3, 5]],
        ],
        &[
            (vec![0, 2], GroupElement::a()),
            (vec![1, 2], GroupElement::b()),
            (vec![0, 1], GroupElement::c()),
        ],
    )
    .expect("the Klein bottle complex is well formed")
}

/// A single vertex.
pub fn point<L: Group>() -> DeltaComplex<L> {
    DeltaComplex::from_simplices(&[vec![0]], &[], &[]).expect("a point is well formed")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Step {
    First,
    Second,
    Both,
}

/// All lattice paths from `(0,0)` to `(s,t)`.
fn staircase_paths(s: usize, t: usize) -> Vec<Vec<Step>> {
    if s == 0 && t == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut push = |prev: Vec<Vec<Step>>, step: Step| {
        for mut p in prev {
            p.push(step);
            out.push(p);
        }
    };
    if s > 0 {
        push(staircase_paths(s - 1, t), Step::First);
    }
    if t > 0 {
        push(staircase_paths(s, t - 1), Step::Second);
    }
    if s > 0 && t > 0 {
        push(staircase_paths(s - 1, t - 1), Step::Both);
    }
    out
}

fn numbered(rep: &[Vertex]) -> Result<Vec<u32>> {
    rep.iter()
        .map(|v| match v {
            Vertex::Num(n) => Ok(*n),
            Vertex::Pair(..) => Err(Error::InvalidComplex(
                "product factors must have numbered vertices".into(),
            )),
        })
        .collect()
}

/// Collapses a constant factor to the vertex `v`.
fn normalize_pairs(rep: Representative) -> Representative {
    let firsts: Vec<Option<u32>> = rep
        .iter()
        .map(|v| if let Vertex::Pair(a, _) = v { *a } else { None })
        .collect();
    let seconds: Vec<Option<u32>> = rep
        .iter()
        .map(|v| if let Vertex::Pair(_, b) = v { *b } else { None })
        .collect();
    let collapse = |xs: &[Option<u32>]| xs.windows(2).all(|w| w[0] == w[1]);
    let (cf, cs) = (collapse(&firsts), collapse(&seconds));
    firsts
        .into_iter()
        .zip(seconds)
        .map(|(a, b)| Vertex::Pair(if cf { None } else { a }, if cs { None } else { b }))
        .collect()
}

/// The product of two one-vertex complexes. Product simplices are the
/// pair sequences with componentwise non-decreasing vertices that never repeat
/// in both components at once; two are identified when their projections are
/// identified simplices with repetitions in the same positions.
pub fn product<A: Group, B: Group>(
    x: &DeltaComplex<A>,
    y: &DeltaComplex<B>,
) -> Result<DeltaComplex<Pair<A, B>>> {
    struct Entry {
        rep: Representative,
        key: (usize, usize, usize, usize, Vec<Step>),
    }
    let mut entries: Vec<Entry> = Vec::new();
    for dx in 0..=x.dimension() {
        for cx in x.cells(dx) {
            for rx in &cx.representatives {
                let vx = numbered(rx)?;
                check_increasing(&vx)
                    .map_err(|_| Error::UnorderedRepresentative(format_representative(rx)))?;
                for dy in 0..=y.dimension() {
                    for cy in y.cells(dy) {
                        for ry in &cy.representatives {
                            let vy = numbered(ry)?;
                            check_increasing(&vy).map_err(|_| {
                                Error::UnorderedRepresentative(format_representative(ry))
                            })?;
                            for path in staircase_paths(dx, dy) {
                                let (mut i, mut j) = (0, 0);
                                let mut rep = vec![Vertex::Pair(Some(vx[0]), Some(vy[0]))];
                                for step in &path {
                                    match step {
                                        Step::First => i += 1,
                                        Step::Second => j += 1,
                                        Step::Both => {
                                            i += 1;
                                            j += 1;
                                        }
                                    }
                                    rep.push(Vertex::Pair(Some(vx[i]), Some(vy[j])));
                                }
                                entries.push(Entry {
                                    rep: normalize_pairs(rep),
                                    key: (dx, cx.index, dy, cy.index, path),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    let mut uf = UnionFind::new(entries.len());
    let mut first: HashMap<&(usize, usize, usize, usize, Vec<Step>), usize> = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        match first.get(&e.key) {
            Some(&j) => {
                uf.union(i, j);
            }
            None => {
                first.insert(&e.key, i);
            }
        }
    }
    let roots = uf.roots();
    let mut classes: BTreeMap<usize, Vec<Representative>> = BTreeMap::new();
    let mut key_of: HashMap<Representative, (usize, usize, usize, usize)> = HashMap::new();
    for (i, e) in entries.iter().enumerate() {
        classes.entry(roots[i]).or_default().push(e.rep.clone());
        let k = (e.key.0, e.key.1, e.key.2, e.key.3);
        if let Some(prev) = key_of.insert(e.rep.clone(), k) {
            if prev != k {
                return Err(Error::InvalidComplex(format!(
                    "representative {} arises from two different cells",
                    format_representative(&e.rep)
                )));
            }
        }
    }
    DeltaComplex::assemble(classes.into_values().collect(), normalize_pairs, |rep| {
        let (dx, ix, dy, iy) = key_of[rep];
        let first = if dx == 1 {
            x.edge_label(ix)?.clone()
        } else {
            A::identity()
        };
        let second = if dy == 1 {
            y.edge_label(iy)?.clone()
        } else {
            B::identity()
        };
        Ok(Pair::new(first, second))
    })
}

/// Numbering of `K×K` used by the printed cell tables: `KXK_ORDER[d][k]` is
/// the index (in canonical-representative order) of printed cell `k + 1`.
const KXK_ORDER: [&[usize]; 5] = [
    &[1],
    &[4, 5, 12, 1, 2, 3, 6, 7, 10, 8, 9, 11, 13, 14, 15],
    &[
        3, 42, 1, 2, 10, 11, 23, 4, 8, 21, 18, 19, 26, 6, 9, 22, 35, 36, 39, 32, 34, 38, 16, 46,
        30, 50, 7, 5, 28, 27, 13, 44, 12, 43, 20, 31, 14, 29, 17, 47, 15, 45, 25, 49, 24, 48, 37,
        41, 33, 40,
    ],
    &[
        15, 17, 11, 16, 5, 6, 49, 51, 45, 50, 41, 42, 30, 32, 29, 31, 25, 26, 58, 60, 57, 59, 55,
        56, 13, 10, 4, 14, 12, 8, 21, 20, 19, 1, 3, 9, 2, 7, 18, 34, 35, 36, 47, 44, 40, 48, 46,
        43, 54, 53, 52, 22, 24, 28, 23, 27, 33, 37, 38, 39,
    ],
    &[
        6, 5, 4, 3, 2, 1, 18, 17, 16, 15, 14, 13, 12, 11, 10, 9, 8, 7, 24, 23, 22, 21, 20, 19,
    ],
];

/// `K×K` with cells numbered as in the printed tables: `e_i` for edges,
/// `beta_i` for 3-cells and `gamma_j` for 4-cells.
pub fn klein_bottle_squared() -> DeltaComplex<PairElement> {
    let k = klein_bottle();
    let kk = product(&k, &k).expect("K×K is well formed");
    let order: Vec<Vec<usize>> = KXK_ORDER.iter().map(|o| o.to_vec()).collect();
    kk.renumbered(&order)
        .expect("the numbering table is a permutation")
}

#[derive(Serialize)]
pub struct CellExport {
    pub dimension: usize,
    pub index: usize,
    pub representatives: Vec<String>,
    pub faces: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Serialize)]
pub struct ComplexExport {
    pub counts: Vec<usize>,
    pub euler_characteristic: i64,
    pub cells: Vec<CellExport>,
}

impl<L: Group + fmt::Display> DeltaComplex<L> {
    pub fn export(&self) -> ComplexExport {
        let cells = self
            .cells
            .iter()
            .flatten()
            .map(|c| CellExport {
                dimension: c.dimension,
                index: c.index,
                representatives: c
                    .representatives
                    .iter()
                    .map(|r| format_representative(r))
                    .collect(),
                faces: c.faces.clone(),
                label: c.label.as_ref().map(ToString::to_string),
            })
            .collect();
        ComplexExport {
            counts: self.counts(),
            euler_characteristic: self.euler_characteristic(),
            cells,
        }
    }

    /// Cell tables in the `index: rep = rep = ...` layout, canonical first.
    pub fn cell_table(&self) -> String {
        let mut out = String::new();
        for (d, layer) in self.cells.iter().enumerate() {
            out.push_str(&format!("{d}-cells ({})\n", layer.len()));
            for c in layer {
                let reps: Vec<String> = c
                    .representatives
                    .iter()
                    .map(|r| format_representative(r))
                    .collect();
                out.push_str(&format!("{}: {}\n", c.index, reps.join("=")));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type G = GroupElement;

    fn pair(s: &str) -> Representative {
        let digit = |c: char| {
            if c == 'v' {
                None
            } else {
                Some(c.to_digit(10).unwrap())
            }
        };
        s.split(',')
            .map(|v| {
                let cs: Vec<char> = v.chars().collect();
                Vertex::Pair(digit(cs[0]), digit(cs[1]))
            })
            .collect()
    }

    #[test]
    fn klein_bottle_cells_and_faces() {
        let k = klein_bottle();
        assert_eq!(k.counts(), vec![1, 3, 2]);
        assert_eq!(k.euler_characteristic(), 0);
        let t = k.cell(2, 1).unwrap();
        assert_eq!(t.canonical(), &num_rep(&[0, 1, 2]));
        let labels: Vec<G> = t.faces.iter().map(|f| *k.edge_label(*f).unwrap()).collect();
        assert_eq!(labels, vec![G::b(), G::a(), G::c()]);
        // c = a b^-1 along both 2-cells
        for cell in k.cells(2) {
            assert_eq!(
                k.path_label(2, cell.index, 0, 2).unwrap(),
                *k.edge_label(cell.faces[1]).unwrap()
            );
        }
    }

    #[test]
    fn point_complex() {
        let p = point::<G>();
        assert_eq!(p.counts(), vec![1]);
        assert_eq!(p.euler_characteristic(), 1);
        let pk = product(&p, &klein_bottle()).unwrap();
        assert_eq!(pk.counts(), vec![1, 3, 2]);
    }

    #[test]
    fn unordered_input_is_rejected() {
        let err = DeltaComplex::<G>::from_simplices(&[vec![0, 2, 1]], &[], &[]).unwrap_err();
        assert!(matches!(err, Error::UnorderedRepresentative(_)));
    }

    #[test]
    fn kxk_counts_and_anchors() {
        let kk = klein_bottle_squared();
        assert_eq!(kk.counts(), vec![1, 15, 50, 60, 24]);
        assert_eq!(kk.euler_characteristic(), 0);
        let e7 = kk.cell(1, 7).unwrap();
        let mut expected: Vec<Representative> = ["00,11", "30,51", "33,55", "03,15"]
            .iter()
            .map(|s| pair(s))
            .collect();
        expected.sort();
        assert_eq!(e7.representatives, expected);
        assert_eq!(kk.cell(4, 1).unwrap().canonical(), &pair("00,10,20,21,22"));
    }

    #[test]
    fn kxk_matches_printed_tables() {
        let kk = klein_bottle_squared();
        let printed = kxk_printed_cells();
        assert_eq!(printed.len(), 150);
        for pc in &printed {
            let mut reps = pc.representatives.clone();
            reps.sort();
            let cell = kk.cell(pc.dimension, pc.index).unwrap();
            assert_eq!(
                cell.representatives, reps,
                "cell {} of dimension {}",
                pc.index, pc.dimension
            );
        }
    }

    #[test]
    fn kxk_faces_are_coherent() {
        let kk = klein_bottle_squared();
        for d in 1..=4 {
            for cell in kk.cells(d) {
                // no vertex repeats in both components
                for rep in &cell.representatives {
                    assert!(rep.windows(2).all(|w| w[0] != w[1]));
                }
                // simplicial identities d_i d_j = d_{j-1} d_i for i < j
                if d >= 2 {
                    for j in 1..=d {
                        for i in 0..j {
                            let lhs = kk.cell(d - 1, cell.faces[j]).unwrap().faces[i];
                            let rhs = kk.cell(d - 1, cell.faces[i]).unwrap().faces[j - 1];
                            assert_eq!(lhs, rhs, "cell {} dim {d}, i={i} j={j}", cell.index);
                        }
                    }
                }
                // labels multiply along every path
                if d >= 2 {
                    for t in 1..d {
                        let split = kk
                            .path_label(d, cell.index, 0, t)
                            .unwrap()
                            .mul(&kk.path_label(d, cell.index, t, d).unwrap());
                        assert_eq!(split, kk.path_label(d, cell.index, 0, d).unwrap());
                        let direct = kk.sub_face(d, cell.index, &[0, d]).unwrap();
                        assert_eq!(*kk.edge_label(direct).unwrap(), split);
                    }
                }
            }
        }
    }

    #[test]
    fn path_labels_in_first_top_cell() {
        let kk = klein_bottle_squared();
        let c = PairElement::left(G::c());
        assert_eq!(kk.path_label(4, 1, 0, 1).unwrap(), c);
        assert_eq!(kk.path_label(4, 1, 2, 2).unwrap(), PairElement::identity());
        // 00 -> 10 -> 20 -> 21: c·b = a in the first factor, c in the second
        assert_eq!(
            kk.path_label(4, 1, 0, 3).unwrap(),
            PairElement::new(G::a(), G::c())
        );
        assert!(kk.path_label(4, 1, 0, 5).is_err());
        assert!(kk.path_label(4, 1, 3, 1).is_err());
    }
}
