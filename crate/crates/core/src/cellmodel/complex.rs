use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::filtered::ChainComplex;
use crate::gf2::{Gf2Matrix, Gf2Vector};

use super::Chain;

/// Sorted vertex indices of one simplex.
pub type Simplex = Vec<u32>;

/// A finite abstract simplicial complex.
///
/// Cells of each dimension are kept sorted lexicographically by vertex
/// index, so cell indices are deterministic for a given vertex order.
/// Vertex order is the order in which vertices were first declared.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    labels: Vec<String>,
    cells: Vec<Vec<Simplex>>,
    index: HashMap<Simplex, usize>,
}

/// Result of [`Complex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    /// `None` for the empty complex.
    pub dim: Option<usize>,
    pub counts: Vec<usize>,
}

impl Complex {
    pub fn empty() -> Self {
        Self {
            labels: Vec::new(),
            cells: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Builds a complex from an explicit list of simplices given by vertex labels.
    ///
    /// Vertices are the labels of the listed 0-simplices, in order of appearance.
    /// Every face of every listed simplex must itself be listed.
    pub fn from_simplices<S: AsRef<str>>(simplices: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut by_label: HashMap<String, u32> = HashMap::new();
        for s in simplices.iter().filter(|s| s.len() == 1) {
            let l = s[0].as_ref();
            if by_label.contains_key(l) {
                continue;
            }
            by_label.insert(l.to_string(), labels.len() as u32);
            labels.push(l.to_string());
        }
        let mut raw = Vec::with_capacity(simplices.len());
        for s in simplices {
            let mut idx = Vec::with_capacity(s.len());
            for l in s {
                match by_label.get(l.as_ref()) {
                    Some(&i) => idx.push(i),
                    None => {
                        return Err(Error::Structural(format!(
                            "simplex {{{}}} has face {{{}}} which is not in the complex",
                            join_labels(s.iter().map(|x| x.as_ref())),
                            l.as_ref()
                        )))
                    }
                }
            }
            raw.push(idx);
        }
        Self::from_index_simplices(labels, raw)
    }

    /// Builds the smallest complex containing the given facets.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut by_label: HashMap<String, u32> = HashMap::new();
        let mut raw = Vec::new();
        for f in facets {
            let mut idx = Vec::with_capacity(f.len());
            for l in f {
                let l = l.as_ref();
                let i = *by_label.entry(l.to_string()).or_insert_with(|| {
                    labels.push(l.to_string());
                    (labels.len() - 1) as u32
                });
                idx.push(i);
            }
            raw.push(idx);
        }
        Self::closure_of(labels, raw)
    }

    /// Face closure of index-based simplices over the given vertex labels.
    pub fn closure_of(labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Result<Self> {
        let mut all: Vec<Simplex> = Vec::new();
        for s in simplices {
            let s = normalize(&labels, s)?;
            let n = s.len();
            for mask in 1u32..(1u32 << n) {
                all.push((0..n).filter(|b| mask >> b & 1 == 1).map(|b| s[b]).collect());
            }
        }
        for v in 0..labels.len() as u32 {
            all.push(vec![v]);
        }
        Self::from_index_simplices(labels, all)
    }

    /// Strict constructor: every face of every simplex must be listed, and
    /// every label must occur as a 0-simplex.
    pub fn from_index_simplices(labels: Vec<String>, simplices: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Structural(format!("duplicate vertex identifier `{l}`")));
            }
        }
        let mut cells: Vec<Vec<Simplex>> = Vec::new();
        let mut set = std::collections::HashSet::new();
        for s in simplices {
            let s = normalize(&labels, s)?;
            if set.insert(s.clone()) {
                let d = s.len() - 1;
                if cells.len() <= d {
                    cells.resize(d + 1, Vec::new());
                }
                cells[d].push(s);
            }
        }
        for v in 0..labels.len() as u32 {
            if !set.contains(&vec![v]) {
                return Err(Error::Structural(format!(
                    "vertex `{}` is declared but is not a 0-simplex",
                    labels[v as usize]
                )));
            }
        }
        for layer in &mut cells {
            layer.sort();
        }
        for layer in cells.iter().skip(1) {
            for s in layer {
                for face in facets_of(s) {
                    if !set.contains(&face) {
                        return Err(Error::Structural(format!(
                            "simplex {{{}}} is missing its face {{{}}}",
                            join_labels(s.iter().map(|&v| labels[v as usize].as_str())),
                            join_labels(face.iter().map(|&v| labels[v as usize].as_str()))
                        )));
                    }
                }
            }
        }
        let index = cells
            .iter()
            .flat_map(|layer| layer.iter().enumerate().map(|(i, s)| (s.clone(), i)))
            .collect();
        Ok(Self {
            labels,
            cells,
            index,
        })
    }

    /// Re-checks face closure and identifier uniqueness and reports cell counts.
    pub fn validate(&self) -> Result<ComplexReport> {
        let rebuilt = Self::from_index_simplices(
            self.labels.clone(),
            self.cells.iter().flatten().cloned().collect(),
        )?;
        debug_assert_eq!(&rebuilt, self);
        Ok(ComplexReport {
            dim: self.dim(),
            counts: self.counts(),
        })
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    /// Number of `k`-simplices (zero for `k` above the dimension).
    pub fn count(&self, k: usize) -> usize {
        self.cells.get(k).map_or(0, Vec::len)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cells(&self, k: usize) -> &[Simplex] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn simplex(&self, k: usize, i: usize) -> &[u32] {
        &self.cells[k][i]
    }

    /// `(dimension, index)` of a simplex given by sorted vertex indices.
    pub fn find(&self, s: &[u32]) -> Option<(usize, usize)> {
        if s.is_empty() {
            return None;
        }
        self.index.get(s).map(|&i| (s.len() - 1, i))
    }

    /// Like [`Complex::find`] but accepts vertices in any order.
    pub fn find_unsorted(&self, s: &[u32]) -> Option<(usize, usize)> {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != s.len() {
            return None;
        }
        self.find(&v)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    /// Looks a simplex up by vertex labels.
    pub fn find_labels<S: AsRef<str>>(&self, labels: &[S]) -> Option<(usize, usize)> {
        let idx: Option<Vec<u32>> = labels.iter().map(|l| self.vertex(l.as_ref())).collect();
        self.find_unsorted(&idx?)
    }

    pub fn simplex_name(&self, k: usize, i: usize) -> String {
        join_labels(self.cells[k][i].iter().map(|&v| self.label(v)))
    }

    /// Matrix of `∂_k : C_k -> C_{k-1}` (rows indexed by `(k-1)`-cells).
    pub fn boundary_matrix(&self, k: usize) -> Gf2Matrix {
        if k == 0 {
            return Gf2Matrix::zeros(0, self.count(0));
        }
        let mut m = Gf2Matrix::zeros(self.count(k - 1), self.count(k));
        for (j, s) in self.cells(k).iter().enumerate() {
            for face in facets_of(s) {
                let i = self.index[&face];
                m.set(i, j, true);
            }
        }
        m
    }

    /// Indices of the codimension-one faces of cell `(k, i)`.
    pub fn facet_indices(&self, k: usize, i: usize) -> Vec<usize> {
        if k == 0 {
            return Vec::new();
        }
        facets_of(&self.cells[k][i]).map(|f| self.index[&f]).collect()
    }

    /// For each `(k-1)`-cell, the indices of the `k`-cells containing it.
    pub fn cofaces(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(k.saturating_sub(1))];
        if k == 0 {
            return out;
        }
        for j in 0..self.count(k) {
            for f in self.facet_indices(k, j) {
                out[f].push(j);
            }
        }
        out
    }

    /// The simplicial chain complex `C_*` over GF(2).
    pub fn chain_complex(&self) -> ChainComplex {
        let dims = self.counts();
        let boundaries = (1..dims.len()).map(|k| self.boundary_matrix(k)).collect();
        ChainComplex::new(dims, boundaries).expect("simplicial boundary squares to zero")
    }

    /// Mod 2 Betti numbers `b_0, ..., b_dim`.
    pub fn betti(&self) -> Vec<usize> {
        self.chain_complex().betti()
    }

    /// Odd-incidence boundary: a `(k-1)`-cell is in the support iff it is a face
    /// of an odd number of support cells. The boundary of a 0-chain is the
    /// empty chain in dimension −1.
    pub fn boundary(&self, c: &Chain) -> Chain {
        if c.k() <= 0 {
            return Chain::zero(self, c.k() - 1);
        }
        let k = c.k() as usize;
        let mut out = Gf2Vector::zeros(self.count(k - 1));
        for j in c.support().ones() {
            for f in self.facet_indices(k, j) {
                out.flip(f);
            }
        }
        Chain::from_vector(c.k() - 1, out)
    }

    /// Subcomplex of cells all of whose vertices satisfy `keep`.
    pub fn full_subcomplex_cells(&self, keep: impl Fn(u32) -> bool) -> Vec<Gf2Vector> {
        (0..self.cells.len())
            .map(|k| {
                Gf2Vector::from_indices(
                    self.count(k),
                    self.cells[k]
                        .iter()
                        .enumerate()
                        .filter(|(_, s)| s.iter().all(|&v| keep(v)))
                        .map(|(i, _)| i),
                )
            })
            .collect()
    }
}

fn normalize(labels: &[String], mut s: Vec<u32>) -> Result<Simplex> {
    if s.is_empty() {
        return Err(Error::Structural("empty simplex".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v as usize >= labels.len()) {
        return Err(Error::Structural(format!("vertex index {v} out of range")));
    }
    s.sort_unstable();
    let n = s.len();
    s.dedup();
    if s.len() != n {
        return Err(Error::Structural(format!(
            "simplex {{{}}} repeats a vertex",
            join_labels(s.iter().map(|&v| labels[v as usize].as_str()))
        )));
    }
    Ok(s)
}

/// Codimension-one faces of a sorted simplex, in order of the dropped vertex.
pub(crate) fn facets_of(s: &[u32]) -> impl Iterator<Item = Simplex> + '_ {
    let n = if s.len() > 1 { s.len() } else { 0 };
    (0..n).map(move |drop| {
        s.iter()
            .enumerate()
            .filter(|(i, _)| *i != drop)
            .map(|(_, &v)| v)
            .collect()
    })
}

pub(crate) fn join_labels<'a>(it: impl Iterator<Item = &'a str>) -> String {
    it.collect::<Vec<_>>().join(" ")
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(counts={:?})", self.counts())
    }
}
