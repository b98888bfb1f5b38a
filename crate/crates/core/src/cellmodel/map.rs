use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

use super::{Chain, ClosedSubcomplex, Complex, GroupAction};

/// A simplicial map given by its vertex assignment.
#[derive(Clone)]
pub struct CellularMap {
    source: Arc<Complex>,
    target: Arc<Complex>,
    vertex_map: Vec<u32>,
}

impl CellularMap {
    /// Validates that every simplex is sent onto a simplex of the target.
    pub fn new(source: Arc<Complex>, target: Arc<Complex>, vertex_map: Vec<u32>) -> Result<Self> {
        if vertex_map.len() != source.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "vertex map has {} entries for {} source vertices",
                vertex_map.len(),
                source.num_vertices()
            )));
        }
        if vertex_map.iter().any(|&w| w as usize >= target.num_vertices()) {
            return Err(Error::Structural("vertex map points outside the target".into()));
        }
        let map = Self {
            source,
            target,
            vertex_map,
        };
        for k in 0..map.source.counts().len() {
            for i in 0..map.source.count(k) {
                if map.image_vertices(k, i).is_none() {
                    return Err(Error::Structural(format!(
                        "image of {{{}}} is not a simplex of the target",
                        map.source.simplex_name(k, i)
                    )));
                }
            }
        }
        Ok(map)
    }

    pub fn identity(complex: Arc<Complex>) -> Self {
        let n = complex.num_vertices() as u32;
        Self {
            source: complex.clone(),
            target: complex,
            vertex_map: (0..n).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Complex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[u32] {
        &self.vertex_map
    }

    fn image_vertices(&self, k: usize, i: usize) -> Option<(usize, usize)> {
        let mut img: Vec<u32> = self
            .source
            .simplex(k, i)
            .iter()
            .map(|&v| self.vertex_map[v as usize])
            .collect();
        img.sort_unstable();
        img.dedup();
        self.target.find(&img)
    }

    /// Image cell `(dimension, index)` of the source cell `(k, i)`.
    pub fn image(&self, k: usize, i: usize) -> (usize, usize) {
        self.image_vertices(k, i).expect("validated at construction")
    }

    /// Target cell hit nondegenerately by `(k, i)`, if any.
    pub fn nondegenerate_image(&self, k: usize, i: usize) -> Option<usize> {
        let (d, j) = self.image(k, i);
        (d == k).then_some(j)
    }

    /// `f_*`: mod 2 count of nondegenerate preimages; degenerate cells contribute nothing.
    pub fn pushforward(&self, c: &Chain) -> Chain {
        if c.k() < 0 {
            return Chain::zero(&self.target, c.k());
        }
        let k = c.k() as usize;
        let mut out = Gf2Vector::zeros(self.target.count(k));
        for i in c.cells() {
            if let Some(j) = self.nondegenerate_image(k, i) {
                out.flip(j);
            }
        }
        Chain::from_vector(c.k(), out)
    }

    /// Matrix of `f_*` on `C_k`.
    pub fn matrix(&self, k: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.target.count(k), self.source.count(k));
        for i in 0..self.source.count(k) {
            if let Some(j) = self.nondegenerate_image(k, i) {
                m.set(j, i, true);
            }
        }
        m
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CellularMap) -> Result<CellularMap> {
        if !Arc::ptr_eq(&self.target, &next.source) && *self.target != *next.source {
            return Err(Error::Input("maps are not composable".into()));
        }
        let vm = self
            .vertex_map
            .iter()
            .map(|&v| next.vertex_map[v as usize])
            .collect();
        CellularMap::new(self.source.clone(), next.target.clone(), vm)
    }

    /// `f ∘ g = g ∘ f` for every element index `g`; actions are matched by element index.
    pub fn is_equivariant(&self, on_source: &GroupAction, on_target: &GroupAction) -> bool {
        on_source.order() == on_target.order()
            && (0..on_source.order()).all(|g| {
                let sg = on_source.element(g);
                let tg = on_target.element(g);
                (0..self.vertex_map.len()).all(|v| {
                    self.vertex_map[sg[v] as usize] == tg[self.vertex_map[v] as usize]
                })
            })
    }

    /// Whether distinct vertices go to distinct vertices.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.vertex_map.iter().all(|v| seen.insert(*v))
    }

    /// Image subcomplex, when the map is injective (a closed inclusion).
    pub fn image_subcomplex(&self) -> ClosedSubcomplex {
        let gens: Vec<(usize, usize)> = (0..self.source.counts().len())
            .flat_map(|k| (0..self.source.count(k)).map(move |i| (k, i)))
            .map(|(k, i)| self.image(k, i))
            .collect();
        ClosedSubcomplex::closure_of(self.target.clone(), gens)
    }
}

impl std::fmt::Debug for CellularMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CellularMap({:?})", self.vertex_map)
    }
}

/// The square `Ỹ → X̃ → X ← Y` with `Ỹ = π⁻¹(Y)` and `π` an isomorphism off `Ỹ`.
#[derive(Clone, Debug)]
pub struct PullbackSquare {
    pi: CellularMap,
    y: ClosedSubcomplex,
    y_tilde: ClosedSubcomplex,
    /// For each dimension, target cell outside `Y` -> its unique preimage.
    inverse: Vec<HashMap<usize, usize>>,
}

impl PullbackSquare {
    pub fn new(pi: CellularMap, y: ClosedSubcomplex) -> Result<Self> {
        if *y.parent().as_ref() != **pi.target() {
            return Err(Error::Input("Y must be a subcomplex of the target of π".into()));
        }
        let src = pi.source().clone();
        let tgt = pi.target().clone();
        let mut gens = Vec::new();
        let mut inverse: Vec<HashMap<usize, usize>> = vec![HashMap::new(); tgt.counts().len()];
        for k in 0..src.counts().len() {
            for i in 0..src.count(k) {
                let (d, j) = pi.image(k, i);
                if y.contains(d, j) {
                    gens.push((k, i));
                    continue;
                }
                if d != k {
                    return Err(Error::Precondition(format!(
                        "π collapses {{{}}} outside Y",
                        src.simplex_name(k, i)
                    )));
                }
                if inverse[k].insert(j, i).is_some() {
                    return Err(Error::Precondition(format!(
                        "π is not injective over {{{}}}",
                        tgt.simplex_name(k, j)
                    )));
                }
            }
        }
        for k in 0..tgt.counts().len() {
            for j in 0..tgt.count(k) {
                if !y.contains(k, j) && !inverse[k].contains_key(&j) {
                    return Err(Error::Precondition(format!(
                        "π is not surjective over {{{}}}",
                        tgt.simplex_name(k, j)
                    )));
                }
            }
        }
        let y_tilde = ClosedSubcomplex::closure_of(src, gens);
        Ok(Self {
            pi,
            y,
            y_tilde,
            inverse,
        })
    }

    pub fn pi(&self) -> &CellularMap {
        &self.pi
    }

    pub fn y(&self) -> &ClosedSubcomplex {
        &self.y
    }

    pub fn y_tilde(&self) -> &ClosedSubcomplex {
        &self.y_tilde
    }

    /// Lifts the part of `c` lying outside `Y` cell by cell.
    pub fn pullback(&self, c: &Chain) -> Chain {
        let src = self.pi.source();
        if c.k() < 0 {
            return Chain::zero(src, c.k());
        }
        let k = c.k() as usize;
        let lifted = c
            .cells()
            .filter(|&j| !self.y.contains(k, j))
            .map(|j| self.inverse[k][&j]);
        Chain::from_cells(src, k, lifted)
    }
}
