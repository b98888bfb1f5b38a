use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector};

use super::{Chain, ClosedSubcomplex, Complex};

/// Largest group accepted as an explicit element table.
pub const MAX_GROUP_ORDER: usize = 24;

/// A finite group acting on a complex by simplicial automorphisms.
///
/// Elements are vertex permutations; element 0 is always the identity.
/// When built from generators, the remaining elements appear in breadth-first
/// order of words in the generators, so two actions built from corresponding
/// generator lists index their elements compatibly.
#[derive(Clone)]
pub struct GroupAction {
    complex: Arc<Complex>,
    elements: Vec<Vec<u32>>,
    table: Vec<Vec<usize>>,
    cell_perms: Vec<Vec<Vec<usize>>>,
}

impl GroupAction {
    pub fn trivial(complex: Arc<Complex>) -> Self {
        let id: Vec<u32> = (0..complex.num_vertices() as u32).collect();
        Self::from_generators(complex, vec![id]).expect("identity is an automorphism")
    }

    /// The action of `Z/2` generated by `sigma`; `sigma` must square to the identity.
    /// If `sigma` is the identity the group is trivial.
    pub fn involution(complex: Arc<Complex>, sigma: Vec<u32>) -> Result<Self> {
        check_permutation(&complex, &sigma)?;
        if sigma.iter().enumerate().any(|(v, &w)| sigma[w as usize] != v as u32) {
            return Err(Error::Structural("involution does not square to the identity".into()));
        }
        Self::from_generators(complex, vec![sigma])
    }

    /// Closes the generators under composition.
    pub fn from_generators(complex: Arc<Complex>, generators: Vec<Vec<u32>>) -> Result<Self> {
        let n = complex.num_vertices();
        for g in &generators {
            check_permutation(&complex, g)?;
        }
        let id: Vec<u32> = (0..n as u32).collect();
        let mut elements = vec![id.clone()];
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::from([(id, 0)]);
        let mut frontier = 0;
        while frontier < elements.len() {
            for g in &generators {
                let p = compose(g, &elements[frontier]);
                if !seen.contains_key(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(Error::UnsupportedGroup(format!(
                            "group order exceeds {MAX_GROUP_ORDER}"
                        )));
                    }
                    seen.insert(p.clone(), elements.len());
                    elements.push(p);
                }
            }
            frontier += 1;
        }
        Self::from_elements(complex, elements)
    }

    /// Explicit element list; must contain the identity first and be closed under composition.
    pub fn from_elements(complex: Arc<Complex>, elements: Vec<Vec<u32>>) -> Result<Self> {
        if elements.is_empty() || elements.len() > MAX_GROUP_ORDER {
            return Err(Error::UnsupportedGroup(format!(
                "group order must be between 1 and {MAX_GROUP_ORDER}"
            )));
        }
        let n = complex.num_vertices() as u32;
        if elements[0] != (0..n).collect::<Vec<_>>() {
            return Err(Error::Structural("element 0 must be the identity".into()));
        }
        let lookup: HashMap<&Vec<u32>, usize> =
            elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if lookup.len() != elements.len() {
            return Err(Error::Structural("group elements are not distinct".into()));
        }
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (i, a) in elements.iter().enumerate() {
            check_permutation(&complex, a)?;
            for (j, b) in elements.iter().enumerate() {
                let ab = compose(a, b);
                table[i][j] = *lookup.get(&ab).ok_or_else(|| {
                    Error::Structural("element list is not closed under composition".into())
                })?;
            }
        }
        let layers = complex.counts().len();
        let mut cell_perms = Vec::with_capacity(elements.len());
        for g in &elements {
            let mut per_dim = Vec::with_capacity(layers);
            for k in 0..layers {
                let mut perm = Vec::with_capacity(complex.count(k));
                for s in complex.cells(k) {
                    let img: Vec<u32> = s.iter().map(|&v| g[v as usize]).collect();
                    let (_, j) = complex.find_unsorted(&img).ok_or_else(|| {
                        Error::Structural(format!(
                            "vertex permutation sends {{{}}} outside the complex",
                            s.iter().map(|&v| complex.label(v)).collect::<Vec<_>>().join(" ")
                        ))
                    })?;
                    perm.push(j);
                }
                per_dim.push(perm);
            }
            cell_perms.push(per_dim);
        }
        Ok(Self {
            complex,
            elements,
            table,
            cell_perms,
        })
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn element(&self, g: usize) -> &[u32] {
        &self.elements[g]
    }

    /// Index of `g ∘ h`.
    pub fn compose(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    /// The vertex permutation of the generating involution: the non-identity
    /// element when the group has order 2, the identity when it is trivial.
    pub fn sigma(&self) -> Result<&[u32]> {
        Ok(&self.elements[self.sigma_index()?])
    }

    pub fn sigma_index(&self) -> Result<usize> {
        match self.elements.len() {
            1 => Ok(0),
            2 => Ok(1),
            n => Err(Error::UnsupportedGroup(format!(
                "this operation needs Z/2 but the group has order {n}"
            ))),
        }
    }

    pub fn cell_image(&self, g: usize, k: usize, i: usize) -> usize {
        self.cell_perms[g][k][i]
    }

    pub fn cell_permutation(&self, g: usize, k: usize) -> &[usize] {
        self.cell_perms[g].get(k).map_or(&[], Vec::as_slice)
    }

    /// `g.c`: the support is carried cell by cell.
    pub fn act(&self, g: usize, c: &Chain) -> Chain {
        if c.k() < 0 || c.k() as usize >= self.cell_perms[g].len() {
            return c.clone();
        }
        let perm = &self.cell_perms[g][c.k() as usize];
        Chain::from_vector(
            c.k(),
            Gf2Vector::from_indices(perm.len(), c.cells().map(|i| perm[i])),
        )
    }

    pub fn act_vector(&self, g: usize, k: usize, v: &Gf2Vector) -> Gf2Vector {
        let perm = self.cell_permutation(g, k);
        Gf2Vector::from_indices(perm.len(), v.ones().map(|i| perm[i]))
    }

    /// Permutation matrix of `g` on `C_k`.
    pub fn matrix(&self, g: usize, k: usize) -> Gf2Matrix {
        let perm = self.cell_permutation(g, k);
        let mut m = Gf2Matrix::zeros(perm.len(), perm.len());
        for (i, &j) in perm.iter().enumerate() {
            m.set(j, i, true);
        }
        m
    }

    /// `1 + g` on `C_k`.
    pub fn one_plus(&self, g: usize, k: usize) -> Gf2Matrix {
        let n = self.complex.count(k);
        self.matrix(g, k).add(&Gf2Matrix::identity(n))
    }

    /// Cells fixed pointwise by every element.
    pub fn fixed_subcomplex(&self) -> ClosedSubcomplex {
        let cells = self.complex.full_subcomplex_cells(|v| {
            self.elements.iter().all(|g| g[v as usize] == v)
        });
        ClosedSubcomplex::new(self.complex.clone(), cells).expect("full subcomplexes are closed")
    }

    /// Cells mapped onto themselves by some non-identity element without being
    /// fixed pointwise by it, as `(dimension, index)`.
    pub fn flipped_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 0..self.complex.counts().len() {
            for i in 0..self.complex.count(k) {
                let s = self.complex.simplex(k, i);
                let flipped = (1..self.order()).any(|g| {
                    self.cell_perms[g][k][i] == i
                        && s.iter().any(|&v| self.elements[g][v as usize] != v)
                });
                if flipped {
                    out.push((k, i));
                }
            }
        }
        out
    }

    /// Whether no non-identity element fixes any cell setwise.
    pub fn is_free(&self) -> bool {
        (1..self.order()).all(|g| {
            self.cell_perms[g]
                .iter()
                .all(|perm| perm.iter().enumerate().all(|(i, &j)| i != j))
        })
    }
}

impl std::fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupAction(order={}, elements={:?})", self.order(), self.elements)
    }
}

/// `a ∘ b` as vertex maps.
fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&v| a[v as usize]).collect()
}

fn check_permutation(complex: &Complex, p: &[u32]) -> Result<()> {
    let n = complex.num_vertices();
    if p.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "permutation has {} entries for {} vertices",
            p.len(),
            n
        )));
    }
    let mut hit = vec![false; n];
    for &v in p {
        if v as usize >= n || std::mem::replace(&mut hit[v as usize], true) {
            return Err(Error::Structural("vertex map is not a permutation".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::shapes;

    #[test]
    fn identity_leaves_chains_alone() {
        let (x, act) = shapes::hexagon_antipodal();
        let c = Chain::from_labels(&x, &[&["1", "2"]]).unwrap();
        assert_eq!(act.act(0, &c), c);
    }

    #[test]
    fn antipodal_moves_edge() {
        let (x, act) = shapes::hexagon_antipodal();
        let c = Chain::from_labels(&x, &[&["1", "2"]]).unwrap();
        let img = act.act(1, &c);
        assert_eq!(img, Chain::from_labels(&x, &[&["4", "5"]]).unwrap());
        let cycle = Chain::from_cells(&x, 1, 0..6);
        assert_eq!(act.act(1, &cycle), cycle);
    }

    #[test]
    fn non_automorphism_rejected() {
        let x = Arc::new(shapes::hexagon());
        // 1<->2 fixes the rest: edge {2 3} goes to {1 3}, which is not a cell.
        let mut p: Vec<u32> = (0..6).collect();
        p.swap(0, 1);
        assert!(matches!(
            GroupAction::involution(x, p),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn non_involution_rejected() {
        let x = Arc::new(shapes::hexagon());
        let rot: Vec<u32> = (0..6).map(|i| (i + 1) % 6).collect();
        assert!(GroupAction::involution(x.clone(), rot.clone()).is_err());
        // As a generator it yields the cyclic group of order 6.
        let g = GroupAction::from_generators(x, vec![rot]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(g.sigma().is_err());
        assert_eq!(g.compose(1, 5), 0);
    }

    #[test]
    fn fixed_subcomplex_examples() {
        let x = Arc::new(shapes::hexagon());
        assert_eq!(GroupAction::trivial(x).fixed_subcomplex().counts(), vec![6, 6]);
        let (_, act) = shapes::hexagon_antipodal();
        assert!(act.fixed_subcomplex().is_empty());
        let (x, refl) = shapes::square_reflection();
        let fixed = refl.fixed_subcomplex();
        assert_eq!(fixed.counts(), vec![2]);
        assert!(fixed.contains(0, x.vertex("1").unwrap() as usize));
        assert!(fixed.contains(0, x.vertex("3").unwrap() as usize));
    }
}
