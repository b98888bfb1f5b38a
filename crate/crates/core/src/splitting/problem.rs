use std::sync::Arc;

use crate::cellmodel::{Complex, GroupAction};
use crate::error::{Error, Result};

/// A closed pseudomanifold with a nontrivial involution, ready to be split
/// into `A ∪ σ(A)`.
#[derive(Clone, Debug)]
pub struct SplitProblem {
    action: GroupAction,
    n: usize,
    /// `facets[k][i]`: the `(k-1)`-faces of cell `(k, i)`.
    pub(crate) facets: Vec<Vec<Vec<usize>>>,
    /// The two top cells on each `(n-1)`-face.
    pub(crate) cofaces: Vec<[usize; 2]>,
    /// Top cells sharing a codimension-one face.
    pub(crate) dual: Vec<Vec<usize>>,
    /// `σ` on top cells.
    pub(crate) partner: Vec<usize>,
    /// `σ` on cells of every dimension.
    pub(crate) sigma: Vec<Vec<usize>>,
    pub(crate) fixed_vertex: Vec<bool>,
}

impl SplitProblem {
    /// Checks the pseudomanifold, connectivity and codimension hypotheses.
    pub fn new(action: GroupAction) -> Result<Self> {
        let g = action.sigma_index()?;
        if action.is_trivial() {
            return Err(Error::Precondition("splitting needs a nontrivial involution".into()));
        }
        let x = action.complex().clone();
        let n = match x.dim() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::Precondition("splitting needs a complex of dimension at least 1".into())),
        };
        let facets: Vec<Vec<Vec<usize>>> = (0..=n)
            .map(|k| (0..x.count(k)).map(|i| x.facet_indices(k, i)).collect())
            .collect();
        let mut cofaces = Vec::with_capacity(x.count(n - 1));
        for (f, cs) in x.cofaces(n).into_iter().enumerate() {
            match cs.as_slice() {
                &[a, b] => cofaces.push([a, b]),
                _ => {
                    return Err(Error::Precondition(format!(
                        "face {} lies on {} top cells, not 2",
                        x.simplex_name(n - 1, f),
                        cs.len()
                    )))
                }
            }
        }
        let top = x.count(n);
        let mut dual = vec![Vec::new(); top];
        for &[a, b] in &cofaces {
            dual[a].push(b);
            dual[b].push(a);
        }
        for d in &mut dual {
            d.sort_unstable();
            d.dedup();
        }
        let mut seen = vec![false; top];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for &d in &dual[c] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition("top cells are not connected through shared faces".into()));
        }
        let sigma: Vec<Vec<usize>> = (0..=n).map(|k| action.cell_permutation(g, k).to_vec()).collect();
        let partner = sigma[n].clone();
        if let Some(t) = (0..top).find(|&t| partner[t] == t) {
            return Err(Error::Precondition(format!(
                "top cell {} is mapped to itself, so the fixed set is not of codimension ≥ 1",
                x.simplex_name(n, t)
            )));
        }
        let fixed_vertex = (0..x.num_vertices()).map(|v| sigma[0][v] == v).collect();
        Ok(Self {
            action,
            n,
            facets,
            cofaces,
            dual,
            partner,
            sigma,
            fixed_vertex,
        })
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn complex(&self) -> &Arc<Complex> {
        self.action.complex()
    }

    /// Top dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_cells(&self) -> usize {
        self.partner.len()
    }

    /// Orbits of top cells as `(smaller, larger)` index pairs, sorted.
    pub fn orbits(&self) -> Vec<(usize, usize)> {
        (0..self.top_cells())
            .filter(|&t| t < self.partner[t])
            .map(|t| (t, self.partner[t]))
            .collect()
    }

    pub fn partner(&self, t: usize) -> usize {
        self.partner[t]
    }

    pub fn neighbours(&self, t: usize) -> &[usize] {
        &self.dual[t]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::shapes;

    #[test]
    fn catalog_shapes_are_problems() {
        for (_, act) in [
            shapes::hexagon_antipodal(),
            shapes::octahedron_antipodal(),
            shapes::square_reflection(),
            shapes::torus_swap(),
        ] {
            let p = SplitProblem::new(act).unwrap();
            assert_eq!(p.orbits().len() * 2, p.top_cells());
        }
    }

    #[test]
    fn hypotheses_enforced() {
        // A path is not closed.
        let path = Arc::new(Complex::from_facets(&[vec!["a", "b"], vec!["b", "c"]]).unwrap());
        let act = GroupAction::involution(path, vec![2, 1, 0]).unwrap();
        assert!(matches!(SplitProblem::new(act), Err(Error::Precondition(_))));
        // Two disjoint triangles are not connected.
        let (_, act) = shapes::two_triangles_swap();
        assert!(matches!(SplitProblem::new(act), Err(Error::Precondition(_))));
        // A reflection of a triangle flips the opposite edge, a top cell.
        let tri = Arc::new(shapes::cycle(3));
        let act = GroupAction::involution(tri, vec![0, 2, 1]).unwrap();
        assert!(matches!(SplitProblem::new(act), Err(Error::Precondition(_))));
        let x = Arc::new(shapes::hexagon());
        assert!(SplitProblem::new(GroupAction::trivial(x)).is_err());
    }
}
