use std::collections::HashSet;
use std::sync::Arc;

use crate::error::Result;
use crate::gf2::{Gf2Matrix, Gf2Vector};

use super::{Chain, ClosedSubcomplex, Complex, GroupAction};

/// The barycentric subdivision of a complex with the data needed to carry
/// chains, subcomplexes and actions across.
///
/// Vertices of the subdivision are the cells of the original complex, listed
/// by dimension and then by index, so original vertices keep their indices.
#[derive(Clone, Debug)]
pub struct Subdivision {
    original: Arc<Complex>,
    complex: Arc<Complex>,
    /// Original cell `(dimension, index)` for each new vertex.
    carriers: Vec<(usize, usize)>,
    offsets: Vec<usize>,
}

/// Flag complex of the face poset of `complex`.
pub fn barycentric_subdivide(complex: Arc<Complex>) -> Subdivision {
    let counts = complex.counts();
    let mut offsets = Vec::with_capacity(counts.len());
    let mut carriers = Vec::new();
    for (k, &n) in counts.iter().enumerate() {
        offsets.push(carriers.len());
        carriers.extend((0..n).map(|i| (k, i)));
    }
    let labels = new_labels(&complex, &carriers);

    let cofaces: Vec<Vec<Vec<usize>>> = (1..counts.len()).map(|k| complex.cofaces(k)).collect();
    // Maximal flags suffice: closure adds the rest.
    let mut facets = Vec::new();
    let mut stack: Vec<Vec<(usize, usize)>> = (0..complex.count(0)).map(|v| vec![(0, v)]).collect();
    while let Some(flag) = stack.pop() {
        let &(k, i) = flag.last().expect("flags are nonempty");
        let up = cofaces.get(k).map_or(&[][..], |c| c[i].as_slice());
        if up.is_empty() {
            facets.push(flag.iter().map(|&(d, j)| (offsets[d] + j) as u32).collect());
        }
        for &j in up {
            let mut next = flag.clone();
            next.push((k + 1, j));
            stack.push(next);
        }
    }
    let sd = Complex::closure_of(labels, facets).expect("flags are simplices");
    Subdivision {
        original: complex,
        complex: Arc::new(sd),
        carriers,
        offsets,
    }
}

fn new_labels(complex: &Complex, carriers: &[(usize, usize)]) -> Vec<String> {
    let mut used: HashSet<String> = complex.labels().iter().cloned().collect();
    let mut labels: Vec<String> = complex.labels().to_vec();
    for &(k, i) in &carriers[complex.count(0)..] {
        let mut l = complex
            .simplex(k, i)
            .iter()
            .map(|&v| complex.label(v))
            .collect::<Vec<_>>()
            .join(".");
        while used.contains(&l) {
            l.push('\'');
        }
        used.insert(l.clone());
        labels.push(l);
    }
    labels
}

impl Subdivision {
    pub fn original(&self) -> &Arc<Complex> {
        &self.original
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    /// Original cell whose barycenter is new vertex `v`.
    pub fn carrier(&self, v: u32) -> (usize, usize) {
        self.carriers[v as usize]
    }

    /// Original cell whose interior contains the interior of new cell `(k, i)`.
    pub fn cell_carrier(&self, k: usize, i: usize) -> (usize, usize) {
        self.complex
            .simplex(k, i)
            .iter()
            .map(|&v| self.carriers[v as usize])
            .max()
            .expect("simplices are nonempty")
    }

    /// New vertex at the barycenter of original cell `(k, i)`.
    pub fn barycenter(&self, k: usize, i: usize) -> u32 {
        (self.offsets[k] + i) as u32
    }

    /// Matrix of the subdivision chain map on `C_k`: each `k`-cell goes to the
    /// sum of the new `k`-cells it carries.
    pub fn transport_matrix(&self, k: usize) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.complex.count(k), self.original.count(k));
        for j in 0..self.complex.count(k) {
            let (d, i) = self.cell_carrier(k, j);
            if d == k {
                m.set(j, i, true);
            }
        }
        m
    }

    pub fn transport_chain(&self, c: &Chain) -> Chain {
        if c.k() < 0 {
            return Chain::zero(&self.complex, c.k());
        }
        let k = c.k() as usize;
        let support = c.support();
        let cells = (0..self.complex.count(k)).filter(|&j| {
            let (d, i) = self.cell_carrier(k, j);
            d == k && support.get(i)
        });
        Chain::from_cells(&self.complex, k, cells)
    }

    pub fn transport_vector(&self, k: usize, v: &Gf2Vector) -> Gf2Vector {
        self.transport_chain(&Chain::from_vector(k as isize, v.clone()))
            .into_support()
    }

    /// The subdivision of a closed subcomplex.
    pub fn transport_subcomplex(&self, y: &ClosedSubcomplex) -> ClosedSubcomplex {
        let cells = self
            .complex
            .full_subcomplex_cells(|v| {
                let (k, i) = self.carriers[v as usize];
                y.contains(k, i)
            });
        ClosedSubcomplex::new(self.complex.clone(), cells).expect("full subcomplexes are closed")
    }

    /// The induced action, element for element.
    pub fn transport_action(&self, action: &GroupAction) -> Result<GroupAction> {
        let elements = (0..action.order())
            .map(|g| {
                self.carriers
                    .iter()
                    .map(|&(k, i)| self.barycenter(k, action.cell_image(g, k, i)))
                    .collect()
            })
            .collect();
        GroupAction::from_elements(self.complex.clone(), elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::shapes;

    #[test]
    fn edge_becomes_path() {
        let e = Arc::new(Complex::from_facets(&[vec!["a", "b"]]).unwrap());
        let sd = barycentric_subdivide(e);
        assert_eq!(sd.complex().counts(), vec![3, 2]);
        assert_eq!(sd.complex().label(2), "a.b");
    }

    #[test]
    fn triangle_boundary_becomes_hexagon() {
        let t = Arc::new(Complex::from_facets(&[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]]).unwrap());
        let sd = barycentric_subdivide(t);
        assert_eq!(sd.complex().counts(), vec![6, 6]);
        assert_eq!(sd.complex().betti(), vec![1, 1]);
    }

    #[test]
    fn two_simplex_carries_six_triangles() {
        let t = Arc::new(Complex::from_facets(&[vec!["1", "2", "3"]]).unwrap());
        let sd = barycentric_subdivide(t.clone());
        assert_eq!(sd.complex().counts(), vec![7, 12, 6]);
        let c = Chain::from_cells(&t, 2, [0]);
        assert_eq!(sd.transport_chain(&c).len(), 6);
    }

    #[test]
    fn transport_is_a_chain_map() {
        let x = Arc::new(shapes::octahedron());
        let sd = barycentric_subdivide(x.clone());
        for k in 1..3 {
            let lhs = sd.complex().boundary_matrix(k).mul(&sd.transport_matrix(k));
            let rhs = sd.transport_matrix(k - 1).mul(&x.boundary_matrix(k));
            assert_eq!(lhs, rhs);
        }
        assert_eq!(sd.complex().betti(), x.betti());
    }

    #[test]
    fn action_transports_and_commutes() {
        let (x, act) = shapes::octahedron_antipodal();
        let sd = barycentric_subdivide(x.clone());
        let up = sd.transport_action(&act).unwrap();
        assert_eq!(up.order(), 2);
        for i in 0..x.count(2) {
            let c = Chain::from_cells(&x, 2, [i]);
            assert_eq!(
                sd.transport_chain(&act.act(1, &c)),
                up.act(1, &sd.transport_chain(&c))
            );
        }
    }
}
