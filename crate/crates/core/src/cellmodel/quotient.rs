use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{barycentric_subdivide, CellularMap, Complex, GroupAction, Subdivision};

/// Subdivisions tried before giving up on a simplicial orbit complex.
pub const MAX_QUOTIENT_SUBDIVISIONS: usize = 2;

/// A free `Z/2` quotient `π: X' → X'/G`, where `X'` is `X` after the recorded
/// subdivisions.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub subdivisions: Vec<Subdivision>,
    /// The action on the (possibly subdivided) upstairs complex.
    pub action: GroupAction,
    pub complex: Arc<Complex>,
    pub pi: CellularMap,
}

impl Quotient {
    pub fn upstairs(&self) -> &Arc<Complex> {
        self.action.complex()
    }
}

/// Orbit complex of a free involution, subdividing when the naive orbit
/// complex is not simplicial.
pub fn quotient_complex(action: &GroupAction) -> Result<Quotient> {
    action.sigma_index()?;
    if action.is_trivial() || !action.is_free() {
        return Err(Error::Precondition(
            "quotient needs an involution without setwise-fixed cells".into(),
        ));
    }
    let mut current = action.clone();
    let mut subdivisions = Vec::new();
    loop {
        if let Some((complex, pi)) = orbit_complex(&current) {
            return Ok(Quotient {
                subdivisions,
                action: current,
                complex,
                pi,
            });
        }
        if subdivisions.len() == MAX_QUOTIENT_SUBDIVISIONS {
            return Err(Error::Precondition(format!(
                "orbit complex is not simplicial after {MAX_QUOTIENT_SUBDIVISIONS} subdivisions"
            )));
        }
        let sd = barycentric_subdivide(current.complex().clone());
        current = sd.transport_action(&current)?;
        subdivisions.push(sd);
    }
}

/// `None` if two vertices of a cell share an orbit or two cell orbits have the
/// same vertex orbits.
fn orbit_complex(action: &GroupAction) -> Option<(Arc<Complex>, CellularMap)> {
    let x = action.complex();
    let sigma = action.element(1);
    let mut orbit_of = vec![u32::MAX; x.num_vertices()];
    let mut labels = Vec::new();
    for v in 0..x.num_vertices() {
        if orbit_of[v] == u32::MAX {
            let id = labels.len() as u32;
            orbit_of[v] = id;
            orbit_of[sigma[v] as usize] = id;
            labels.push(x.label(v as u32).to_string());
        }
    }
    let mut simplices = Vec::new();
    let mut owner: HashMap<Vec<u32>, (usize, usize)> = HashMap::new();
    for k in 0..x.counts().len() {
        for i in 0..x.count(k) {
            let mut img: Vec<u32> = x.simplex(k, i).iter().map(|&v| orbit_of[v as usize]).collect();
            img.sort_unstable();
            if img.windows(2).any(|w| w[0] == w[1]) {
                return None;
            }
            let orbit_rep = i.min(action.cell_image(1, k, i));
            match owner.get(&img) {
                Some(&(_, j)) if j != orbit_rep => return None,
                Some(_) => {}
                None => {
                    owner.insert(img.clone(), (k, orbit_rep));
                    simplices.push(img);
                }
            }
        }
    }
    debug_assert_eq!(simplices.iter().collect::<HashSet<_>>().len(), simplices.len());
    let q = Arc::new(Complex::from_index_simplices(labels, simplices).ok()?);
    let pi = CellularMap::new(x.clone(), q.clone(), orbit_of).ok()?;
    Some((q, pi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::{shapes, Chain};

    #[test]
    fn hexagon_antipodal_gives_triangle() {
        let (_, act) = shapes::hexagon_antipodal();
        let q = quotient_complex(&act).unwrap();
        assert!(q.subdivisions.is_empty());
        assert_eq!(q.complex.counts(), vec![3, 3]);
        // Each quotient edge has two preimages.
        let m = q.pi.matrix(1);
        for r in 0..3 {
            assert_eq!(m.row(r).count_ones(), 2);
        }
    }

    #[test]
    fn swapped_triangles_give_one_triangle() {
        let (_, act) = shapes::two_triangles_swap();
        let q = quotient_complex(&act).unwrap();
        assert_eq!(q.complex.counts(), vec![3, 3]);
        assert_eq!(q.complex.betti(), vec![1, 1]);
    }

    #[test]
    fn square_antipodal_needs_subdivision() {
        let (_, act) = shapes::square_antipodal();
        let q = quotient_complex(&act).unwrap();
        assert_eq!(q.subdivisions.len(), 1);
        assert_eq!(q.complex.counts(), vec![4, 4]);
        assert_eq!(q.complex.betti(), vec![1, 1]);
    }

    #[test]
    fn octahedron_antipodal_gives_projective_plane() {
        let (_, act) = shapes::octahedron_antipodal();
        let q = quotient_complex(&act).unwrap();
        assert_eq!(q.subdivisions.len(), 1);
        assert_eq!(q.complex.betti(), vec![1, 1, 1]);
        let up = q.upstairs();
        for k in 0..3 {
            assert_eq!(up.count(k), 2 * q.complex.count(k));
            let total = Chain::from_cells(up, k, 0..up.count(k));
            assert!(q.pi.pushforward(&total).is_zero());
        }
    }

    #[test]
    fn non_free_action_rejected() {
        let (_, refl) = shapes::square_reflection();
        assert!(matches!(quotient_complex(&refl), Err(Error::Precondition(_))));
        let x = Arc::new(shapes::hexagon());
        assert!(matches!(
            quotient_complex(&GroupAction::trivial(x)),
            Err(Error::Precondition(_))
        ));
    }
}
