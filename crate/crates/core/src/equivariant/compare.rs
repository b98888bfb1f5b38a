use crate::cellmodel::{quotient_complex, CellularMap, GroupAction};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Subspace};

use super::{FiltrationData, TFiltration};

/// An orbit map `X → X/G` for a free involution, with optional filtration
/// data on the quotient (under the trivial action).
#[derive(Clone, Debug)]
pub struct QuotientModel {
    pub pi: CellularMap,
    pub filtration: Option<FiltrationData>,
}

impl QuotientModel {
    /// Checks that every quotient cell has exactly one orbit of preimages.
    pub fn new(action: &GroupAction, pi: CellularMap, filtration: Option<FiltrationData>) -> Result<Self> {
        let g = action.sigma_index()?;
        if pi.source() != action.complex() {
            return Err(Error::Input("orbit map does not start at the acted-on complex".into()));
        }
        let layers = action.complex().counts().len();
        for k in 0..layers {
            let m = pi.matrix(k);
            for i in 0..action.complex().count(k) {
                let j = action.cell_image(g, k, i);
                let (img_i, img_j) = (pi.nondegenerate_image(k, i), pi.nondegenerate_image(k, j));
                if img_i.is_none() || img_i != img_j || i == j {
                    return Err(Error::Precondition(format!(
                        "cell {} is not sent to a cell shared only with its orbit partner",
                        action.complex().simplex_name(k, i)
                    )));
                }
            }
            if (0..m.rows()).any(|r| m.row(r).count_ones() != 2) {
                return Err(Error::Precondition(format!(
                    "some quotient {k}-cell does not have exactly two preimages"
                )));
            }
        }
        if let Some(f) = &filtration {
            if f.complex() != pi.target() || !f.action().is_trivial() {
                return Err(Error::Input(
                    "quotient filtration must live on the quotient with the trivial action".into(),
                ));
            }
        }
        Ok(Self { pi, filtration })
    }
}

/// One `(k, α)` row of the quotient comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub k: usize,
    pub alpha: i32,
    /// `dim (N_α C_k)^G`.
    pub invariant_dim: usize,
    /// `dim (1+σ) T^{α+1} C_k`.
    pub transfer_dim: usize,
    /// `dim N_α C_k(X/G)`.
    pub quotient_dim: usize,
    /// Whether `π_* T^{α+1} C_k` is exactly the quotient level.
    pub image_matches: bool,
    /// `dim π_* N_α C_k`, reported for comparison with the quotient level.
    pub pushforward_dim: usize,
}

impl QuotientRow {
    pub fn holds(&self) -> bool {
        self.invariant_dim == self.transfer_dim && self.transfer_dim == self.quotient_dim && self.image_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientComparison {
    /// Barycentric subdivisions applied before the orbit complex was simplicial.
    pub subdivisions: usize,
    pub rows: Vec<QuotientRow>,
}

impl QuotientComparison {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(QuotientRow::holds)
    }
}

/// Compares invariant chains, transfers and the quotient filtration for a
/// free involution. Without a model the orbit complex is built (subdividing
/// if needed) and filtered by `π_* T^{α+1}`.
pub fn quotient_comparison(fd: &FiltrationData, model: Option<&QuotientModel>) -> Result<QuotientComparison> {
    let act = fd.action();
    act.sigma_index()?;
    if act.is_trivial() || !act.is_free() {
        return Err(Error::Precondition("quotient comparison needs a free involution".into()));
    }
    let (fd, pi, quotient_fd, subdivisions) = match model {
        Some(m) => {
            if m.pi.source() != fd.complex() {
                return Err(Error::Input("orbit map does not start at the filtered complex".into()));
            }
            (fd.clone(), m.pi.clone(), m.filtration.clone(), 0)
        }
        None => {
            let q = quotient_complex(act)?;
            let mut data = fd.clone();
            for sd in &q.subdivisions {
                let next = sd.transport_action(data.action())?;
                data = data.transport(sd, next)?;
            }
            (data, q.pi, None, q.subdivisions.len())
        }
    };
    let g = fd.action().sigma_index()?;
    let t = TFiltration::new(&fd)?;
    let mut rows = Vec::new();
    for k in 0..fd.len() {
        let one_plus = fd.action().one_plus(g, k);
        let pik = pi.matrix(k);
        for alpha in -(k as i32) - 1..=0 {
            let tk = t.level(k, alpha + 1);
            let image = tk.image_under(&pik)?;
            let level = match &quotient_fd {
                Some(q) => q.level(k, alpha),
                None => image.clone(),
            };
            rows.push(QuotientRow {
                k,
                alpha,
                invariant_dim: fd.invariant_subspace(k, alpha).dim(),
                transfer_dim: tk.image_under(&one_plus)?.dim(),
                quotient_dim: level.dim(),
                image_matches: image == level,
                pushforward_dim: fd.level(k, alpha).image_under(&pik)?.dim(),
            });
        }
    }
    Ok(QuotientComparison { subdivisions, rows })
}

/// `(1+σ)N_α C_k` against the image of `N_α C_k` in the chains of the quotient
/// of the free part `X ∖ X^G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreePartRow {
    pub k: usize,
    pub transfer_dim: usize,
    pub open_image_dim: usize,
}

pub fn free_part_image(fd: &FiltrationData, alpha: i32) -> Result<Vec<FreePartRow>> {
    let act = fd.action();
    let g = act.sigma_index()?;
    let fixed = act.fixed_subcomplex();
    let x = fd.complex();
    let mut rows = Vec::new();
    for k in 0..fd.len() {
        let mut orbit = vec![usize::MAX; x.count(k)];
        let mut orbits = 0;
        for i in (0..x.count(k)).filter(|&i| !fixed.contains(k, i)) {
            let j = act.cell_image(g, k, i);
            if i == j {
                return Err(Error::Precondition(format!(
                    "cell {} is flipped, so the free part is not free; subdivide first",
                    x.simplex_name(k, i)
                )));
            }
            if orbit[i] == usize::MAX {
                orbit[i] = orbits;
                orbit[j] = orbits;
                orbits += 1;
            }
        }
        let mut to_orbits = Gf2Matrix::zeros(orbits, x.count(k));
        for (i, &o) in orbit.iter().enumerate().filter(|(_, &o)| o != usize::MAX) {
            to_orbits.set(o, i, true);
        }
        let level = fd.level(k, alpha);
        rows.push(FreePartRow {
            k,
            transfer_dim: level.image_under(&act.one_plus(g, k))?.dim(),
            open_image_dim: level.image_under(&to_orbits)?.dim(),
        });
    }
    Ok(rows)
}

/// `π_*(T^{α+1} C_k)` for every level, as filtration data on the quotient
/// with the trivial action. This is the default quotient filtration.
pub fn transfer_filtration(fd: &FiltrationData, pi: &CellularMap) -> Result<FiltrationData> {
    let t = TFiltration::new(fd)?;
    let q = pi.target().clone();
    let levels = (0..q.counts().len())
        .map(|k| {
            (-(k as i32) - 1..=0)
                .map(|alpha| {
                    if alpha == 0 {
                        Ok(Subspace::full(q.count(k)))
                    } else {
                        t.level(k, alpha + 1).image_under(&pi.matrix(k))
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FiltrationData::new(GroupAction::trivial(q), levels)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cellmodel::shapes;
    use crate::gf2::Gf2Vector;

    fn hexagon_fd() -> FiltrationData {
        let (x, act) = shapes::hexagon_antipodal();
        let cycle = Gf2Vector::from_indices(6, 0..6);
        FiltrationData::new(
            act,
            vec![
                vec![Subspace::zero(6), Subspace::full(6)],
                vec![Subspace::zero(6), Subspace::span(6, &[cycle]), Subspace::full(x.count(1))],
            ],
        )
        .unwrap()
    }

    fn row(c: &QuotientComparison, k: usize, alpha: i32) -> &QuotientRow {
        c.rows.iter().find(|r| r.k == k && r.alpha == alpha).unwrap()
    }

    #[test]
    fn hexagon_dimensions_agree() {
        let c = quotient_comparison(&hexagon_fd(), None).unwrap();
        assert!(c.holds());
        let r = row(&c, 1, 0);
        assert_eq!((r.invariant_dim, r.transfer_dim, r.quotient_dim), (3, 3, 3));
        let r = row(&c, 1, -1);
        assert_eq!((r.invariant_dim, r.transfer_dim, r.quotient_dim), (1, 1, 1));
    }

    #[test]
    fn supplied_model_is_compared() {
        let (hex, act, tri, pi) = shapes::hexagon_over_triangle();
        let fd = hexagon_fd();
        assert_eq!(fd.complex(), &hex);
        let good = transfer_filtration(&fd, &pi).unwrap();
        let model = QuotientModel::new(&act, pi.clone(), Some(good)).unwrap();
        let c = quotient_comparison(&fd, Some(&model)).unwrap();
        assert!(c.holds());
        // Pushing N_{-1} forward instead folds the cycle onto itself twice.
        assert_eq!(row(&c, 1, -1).pushforward_dim, 0);
        let trivial = FiltrationData::trivial(GroupAction::trivial(tri));
        let model = QuotientModel::new(&act, pi, Some(trivial)).unwrap();
        let c = quotient_comparison(&fd, Some(&model)).unwrap();
        assert!(!c.holds());
        assert!(!row(&c, 1, -1).image_matches);
    }

    #[test]
    fn non_free_action_rejected() {
        let (_, act) = shapes::square_reflection();
        let fd = FiltrationData::trivial(act);
        assert!(matches!(quotient_comparison(&fd, None), Err(Error::Precondition(_))));
    }

    #[test]
    fn octahedron_after_subdivision() {
        let (_, act) = shapes::octahedron_antipodal();
        let c = quotient_comparison(&FiltrationData::trivial(act), None).unwrap();
        assert_eq!(c.subdivisions, 1);
        assert!(c.holds());
    }

    #[test]
    fn free_part_examples() {
        let x = Arc::new(shapes::hexagon());
        let fd = FiltrationData::trivial(GroupAction::trivial(x));
        assert!(free_part_image(&fd, 0).unwrap().iter().all(|r| r.transfer_dim == 0 && r.open_image_dim == 0));
        let (_, act) = shapes::square_reflection();
        let rows = free_part_image(&FiltrationData::trivial(act), 0).unwrap();
        assert_eq!(
            rows.iter().map(|r| (r.transfer_dim, r.open_image_dim)).collect::<Vec<_>>(),
            vec![(1, 1), (2, 2)]
        );
    }
}
