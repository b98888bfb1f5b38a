use crate::error::{Error, Result};
use crate::gf2::{Gf2Vector, Subspace};

use super::FiltrationData;

/// `T^{α+1} C_k = N_{α+1} C_k ∩ (1+σ)^{-1} N_α C_k`, for involutions.
///
/// Levels are indexed `[k][β + k + 1]` for `β = -k-1, ..., 1`.
#[derive(Clone, Debug)]
pub struct TFiltration {
    levels: Vec<Vec<Subspace>>,
}

impl TFiltration {
    /// Builds the levels and checks `0 = T^{-k-1} ⊆ ... ⊆ T^1 = C_k` and that
    /// `∂` preserves every level.
    pub fn new(fd: &FiltrationData) -> Result<Self> {
        let act = fd.action();
        let g = act.sigma_index()?;
        let x = fd.complex();
        let levels: Vec<Vec<Subspace>> = (0..fd.len())
            .map(|k| {
                let one_plus = act.one_plus(g, k);
                (-(k as i32) - 1..=1)
                    .map(|beta| {
                        let pre = Subspace::preimage(&one_plus, &fd.level(k, beta - 1)).expect("shapes");
                        fd.level(k, beta).intersection(&pre).expect("same ambient")
                    })
                    .collect()
            })
            .collect();
        for (k, per) in levels.iter().enumerate() {
            if !per[0].is_zero() || !per[per.len() - 1].is_full() {
                return Err(Error::Containment(format!("T levels in dimension {k} do not run from 0 to C_{k}")));
            }
            if let Some(i) = (1..per.len()).find(|&i| !per[i - 1].is_subspace_of(&per[i])) {
                return Err(Error::Containment(format!(
                    "T^{} C_{k} is not contained in the next level",
                    i as i32 - k as i32 - 2
                )));
            }
        }
        let t = Self { levels };
        for k in 1..t.levels.len() {
            let d = x.boundary_matrix(k);
            for beta in -(k as i32)..=1 {
                if !t.level(k, beta).image_under(&d)?.is_subspace_of(&t.level(k - 1, beta)) {
                    return Err(Error::Containment(format!("∂ T^{beta} C_{k} ⊄ T^{beta} C_{}", k - 1)));
                }
            }
        }
        Ok(t)
    }

    /// `T^β C_k`, clamped to 0 below and `C_k` above the stored range.
    pub fn level(&self, k: usize, beta: i32) -> Subspace {
        let per = &self.levels[k];
        let i = beta + k as i32 + 1;
        if i <= 0 {
            Subspace::zero(per[0].ambient())
        } else {
            per[(i as usize).min(per.len() - 1)].clone()
        }
    }

    pub fn dims(&self) -> Vec<Vec<usize>> {
        self.levels.iter().map(|per| per.iter().map(Subspace::dim).collect()).collect()
    }
}

/// How the fixed subcomplex is filtered in the Smith sequence.
#[derive(Clone, Debug, Default)]
pub enum FixedFiltration {
    /// `N_α C_k(X^G)` is the restriction of `N_α C_k(X)` to cells of `X^G`.
    #[default]
    Restriction,
    /// Explicit levels, as subspaces of `C_k(X)` supported on `X^G`, indexed
    /// like the levels of [`FiltrationData`].
    Supplied(Vec<Vec<Subspace>>),
}

/// The rank data of the Smith sequence in one chain dimension.
///
/// ```text
/// 0 → N_α C_k(X^G) ⊕ (1+σ)T^{α+1} C_k → N_α C_k → (1+σ)N_α C_k → 0
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDegree {
    pub k: usize,
    pub fixed_dim: usize,
    pub transfer_dim: usize,
    pub middle_dim: usize,
    pub right_dim: usize,
    /// `dim (N_α C_k)^G`, the kernel of the right map.
    pub kernel_dim: usize,
    /// Rank of the left map.
    pub image_dim: usize,
    pub left_injective: bool,
    pub exact_middle: bool,
    pub right_surjective: bool,
    /// A chain showing the first failure: in both summands, outside the
    /// middle term, or in the kernel but not the image.
    pub witness: Option<Gf2Vector>,
}

impl SmithDegree {
    pub fn is_exact(&self) -> bool {
        self.left_injective && self.exact_middle && self.right_surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithReport {
    pub alpha: i32,
    pub degrees: Vec<SmithDegree>,
}

impl SmithReport {
    pub fn is_exact(&self) -> bool {
        self.degrees.iter().all(SmithDegree::is_exact)
    }
}

fn fixed_level(fd: &FiltrationData, fixed: &FixedFiltration, k: usize, alpha: i32) -> Result<Subspace> {
    let y = fd.action().fixed_subcomplex();
    let layer = y.layer(k);
    match fixed {
        FixedFiltration::Restriction => {
            let vs: Vec<Gf2Vector> = fd.level(k, alpha).basis().iter().map(|b| b.and(&layer)).collect();
            Ok(Subspace::span(layer.len(), &vs))
        }
        FixedFiltration::Supplied(levels) => {
            let per = levels.get(k).filter(|per| per.len() == k + 2).ok_or_else(|| {
                Error::Input(format!("fixed-point filtration has the wrong shape in dimension {k}"))
            })?;
            let i = alpha + k as i32 + 1;
            let s = if i <= 0 {
                Subspace::zero(layer.len())
            } else {
                per[(i as usize).min(k + 1)].clone()
            };
            if s.ambient() != layer.len() {
                return Err(Error::Input(format!(
                    "fixed-point level in dimension {k} has ambient {}, expected {}",
                    s.ambient(),
                    layer.len()
                )));
            }
            if s.basis().iter().any(|b| !b.and_not(&layer).is_zero()) {
                return Err(Error::Input(format!(
                    "fixed-point level in dimension {k} leaves the fixed subcomplex"
                )));
            }
            Ok(s)
        }
    }
}

/// Checks the Smith sequence at `α` in every chain dimension by ranks.
pub fn verify_smith_exactness(fd: &FiltrationData, alpha: i32) -> Result<SmithReport> {
    verify_smith_exactness_with(fd, alpha, &FixedFiltration::Restriction)
}

pub fn verify_smith_exactness_with(
    fd: &FiltrationData,
    alpha: i32,
    fixed: &FixedFiltration,
) -> Result<SmithReport> {
    let g = fd.action().sigma_index()?;
    let t = TFiltration::new(fd)?;
    let mut degrees = Vec::with_capacity(fd.len());
    for k in 0..fd.len() {
        let one_plus = fd.action().one_plus(g, k);
        let a = fixed_level(fd, fixed, k, alpha)?;
        let b = t.level(k, alpha + 1).image_under(&one_plus)?;
        let middle = fd.level(k, alpha);
        let right = middle.image_under(&one_plus)?;
        let kernel = fd.invariant_subspace(k, alpha);
        let image = a.sum(&b)?;
        let both = a.intersection(&b)?;

        let left_injective = both.is_zero();
        let inside = image.is_subspace_of(&middle) && image.is_subspace_of(&kernel);
        let exact_middle = inside && image == kernel;
        // The target is the image by construction; confirm the rank identity.
        let right_surjective = middle.dim() - kernel.dim() == right.dim();

        let witness = if !left_injective {
            both.basis().first().cloned()
        } else if !inside {
            image
                .basis()
                .iter()
                .find(|v| !middle.contains(v) || !kernel.contains(v))
                .cloned()
        } else if !exact_middle {
            kernel.complement_basis(&image)?.into_iter().next()
        } else {
            None
        };
        degrees.push(SmithDegree {
            k,
            fixed_dim: a.dim(),
            transfer_dim: b.dim(),
            middle_dim: middle.dim(),
            right_dim: right.dim(),
            kernel_dim: kernel.dim(),
            image_dim: image.dim(),
            left_injective,
            exact_middle,
            right_surjective,
            witness,
        });
    }
    Ok(SmithReport { alpha, degrees })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::cellmodel::{shapes, GroupAction};
    use crate::Error;

    pub(crate) fn hexagon_fd() -> FiltrationData {
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

    #[test]
    fn t_levels_on_hexagon() {
        let t = TFiltration::new(&hexagon_fd()).unwrap();
        // T^0 C_1: invariant chains plus the half cycles.
        assert_eq!(t.dims(), vec![vec![0, 3, 6], vec![0, 1, 4, 6]]);
    }

    #[test]
    fn t_needs_an_involution() {
        let x = Arc::new(shapes::cycle(6));
        let rot: Vec<u32> = (0..6).map(|i| (i + 1) % 6).collect();
        let act = GroupAction::from_generators(x, vec![rot]).unwrap();
        let fd = FiltrationData::trivial(act);
        assert!(matches!(TFiltration::new(&fd), Err(Error::UnsupportedGroup(_))));
        // Invariants still make sense for the cyclic group.
        assert_eq!(fd.invariant_subspace(1, 0).dim(), 1);
    }

    #[test]
    fn trivial_action_is_exact() {
        let x = Arc::new(shapes::hexagon());
        let fd = FiltrationData::trivial(GroupAction::trivial(x));
        for alpha in -2..=0 {
            let r = verify_smith_exactness(&fd, alpha).unwrap();
            assert!(r.is_exact());
            assert!(r.degrees.iter().all(|d| d.transfer_dim == 0 && d.right_dim == 0));
        }
    }

    #[test]
    fn hexagon_exact_at_minus_one() {
        let r = verify_smith_exactness(&hexagon_fd(), -1).unwrap();
        assert!(r.is_exact());
        let d1 = &r.degrees[1];
        assert_eq!((d1.fixed_dim, d1.transfer_dim, d1.middle_dim, d1.right_dim), (0, 1, 1, 0));
    }

    #[test]
    fn square_reflection_by_enumeration() {
        let (x, act) = shapes::square_reflection();
        let fd = FiltrationData::trivial(act.clone());
        let r = verify_smith_exactness(&fd, 0).unwrap();
        assert!(r.is_exact());
        // Every invariant 1-chain splits as fixed part plus a transfer.
        let t = TFiltration::new(&fd).unwrap();
        let transfers = t.level(1, 1).image_under(&act.one_plus(1, 1)).unwrap();
        let mut invariant = 0;
        for bits in 0u64..16 {
            let c = Gf2Vector::from_u64(x.count(1), bits);
            if act.act_vector(1, 1, &c) == c {
                invariant += 1;
                assert!(transfers.contains(&c));
            }
        }
        assert_eq!(invariant, 4);
        assert_eq!(r.degrees[1].kernel_dim, 2);
    }

    #[test]
    fn supplied_fixed_filtration_checked() {
        let (_, act) = shapes::square_reflection();
        let fd = FiltrationData::trivial(act);
        let bad = FixedFiltration::Supplied(vec![vec![Subspace::zero(3), Subspace::full(3)]]);
        assert!(matches!(verify_smith_exactness_with(&fd, 0, &bad), Err(Error::Input(_))));
    }

    #[test]
    fn corrupted_fixed_filtration_breaks_exactness() {
        let (_, act) = shapes::square_reflection();
        let fd = FiltrationData::trivial(act);
        // Dropping the fixed vertices leaves invariant 0-chains unaccounted for.
        let zero = FixedFiltration::Supplied(vec![
            vec![Subspace::zero(4), Subspace::zero(4)],
            vec![Subspace::zero(4), Subspace::zero(4), Subspace::zero(4)],
        ]);
        let r = verify_smith_exactness_with(&fd, 0, &zero).unwrap();
        assert!(!r.degrees[0].exact_middle);
        assert!(r.degrees[0].witness.is_some());
    }
}
