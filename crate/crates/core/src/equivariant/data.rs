use std::sync::Arc;

use crate::cellmodel::{Complex, GroupAction, Subdivision};
use crate::error::{Error, Result, ValidationKind};
use crate::gf2::{Gf2Vector, Subspace};

/// Filtration degrees on the chains of a complex with an action.
///
/// For each chain dimension `k` the levels are `N_α C_k` for
/// `α = -k-1, ..., 0`, with `N_{-k-1} = 0` and `N_0 = C_k`.
#[derive(Clone, Debug)]
pub struct FiltrationData {
    action: GroupAction,
    levels: Vec<Vec<Subspace>>,
}

/// Dimensions `dim N_α C_k`, indexed `[k][α + k + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationReport {
    pub dims: Vec<Vec<usize>>,
}

impl FiltrationReport {
    pub fn dim(&self, k: usize, alpha: i32) -> usize {
        let Some(row) = self.dims.get(k) else { return 0 };
        match usize::try_from(alpha + k as i32 + 1) {
            Err(_) => 0,
            Ok(i) => row.get(i).or(row.last()).copied().unwrap_or(0),
        }
    }
}

impl FiltrationData {
    /// `levels[k][i]` is `N_{i-k-1} C_k`; every invariant is checked.
    pub fn new(action: GroupAction, levels: Vec<Vec<Subspace>>) -> Result<Self> {
        let fd = Self { action, levels };
        fd.validate()?;
        Ok(fd)
    }

    /// Only the jump at `α = 0`.
    pub fn trivial(action: GroupAction) -> Self {
        let x = action.complex().clone();
        let levels = (0..x.counts().len())
            .map(|k| {
                let mut v = vec![Subspace::zero(x.count(k)); k + 1];
                v.push(Subspace::full(x.count(k)));
                v
            })
            .collect();
        Self::new(action, levels).expect("trivial filtration is valid")
    }

    /// In the top dimension `n`, `N_{-n}` up to `N_{-1}` are spanned by the sums of
    /// the face-connected components of top cells that are cycles; every
    /// other level below 0 is zero.
    pub fn pure_default(action: GroupAction) -> Self {
        let x = action.complex().clone();
        let layers = x.counts().len();
        let mut levels: Vec<Vec<Subspace>> = (0..layers)
            .map(|k| {
                let mut v = vec![Subspace::zero(x.count(k)); k + 1];
                v.push(Subspace::full(x.count(k)));
                v
            })
            .collect();
        if let Some(n) = layers.checked_sub(1).filter(|&n| n > 0) {
            let pure = Subspace::span(x.count(n), &closed_components(&x, n));
            for level in levels[n].iter_mut().take(n + 1).skip(1) {
                *level = pure.clone();
            }
        }
        Self::new(action, levels).expect("component cycles give a valid filtration")
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn complex(&self) -> &Arc<Complex> {
        self.action.complex()
    }

    /// Number of chain dimensions covered.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Vec<Subspace>] {
        &self.levels
    }

    /// `N_α C_k`, clamped: zero below `-k-1`, everything from 0 up.
    pub fn level(&self, k: usize, alpha: i32) -> Subspace {
        let n = self.complex().count(k);
        let i = alpha + k as i32 + 1;
        if k >= self.levels.len() || i <= 0 {
            return Subspace::zero(n);
        }
        if alpha >= 0 {
            return Subspace::full(n);
        }
        self.levels[k][i as usize].clone()
    }

    /// Re-checks bounds, monotonicity, boundary compatibility and invariance.
    pub fn validate(&self) -> Result<FiltrationReport> {
        let x = self.complex();
        let layers = x.counts().len();
        let err = |kind, message: String| Err(Error::Validation { kind, message });
        if self.levels.len() != layers {
            return err(
                ValidationKind::Bounds,
                format!("filtration covers {} dimensions, complex has {layers}", self.levels.len()),
            );
        }
        for (k, per) in self.levels.iter().enumerate() {
            if per.len() != k + 2 {
                return err(
                    ValidationKind::Bounds,
                    format!("dimension {k} needs {} levels, got {}", k + 2, per.len()),
                );
            }
            if per.iter().any(|s| s.ambient() != x.count(k)) {
                return Err(Error::DimensionMismatch(format!(
                    "a level in dimension {k} lives in the wrong space"
                )));
            }
            if !per[0].is_zero() {
                return err(ValidationKind::Bounds, format!("N_{} C_{k} is not zero", -(k as i32) - 1));
            }
            if !per[k + 1].is_full() {
                return err(ValidationKind::Bounds, format!("N_0 C_{k} is not all of C_{k}"));
            }
            for i in 1..per.len() {
                if !per[i - 1].is_subspace_of(&per[i]) {
                    let a = i as i32 - k as i32 - 1;
                    return err(ValidationKind::Monotone, format!("N_{} C_{k} ⊄ N_{a} C_{k}", a - 1));
                }
            }
        }
        for k in 1..layers {
            let d = x.boundary_matrix(k);
            for alpha in -(k as i32)..0 {
                let img = self.level(k, alpha).image_under(&d)?;
                if !img.is_subspace_of(&self.level(k - 1, alpha)) {
                    return err(
                        ValidationKind::Boundary,
                        format!("∂ N_{alpha} C_{k} ⊄ N_{alpha} C_{}", k - 1),
                    );
                }
            }
        }
        for g in 1..self.action.order() {
            for k in 0..layers {
                for alpha in -(k as i32)..0 {
                    let lvl = self.level(k, alpha);
                    if let Some(b) = lvl
                        .basis()
                        .iter()
                        .find(|b| !lvl.contains(&self.action.act_vector(g, k, b)))
                    {
                        return err(
                            ValidationKind::Equivariance,
                            format!(
                                "N_{alpha} C_{k} is not stable under element {g}: moves {:?}",
                                b.ones().collect::<Vec<_>>()
                            ),
                        );
                    }
                }
            }
        }
        Ok(FiltrationReport {
            dims: self
                .levels
                .iter()
                .map(|per| per.iter().map(Subspace::dim).collect())
                .collect(),
        })
    }

    /// `(N_α C_k)^G`: chains of the level fixed by every group element.
    pub fn invariant_subspace(&self, k: usize, alpha: i32) -> Subspace {
        let mut s = self.level(k, alpha);
        for g in 1..self.action.order() {
            let fixed = self.action.one_plus(g, k).kernel_basis();
            s = s.intersection(&fixed).expect("same ambient");
        }
        s
    }

    /// The same data carried to a barycentric subdivision: each level below 0
    /// is pushed through the subdivision chain map and `N_0` stays everything.
    pub fn transport(&self, sd: &Subdivision, action: GroupAction) -> Result<FiltrationData> {
        let layers = sd.complex().counts().len();
        let levels = (0..layers)
            .map(|k| {
                let m = sd.transport_matrix(k);
                let n = sd.complex().count(k);
                (0..k + 2)
                    .map(|i| {
                        if i == k + 1 {
                            Subspace::full(n)
                        } else {
                            let alpha = i as i32 - k as i32 - 1;
                            self.level(k, alpha).image_under(&m).expect("shapes")
                        }
                    })
                    .collect()
            })
            .collect();
        FiltrationData::new(action, levels)
    }
}

/// Sums over face-connected components of `n`-cells that are cycles.
fn closed_components(x: &Complex, n: usize) -> Vec<Gf2Vector> {
    let cofaces = x.cofaces(n);
    let count = x.count(n);
    let mut comp = vec![usize::MAX; count];
    let mut out = Vec::new();
    for start in 0..count {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut i = 0;
        while i < members.len() {
            let c = members[i];
            for f in x.facet_indices(n, c) {
                for &d in &cofaces[f] {
                    if comp[d] == usize::MAX {
                        comp[d] = start;
                        members.push(d);
                    }
                }
            }
            i += 1;
        }
        let v = Gf2Vector::from_indices(count, members);
        if x.boundary_matrix(n).mul_vec(&v).is_zero() {
            out.push(v);
        }
    }
    out
}
