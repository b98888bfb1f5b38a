use crate::error::{Error, Result, ValidationKind};
use crate::gf2::{Gf2Matrix, Subspace};

use super::ChainComplex;

/// A chain complex with a bounded increasing filtration in every degree.
///
/// Levels are stored for `p` in `p_min..=p_max`; below `p_min` every level is
/// zero and at `p_max` every level is the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: ChainComplex,
    p_min: i32,
    levels: Vec<Vec<Subspace>>,
    action: Option<Vec<Vec<Gf2Matrix>>>,
}

impl FilteredComplex {
    /// `levels[n][i]` is `F_{p_min + i}` in degree `n`; every degree must list
    /// the same number of levels, the last of which must be everything.
    pub fn new(complex: ChainComplex, p_min: i32, levels: Vec<Vec<Subspace>>) -> Result<Self> {
        if levels.len() != complex.len() {
            return Err(Error::DimensionMismatch(format!(
                "filtration covers {} degrees, complex has {}",
                levels.len(),
                complex.len()
            )));
        }
        let width = levels.first().map_or(1, Vec::len);
        if width == 0 {
            return Err(Error::DimensionMismatch("filtration has no levels".into()));
        }
        for (n, per_p) in levels.iter().enumerate() {
            if per_p.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} has {} levels, expected {width}",
                    per_p.len()
                )));
            }
            for (i, f) in per_p.iter().enumerate() {
                let p = p_min + i as i32;
                if f.ambient() != complex.dim(n) {
                    return Err(Error::DimensionMismatch(format!(
                        "F_{p} in degree {n} lives in the wrong space"
                    )));
                }
                if i > 0 && !per_p[i - 1].is_subspace_of(f) {
                    return Err(Error::Validation {
                        kind: ValidationKind::Monotone,
                        message: format!("F_{} ⊄ F_{p} in degree {n}", p - 1),
                    });
                }
                if n > 0 {
                    let img = f.image_under(&complex.boundary(n))?;
                    if !img.is_subspace_of(&levels[n - 1][i]) {
                        return Err(Error::Validation {
                            kind: ValidationKind::Boundary,
                            message: format!("∂ F_{p} ⊄ F_{p} in degree {n}"),
                        });
                    }
                }
            }
            if !per_p[width - 1].is_full() {
                return Err(Error::Validation {
                    kind: ValidationKind::Bounds,
                    message: format!("top level is not everything in degree {n}"),
                });
            }
        }
        Ok(Self {
            complex,
            p_min,
            levels,
            action: None,
        })
    }

    /// Attaches a group action: `mats[g][n]` acts on degree `n`, element 0 is
    /// the identity. The action must commute with `∂` and preserve every level.
    pub fn with_action(mut self, mats: Vec<Vec<Gf2Matrix>>) -> Result<Self> {
        for (g, per_n) in mats.iter().enumerate() {
            if per_n.len() != self.complex.len() {
                return Err(Error::DimensionMismatch(format!(
                    "element {g} acts on {} degrees, complex has {}",
                    per_n.len(),
                    self.complex.len()
                )));
            }
            for (n, m) in per_n.iter().enumerate() {
                let d = self.complex.dim(n);
                if m.rows() != d || m.cols() != d {
                    return Err(Error::DimensionMismatch(format!("element {g} in degree {n}")));
                }
                if n > 0 && self.complex.boundary(n).mul(m) != per_n[n - 1].mul(&self.complex.boundary(n)) {
                    return Err(Error::Validation {
                        kind: ValidationKind::Equivariance,
                        message: format!("element {g} does not commute with ∂_{n}"),
                    });
                }
                for (i, f) in self.levels[n].iter().enumerate() {
                    if !f.image_under(m)?.is_subspace_of(f) {
                        return Err(Error::Validation {
                            kind: ValidationKind::Equivariance,
                            message: format!(
                                "element {g} does not preserve F_{} in degree {n}",
                                self.p_min + i as i32
                            ),
                        });
                    }
                }
            }
        }
        self.action = Some(mats);
        Ok(self)
    }

    /// The filtration with a single jump at `p = 0`.
    pub fn trivial(complex: ChainComplex) -> Self {
        let levels = complex.dims().iter().map(|&d| vec![Subspace::full(d)]).collect();
        Self::new(complex, 0, levels).expect("trivial filtration is valid")
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn action(&self) -> Option<&[Vec<Gf2Matrix>]> {
        self.action.as_deref()
    }

    pub fn p_min(&self) -> i32 {
        self.p_min
    }

    pub fn p_max(&self) -> i32 {
        self.p_min + self.levels.first().map_or(1, Vec::len) as i32 - 1
    }

    /// `F_p` in degree `n`.
    pub fn level(&self, n: usize, p: i32) -> Subspace {
        let d = self.complex.dim(n);
        if n >= self.levels.len() || p < self.p_min {
            return Subspace::zero(d);
        }
        if p >= self.p_max() {
            return Subspace::full(d);
        }
        self.levels[n][(p - self.p_min) as usize].clone()
    }

    /// Same filtration listed over a wider `p` range.
    pub fn widened(&self, p_min: i32, p_max: i32) -> FilteredComplex {
        let p_min = p_min.min(self.p_min);
        let p_max = p_max.max(self.p_max());
        let levels = (0..self.complex.len())
            .map(|n| (p_min..=p_max).map(|p| self.level(n, p)).collect())
            .collect();
        FilteredComplex {
            complex: self.complex.clone(),
            p_min,
            levels,
            action: self.action.clone(),
        }
    }

    /// Pads the complex with zero degrees up to `len`.
    pub fn padded(&self, len: usize) -> FilteredComplex {
        if len <= self.complex.len() {
            return self.clone();
        }
        let width = self.levels.first().map_or(1, Vec::len);
        let mut levels = self.levels.clone();
        levels.resize(len, vec![Subspace::zero(0); width]);
        let action = self.action.as_ref().map(|mats| {
            mats.iter()
                .map(|per_n| {
                    let mut v = per_n.clone();
                    v.resize(len, Gf2Matrix::zeros(0, 0));
                    v
                })
                .collect()
        });
        FilteredComplex {
            complex: self.complex.padded(len),
            p_min: self.p_min,
            levels,
            action,
        }
    }
}

/// The homological truncation filtration with shift `s`: in degree `n`,
/// `F_p` is 0 for `p + n < s`, `ker ∂_n` for `p + n = s`, everything above.
pub fn canonical_filtration_shifted(complex: &ChainComplex, s: i32) -> FilteredComplex {
    let top = complex.len().saturating_sub(1) as i32;
    let p_min = s - top;
    let p_max = s + 1;
    let levels = (0..complex.len())
        .map(|n| {
            let cycles = complex.cycles(n);
            (p_min..=p_max)
                .map(|p| match (p + n as i32).cmp(&s) {
                    std::cmp::Ordering::Less => Subspace::zero(complex.dim(n)),
                    std::cmp::Ordering::Equal => cycles.clone(),
                    std::cmp::Ordering::Greater => Subspace::full(complex.dim(n)),
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(complex.clone(), p_min, levels).expect("canonical filtration is valid")
}

/// [`canonical_filtration_shifted`] with shift 0, so `F_{-n}` in degree `n` is `ker ∂_n`.
pub fn canonical_filtration(complex: &ChainComplex) -> FilteredComplex {
    canonical_filtration_shifted(complex, 0)
}
