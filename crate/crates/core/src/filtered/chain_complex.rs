use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Subspace};

/// A bounded chain complex of GF(2) vector spaces in degrees `0..=top`.
///
/// `boundary(n)` is `∂_n : C_n → C_{n-1}`, a `dim(n-1) × dim(n)` matrix acting on columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    boundaries: Vec<Gf2Matrix>,
}

impl ChainComplex {
    /// `boundaries[i]` is `∂_{i+1}`; there must be exactly `dims.len() - 1` of them.
    pub fn new(dims: Vec<usize>, boundaries: Vec<Gf2Matrix>) -> Result<Self> {
        if boundaries.len() + 1 != dims.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                boundaries.len()
            )));
        }
        for (i, d) in boundaries.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "∂_{} is {}×{}, expected {}×{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        for i in 1..boundaries.len() {
            if !boundaries[i - 1].mul(&boundaries[i]).is_zero() {
                return Err(Error::Structural(format!("∂_{} ∘ ∂_{} ≠ 0", i, i + 1)));
            }
        }
        Ok(Self { dims, boundaries })
    }

    pub fn zero() -> Self {
        Self {
            dims: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    /// Number of degrees carried (`top + 1`, or 0 for the zero complex).
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim C_n`, zero outside the stored range.
    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`, the zero map outside the stored range.
    pub fn boundary(&self, n: usize) -> Gf2Matrix {
        match n.checked_sub(1).and_then(|i| self.boundaries.get(i)) {
            Some(m) => m.clone(),
            None => Gf2Matrix::zeros(n.checked_sub(1).map_or(0, |m| self.dim(m)), self.dim(n)),
        }
    }

    pub(crate) fn boundary_ref(&self, n: usize) -> Option<&Gf2Matrix> {
        n.checked_sub(1).and_then(|i| self.boundaries.get(i))
    }

    pub fn apply_boundary(&self, n: usize, v: &Gf2Vector) -> Gf2Vector {
        match self.boundary_ref(n) {
            Some(m) => m.mul_vec(v),
            None => Gf2Vector::zeros(n.checked_sub(1).map_or(0, |m| self.dim(m))),
        }
    }

    /// `ker ∂_n`.
    pub fn cycles(&self, n: usize) -> Subspace {
        match self.boundary_ref(n) {
            Some(m) => m.kernel_basis(),
            None => Subspace::full(self.dim(n)),
        }
    }

    /// `im ∂_{n+1}`.
    pub fn boundaries(&self, n: usize) -> Subspace {
        match self.boundary_ref(n + 1) {
            Some(m) => m.image(),
            None => Subspace::zero(self.dim(n)),
        }
    }

    pub fn homology_dim(&self, n: usize) -> usize {
        let rank_out = self.boundary_ref(n).map_or(0, Gf2Matrix::rank);
        let rank_in = self.boundary_ref(n + 1).map_or(0, Gf2Matrix::rank);
        self.dim(n) - rank_out - rank_in
    }

    /// `dim H_n` for `n = 0..len()`.
    pub fn betti(&self) -> Vec<usize> {
        (0..self.len()).map(|n| self.homology_dim(n)).collect()
    }

    /// Pads with zero spaces up to `len` degrees.
    pub fn padded(&self, len: usize) -> ChainComplex {
        if len <= self.len() {
            return self.clone();
        }
        let mut dims = self.dims.clone();
        dims.resize(len, 0);
        let boundaries = (1..len)
            .map(|n| match self.boundary_ref(n) {
                Some(m) => m.clone(),
                None => Gf2Matrix::zeros(dims[n - 1], dims[n]),
            })
            .collect();
        ChainComplex { dims, boundaries }
    }
}

/// A degree-wise linear map between chain complexes; `maps[n] : A_n → B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<Gf2Matrix>,
}

impl ChainMap {
    /// Checks shapes and `f ∂ = ∂ f`.
    pub fn new(source: &ChainComplex, target: &ChainComplex, maps: Vec<Gf2Matrix>) -> Result<Self> {
        let len = source.len().max(target.len());
        let mut maps = maps;
        if maps.len() > len {
            return Err(Error::DimensionMismatch("chain map has too many degrees".into()));
        }
        while maps.len() < len {
            let n = maps.len();
            maps.push(Gf2Matrix::zeros(target.dim(n), source.dim(n)));
        }
        for (n, m) in maps.iter().enumerate() {
            if m.rows() != target.dim(n) || m.cols() != source.dim(n) {
                return Err(Error::DimensionMismatch(format!(
                    "degree {n} map is {}×{}, expected {}×{}",
                    m.rows(),
                    m.cols(),
                    target.dim(n),
                    source.dim(n)
                )));
            }
        }
        for n in 1..len {
            let lhs = target.boundary(n).mul(&maps[n]);
            let rhs = maps[n - 1].mul(&source.boundary(n));
            if lhs != rhs {
                return Err(Error::Structural(format!("map does not commute with ∂_{n}")));
            }
        }
        Ok(Self { maps })
    }

    /// Unvalidated; consumers re-check against concrete complexes.
    pub fn from_matrices(maps: Vec<Gf2Matrix>) -> Self {
        Self { maps }
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self {
            maps: (0..c.len()).map(|n| Gf2Matrix::identity(c.dim(n))).collect(),
        }
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Self {
        Self::new(source, target, Vec::new()).expect("zero map commutes")
    }

    /// `f_n`, the zero map outside the stored range.
    pub fn degree(&self, n: usize) -> Option<&Gf2Matrix> {
        self.maps.get(n)
    }

    pub fn maps(&self) -> &[Gf2Matrix] {
        &self.maps
    }

    pub fn apply(&self, n: usize, v: &Gf2Vector, target_dim: usize) -> Gf2Vector {
        match self.maps.get(n) {
            Some(m) => m.mul_vec(v),
            None => Gf2Vector::zeros(target_dim),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ChainMap) -> ChainMap {
        let len = self.maps.len().min(next.maps.len());
        ChainMap {
            maps: (0..len).map(|n| next.maps[n].mul(&self.maps[n])).collect(),
        }
    }

    /// Rank of the induced map `H_n(A) → H_n(B)`.
    pub fn homology_rank(&self, source: &ChainComplex, target: &ChainComplex, n: usize) -> usize {
        let Some(f) = self.maps.get(n) else { return 0 };
        let img = source.cycles(n).image_under(f).expect("shapes checked");
        let bd = target.boundaries(n);
        img.sum(&bd).expect("same ambient").dim() - bd.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_complex() {
        let d = Gf2Matrix::from_dense(&[&[1]]);
        assert!(ChainComplex::new(vec![1, 1, 1], vec![d.clone(), d]).is_err());
    }

    #[test]
    fn interval_homology() {
        let d = Gf2Matrix::from_dense(&[&[1], &[1]]);
        let c = ChainComplex::new(vec![2, 1], vec![d]).unwrap();
        assert_eq!(c.betti(), vec![1, 0]);
        assert_eq!(c.cycles(1).dim(), 0);
        assert_eq!(c.boundaries(0).dim(), 1);
    }

    #[test]
    fn chain_map_must_commute() {
        let d = Gf2Matrix::from_dense(&[&[1], &[1]]);
        let c = ChainComplex::new(vec![2, 1], vec![d]).unwrap();
        let bad = vec![Gf2Matrix::from_dense(&[&[1, 0], &[0, 0]]), Gf2Matrix::identity(1)];
        assert!(ChainMap::new(&c, &c, bad).is_err());
        assert!(ChainMap::new(&c, &c, ChainMap::identity(&c).maps().to_vec()).is_ok());
    }
}
