use super::matrix::echelon_of;
use super::{Gf2Matrix, Gf2Vector};
use crate::error::{Error, Result};

/// A linear subspace of GF(2)^n held in reduced row echelon form.
///
/// The basis is canonical, so two subspaces are equal iff their bases are
/// bitwise equal and `PartialEq` can be derived.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Gf2Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            &(0..ambient).map(|i| Gf2Vector::unit(ambient, i)).collect::<Vec<_>>(),
        )
    }

    pub fn span(ambient: usize, vectors: &[Gf2Vector]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector has wrong length");
        }
        let ech = echelon_of(vectors.to_vec(), ambient);
        Self {
            ambient,
            basis: ech.rows,
            pivots: ech.pivots,
        }
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Gf2Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &Gf2Vector) -> Gf2Vector {
        assert_eq!(v.len(), self.ambient, "vector has wrong length");
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(b);
            }
        }
        r
    }

    pub fn contains(&self, v: &Gf2Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces live in GF(2)^{} and GF(2)^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Zassenhaus: reduce rows `[a | a]` and `[b | 0]`; rows with zero left half
    /// span the intersection in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let n = self.ambient;
        let zero = Gf2Vector::zeros(n);
        let rows: Vec<Gf2Vector> = self
            .basis
            .iter()
            .map(|a| a.concat(a))
            .chain(other.basis.iter().map(|b| b.concat(&zero)))
            .collect();
        let ech = echelon_of(rows, 2 * n);
        let meet: Vec<Gf2Vector> = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.slice(n, n))
            .collect();
        Ok(Subspace::span(n, &meet))
    }

    /// `{x : map * x ∈ target}`.
    pub fn preimage(map: &Gf2Matrix, target: &Subspace) -> Result<Subspace> {
        if map.rows() != target.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map has {} rows but target subspace lives in GF(2)^{}",
                map.rows(),
                target.ambient
            )));
        }
        // x -> reduce(map x) is linear; its kernel is the preimage.
        let columns: Vec<Gf2Vector> = (0..map.cols())
            .map(|j| target.reduce(&map.column(j)))
            .collect();
        Ok(Gf2Matrix::from_columns(map.rows(), &columns).kernel_basis())
    }

    /// `{map * x : x ∈ self}`.
    pub fn image_under(&self, map: &Gf2Matrix) -> Result<Subspace> {
        if map.cols() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns but subspace lives in GF(2)^{}",
                map.cols(),
                self.ambient
            )));
        }
        let imgs: Vec<Gf2Vector> = self.basis.iter().map(|b| map.mul_vec(b)).collect();
        Ok(Subspace::span(map.rows(), &imgs))
    }

    /// `dim self - dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize> {
        self.check_ambient(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(Error::Containment(
                "quotient requires the divisor to be contained in the dividend".into(),
            ));
        }
        Ok(self.dim() - sub.dim())
    }

    /// Vectors of `self` whose classes form a basis of `self / sub`.
    /// The vectors are taken from the echelon basis of `self`, reduced modulo `sub`.
    pub fn complement_basis(&self, sub: &Subspace) -> Result<Vec<Gf2Vector>> {
        self.check_ambient(sub)?;
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            let r = acc.reduce(b);
            if !r.is_zero() {
                acc = acc.sum(&Subspace::span(self.ambient, std::slice::from_ref(&r)))?;
                out.push(r);
            }
        }
        Ok(out)
    }

    /// The basis as matrix rows.
    pub fn basis_matrix(&self) -> Gf2Matrix {
        Gf2Matrix::from_rows(self.ambient, self.basis.clone())
    }

    /// All `2^dim` members, in Gray-code order starting at zero.
    ///
    /// Panics above dimension 28; this is for enumeration oracles on small spaces.
    pub fn elements(&self) -> Elements<'_> {
        assert!(self.dim() <= 28, "refusing to enumerate 2^{} vectors", self.dim());
        Elements {
            space: self,
            index: 0,
            current: Gf2Vector::zeros(self.ambient),
        }
    }

    /// Express `v` in the echelon basis; `None` if `v` is not a member.
    pub fn coordinates(&self, v: &Gf2Vector) -> Option<Vec<bool>> {
        let mut r = v.clone();
        let mut coords = vec![false; self.dim()];
        for (i, (b, &p)) in self.basis.iter().zip(&self.pivots).enumerate() {
            if r.get(p) {
                r.xor_assign(b);
                coords[i] = true;
            }
        }
        r.is_zero().then_some(coords)
    }
}

pub struct Elements<'a> {
    space: &'a Subspace,
    index: u64,
    current: Gf2Vector,
}

impl Iterator for Elements<'_> {
    type Item = Gf2Vector;

    fn next(&mut self) -> Option<Gf2Vector> {
        let total = 1u64 << self.space.dim();
        if self.index >= total {
            return None;
        }
        if self.index > 0 {
            let flip = self.index.trailing_zeros() as usize;
            self.current.xor_assign(&self.space.basis[flip]);
        }
        self.index += 1;
        Some(self.current.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &[u8]) -> Gf2Vector {
        Gf2Vector::from_u8s(bits)
    }

    #[test]
    fn sum_of_axes_is_plane() {
        let a = Subspace::span(2, &[v(&[1, 0])]);
        let b = Subspace::span(2, &[v(&[0, 1])]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(2));
    }

    #[test]
    fn intersection_example() {
        // span{110, 001} = {000,110,001,111}; span{111} = {000,111}.
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let b = Subspace::span(3, &[v(&[1, 1, 1])]);
        assert_eq!(a.intersection(&b).unwrap(), b);
    }

    #[test]
    fn preimage_of_zero_under_identity() {
        let p = Subspace::preimage(&Gf2Matrix::identity(3), &Subspace::zero(3)).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn quotient_dim_requires_containment() {
        let a = Subspace::span(3, &[v(&[1, 0, 0])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0])]);
        assert!(matches!(a.quotient_dim(&b), Err(Error::Containment(_))));
        assert_eq!(Subspace::full(3).quotient_dim(&a).unwrap(), 2);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.sum(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn elements_enumerates_each_member_once() {
        let a = Subspace::span(4, &[v(&[1, 1, 0, 0]), v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]);
        let all: std::collections::HashSet<_> = a.elements().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| a.contains(x)));
    }

    #[test]
    fn equality_is_basis_independent() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 0, 1]), v(&[1, 1, 0])]);
        assert_eq!(a, b);
    }
}
