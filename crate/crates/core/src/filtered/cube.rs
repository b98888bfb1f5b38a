use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vector, Subspace};

use super::{
    e1_dims, is_filtered_quasi_iso, ChainComplex, ChainMap, FilteredComplex, FilteredMap,
    QuasiIsoReport,
};

/// How the shifted factor of a mapping cone is filtered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ConeShift {
    /// `F_p(cone)_n = F_p(B)_n ⊕ F_p(A)_{n-1}`.
    #[default]
    Zero,
    /// `F_p(cone)_n = F_p(B)_n ⊕ F_{p-1}(A)_{n-1}`.
    One,
}

impl ConeShift {
    pub fn offset(self) -> i32 {
        match self {
            ConeShift::Zero => 0,
            ConeShift::One => 1,
        }
    }
}

/// A one- or two-dimensional commutative cube of filtered complexes.
#[derive(Clone, Debug)]
pub enum CubeDiagram {
    /// `A → B`.
    Arrow(FilteredMap),
    /// ```text
    /// Ỹ --top--> X̃
    /// |left      |right
    /// v          v
    /// Y --bottom-> X
    /// ```
    Square {
        top: FilteredMap,
        left: FilteredMap,
        right: FilteredMap,
        bottom: FilteredMap,
    },
}

impl CubeDiagram {
    /// Checks that the corners match and the square commutes on the nose.
    pub fn square(top: FilteredMap, left: FilteredMap, right: FilteredMap, bottom: FilteredMap) -> Result<Self> {
        let corners = [
            (&top.source, &left.source, "top and left sources"),
            (&top.target, &right.source, "top target and right source"),
            (&left.target, &bottom.source, "left target and bottom source"),
            (&right.target, &bottom.target, "right and bottom targets"),
        ];
        for (a, b, what) in corners {
            if a.complex() != b.complex() {
                return Err(Error::Input(format!("square corners disagree: {what}")));
            }
        }
        let len = right.target.complex().len();
        for n in 0..len {
            let lhs = compose_degree(&top.map, &right.map, n, &top.source, &right.target);
            let rhs = compose_degree(&left.map, &bottom.map, n, &left.source, &bottom.target);
            if lhs != rhs {
                return Err(Error::Precondition(format!("square does not commute in degree {n}")));
            }
        }
        Ok(CubeDiagram::Square {
            top,
            left,
            right,
            bottom,
        })
    }
}

fn degree_matrix(f: &ChainMap, n: usize, src: &ChainComplex, tgt: &ChainComplex) -> Gf2Matrix {
    f.degree(n)
        .cloned()
        .unwrap_or_else(|| Gf2Matrix::zeros(tgt.dim(n), src.dim(n)))
}

fn compose_degree(
    first: &ChainMap,
    second: &ChainMap,
    n: usize,
    src: &FilteredComplex,
    tgt: &FilteredComplex,
) -> Gf2Matrix {
    match (first.degree(n), second.degree(n)) {
        (Some(a), Some(b)) => b.mul(a),
        _ => Gf2Matrix::zeros(tgt.complex().dim(n), src.complex().dim(n)),
    }
}

fn block(a: &Gf2Matrix, b: &Gf2Matrix, c: &Gf2Matrix, d: &Gf2Matrix) -> Gf2Matrix {
    a.hstack(b).vstack(&c.hstack(d))
}

fn block_diag(a: &Gf2Matrix, d: &Gf2Matrix) -> Gf2Matrix {
    block(
        a,
        &Gf2Matrix::zeros(a.rows(), d.cols()),
        &Gf2Matrix::zeros(d.rows(), a.cols()),
        d,
    )
}

fn direct_sum(a: &Subspace, b: &Subspace) -> Subspace {
    let za = Gf2Vector::zeros(a.ambient());
    let zb = Gf2Vector::zeros(b.ambient());
    let vs: Vec<Gf2Vector> = a
        .basis()
        .iter()
        .map(|x| x.concat(&zb))
        .chain(b.basis().iter().map(|y| za.concat(y)))
        .collect();
    Subspace::span(a.ambient() + b.ambient(), &vs)
}

/// Mapping cone `B_n ⊕ A_{n-1}` with `d(b, a) = (∂b + f a, ∂a)`.
pub fn cone(f: &FilteredMap, shift: ConeShift) -> Result<FilteredComplex> {
    let len = f.target.complex().len().max(f.source.complex().len() + 1);
    let a = f.source.padded(len);
    let b = f.target.padded(len);
    let (ac, bc) = (a.complex(), b.complex());
    let s = shift.offset();
    let adim = |n: usize| n.checked_sub(1).map_or(0, |m| ac.dim(m));
    let dims: Vec<usize> = (0..len).map(|n| bc.dim(n) + adim(n)).collect();

    let mut boundaries = Vec::with_capacity(len.saturating_sub(1));
    for n in 1..len {
        let da = if n >= 2 {
            ac.boundary(n - 1)
        } else {
            Gf2Matrix::zeros(0, adim(n))
        };
        let fm = degree_matrix(&f.map, n - 1, ac, bc);
        boundaries.push(block(
            &bc.boundary(n),
            &fm,
            &Gf2Matrix::zeros(adim(n - 1), bc.dim(n)),
            &da,
        ));
    }
    let complex = ChainComplex::new(dims, boundaries)?;

    let lo = b.p_min().min(a.p_min() + s);
    let hi = b.p_max().max(a.p_max() + s);
    let levels = (0..len)
        .map(|n| {
            (lo..=hi)
                .map(|p| {
                    let fa = match n.checked_sub(1) {
                        Some(m) => a.level(m, p - s),
                        None => Subspace::zero(0),
                    };
                    direct_sum(&b.level(n, p), &fa)
                })
                .collect()
        })
        .collect();
    let mut fc = FilteredComplex::new(complex, lo, levels)?;

    if let (Some(ga), Some(gb)) = (a.action(), b.action()) {
        if ga.len() == gb.len() {
            let mats = (0..ga.len())
                .map(|g| {
                    (0..len)
                        .map(|n| {
                            let am = match n.checked_sub(1) {
                                Some(m) => ga[g][m].clone(),
                                None => Gf2Matrix::zeros(0, 0),
                            };
                            block_diag(&gb[g][n], &am)
                        })
                        .collect()
                })
                .collect();
            fc = fc.with_action(mats)?;
        }
    }
    Ok(fc)
}

/// The map of cones `cone(Ỹ→X̃) → cone(Y→X)` induced by a commutative square.
fn cone_map(
    top: &FilteredMap,
    left: &FilteredMap,
    right: &FilteredMap,
    bottom: &FilteredMap,
    shift: ConeShift,
) -> Result<FilteredMap> {
    let c1 = cone(top, shift)?;
    let c2 = cone(bottom, shift)?;
    let len = c1.complex().len().max(c2.complex().len());
    let (c1, c2) = (c1.padded(len), c2.padded(len));
    let maps = (0..len)
        .map(|n| {
            let pi = degree_matrix(&right.map, n, right.source.complex(), right.target.complex());
            let p = match n.checked_sub(1) {
                Some(m) => degree_matrix(&left.map, m, left.source.complex(), left.target.complex()),
                None => Gf2Matrix::zeros(0, 0),
            };
            block_diag(&pi, &p)
        })
        .collect();
    let map = ChainMap::new(c1.complex(), c2.complex(), maps)?;
    FilteredMap::new(c1, c2, map)
}

/// Zero-extends a matrix to the given shape (out-of-range degrees are empty).
fn pad_matrix(m: Gf2Matrix, rows: usize, cols: usize) -> Gf2Matrix {
    if m.rows() == rows && m.cols() == cols {
        return m;
    }
    let mut out = Gf2Matrix::zeros(rows, cols);
    for i in 0..m.rows().min(rows) {
        for j in m.row(i).ones().filter(|&j| j < cols) {
            out.set(i, j, true);
        }
    }
    out
}

/// The filtered simple complex of a cube: the cone of an arrow, or the cone
/// of the induced map between the cones of the two horizontal arrows.
pub fn simple_complex(d: &CubeDiagram, shift: ConeShift) -> Result<FilteredComplex> {
    match d {
        CubeDiagram::Arrow(f) => cone(f, shift),
        CubeDiagram::Square {
            top,
            left,
            right,
            bottom,
        } => cone(&cone_map(top, left, right, bottom, shift)?, shift),
    }
}

/// Whether `E^1` vanishes in every bidegree.
pub fn is_acyclic(fc: &FilteredComplex) -> bool {
    e1_dims(fc).iter().flatten().all(|&d| d == 0)
}

/// Compares `cone(Y → X)` with a model of the open complement through the
/// supplied comparison map.
pub fn check_additivity(
    inclusion: &FilteredMap,
    candidate: &FilteredComplex,
    comparison: Option<&ChainMap>,
    shift: ConeShift,
) -> Result<QuasiIsoReport> {
    let comparison =
        comparison.ok_or_else(|| Error::Input("additivity check needs a comparison map".into()))?;
    let c = cone(inclusion, shift)?;
    let len = c.complex().len().max(candidate.complex().len());
    let (c, cand) = (c.padded(len), candidate.padded(len));
    let maps = (0..len)
        .map(|n| {
            let m = comparison
                .degree(n)
                .cloned()
                .unwrap_or_else(|| Gf2Matrix::zeros(cand.complex().dim(n), c.complex().dim(n)));
            pad_matrix(m, cand.complex().dim(n), c.complex().dim(n))
        })
        .collect();
    let map = ChainMap::new(c.complex(), cand.complex(), maps)?;
    Ok(is_filtered_quasi_iso(&FilteredMap::new(c, cand, map)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtered::{canonical_filtration, spectral_sequence};

    fn interval() -> ChainComplex {
        ChainComplex::new(vec![2, 1], vec![Gf2Matrix::from_dense(&[&[1], &[1]])]).unwrap()
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        for shift in [ConeShift::Zero, ConeShift::One] {
            let fc = canonical_filtration(&interval());
            let c = cone(&FilteredMap::identity(&fc), shift).unwrap();
            assert!(c.complex().betti().iter().all(|&b| b == 0));
            assert_eq!(is_acyclic(&c), shift == ConeShift::Zero);
        }
    }

    #[test]
    fn cone_of_zero_source_is_target() {
        let b = canonical_filtration(&interval());
        let z = canonical_filtration(&ChainComplex::new(vec![0], vec![]).unwrap());
        let f = FilteredMap::new(z.clone(), b.clone(), ChainMap::zero(z.complex(), b.complex())).unwrap();
        let c = cone(&f, ConeShift::Zero).unwrap();
        assert_eq!(c.complex().dims()[..2], b.complex().dims()[..]);
        assert_eq!(
            spectral_sequence(&c).page(1).total(),
            spectral_sequence(&b).page(1).total()
        );
    }

    #[test]
    fn zero_complex_is_acyclic() {
        let z = FilteredComplex::trivial(ChainComplex::zero());
        assert!(is_acyclic(&z));
    }

    #[test]
    fn additivity_needs_comparison() {
        let fc = canonical_filtration(&interval());
        let r = check_additivity(&FilteredMap::identity(&fc), &fc, None, ConeShift::Zero);
        assert!(matches!(r, Err(Error::Input(_))));
    }
}
