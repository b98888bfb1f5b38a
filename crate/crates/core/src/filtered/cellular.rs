//! Chain complexes and chain maps coming from simplicial data.

use crate::cellmodel::{CellularMap, ClosedSubcomplex, Complex, PullbackSquare};
use crate::error::Result;
use crate::gf2::Gf2Matrix;

use super::{canonical_filtration, ChainComplex, ChainMap, ConeShift, CubeDiagram, FilteredComplex, FilteredMap};

/// Rows `rows` and columns `cols` of `m`.
fn select(m: &Gf2Matrix, rows: &[usize], cols: &[usize]) -> Gf2Matrix {
    let mut out = Gf2Matrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            if m.get(r, c) {
                out.set(i, j, true);
            }
        }
    }
    out
}

fn complex_on(x: &Complex, kept: &[Vec<usize>]) -> ChainComplex {
    let dims = kept.iter().map(Vec::len).collect();
    let boundaries = (1..kept.len())
        .map(|k| select(&x.boundary_matrix(k), &kept[k - 1], &kept[k]))
        .collect();
    ChainComplex::new(dims, boundaries).expect("restricted boundary squares to zero")
}

/// Cells of `y` per dimension, over all dimensions of the parent.
pub fn cells_in(y: &ClosedSubcomplex) -> Vec<Vec<usize>> {
    let x = y.parent();
    (0..x.counts().len()).map(|k| y.layer(k).ones().collect()).collect()
}

/// Cells of the parent outside `y`.
pub fn cells_outside(y: &ClosedSubcomplex) -> Vec<Vec<usize>> {
    let x = y.parent();
    (0..x.counts().len())
        .map(|k| (0..x.count(k)).filter(|&i| !y.contains(k, i)).collect())
        .collect()
}

/// `C_*(Y)` in the basis of cells of `y`.
pub fn subcomplex_chain_complex(y: &ClosedSubcomplex) -> ChainComplex {
    complex_on(y.parent(), &cells_in(y))
}

/// Chains of the open complement `X ∖ Y`: the quotient `C_*(X) / C_*(Y)`.
pub fn open_complement_complex(y: &ClosedSubcomplex) -> ChainComplex {
    complex_on(y.parent(), &cells_outside(y))
}

/// `C_*(Y) → C_*(X)`.
pub fn inclusion_chain_map(y: &ClosedSubcomplex) -> ChainMap {
    let x = y.parent();
    let cells = cells_in(y);
    let maps = cells
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut m = Gf2Matrix::zeros(x.count(k), c.len());
            for (j, &i) in c.iter().enumerate() {
                m.set(i, j, true);
            }
            m
        })
        .collect();
    ChainMap::new(&subcomplex_chain_complex(y), &x.chain_complex(), maps).expect("inclusion is a chain map")
}

/// `C_*(X) → C_*(X ∖ Y)`, dropping cells of `y`.
pub fn restriction_chain_map(y: &ClosedSubcomplex) -> ChainMap {
    let x = y.parent();
    let cells = cells_outside(y);
    let maps = cells
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut m = Gf2Matrix::zeros(c.len(), x.count(k));
            for (j, &i) in c.iter().enumerate() {
                m.set(j, i, true);
            }
            m
        })
        .collect();
    ChainMap::new(&x.chain_complex(), &open_complement_complex(y), maps).expect("restriction is a chain map")
}

/// `f_*` as a chain map of simplicial chain complexes.
pub fn cellular_chain_map(f: &CellularMap) -> ChainMap {
    let len = f.source().counts().len().max(f.target().counts().len());
    let maps = (0..len).map(|k| f.matrix(k)).collect();
    ChainMap::new(&f.source().chain_complex(), &f.target().chain_complex(), maps).expect("pushforward is a chain map")
}

/// `f_*` restricted to subcomplexes `a ⊆ source`, `b ⊆ target` with `f(a) ⊆ b`.
pub fn restricted_chain_map(f: &CellularMap, a: &ClosedSubcomplex, b: &ClosedSubcomplex) -> Result<ChainMap> {
    let (ca, cb) = (cells_in(a), cells_in(b));
    let len = ca.len().max(cb.len());
    let maps = (0..len)
        .map(|k| {
            let empty = Vec::new();
            select(&f.matrix(k), cb.get(k).unwrap_or(&empty), ca.get(k).unwrap_or(&empty))
        })
        .collect();
    ChainMap::new(&subcomplex_chain_complex(a), &subcomplex_chain_complex(b), maps)
}

/// The square `Ỹ → X̃, Ỹ → Y, X̃ → X, Y → X` of a pullback, every corner
/// carrying its canonical filtration.
pub fn blowup_square(sq: &PullbackSquare) -> Result<CubeDiagram> {
    let pi = sq.pi();
    let (x_tilde, x) = (pi.source().chain_complex(), pi.target().chain_complex());
    let (yt, y) = (subcomplex_chain_complex(sq.y_tilde()), subcomplex_chain_complex(sq.y()));
    let f = |c: &ChainComplex| canonical_filtration(c);
    let top = FilteredMap::new(f(&yt), f(&x_tilde), inclusion_chain_map(sq.y_tilde()))?;
    let left = FilteredMap::new(f(&yt), f(&y), restricted_chain_map(pi, sq.y_tilde(), sq.y())?)?;
    let right = FilteredMap::new(f(&x_tilde), f(&x), cellular_chain_map(pi))?;
    let bottom = FilteredMap::new(f(&y), f(&x), inclusion_chain_map(sq.y()))?;
    CubeDiagram::square(top, left, right, bottom)
}

/// `cone(Y → X)` against `X ∖ Y` with canonical filtrations; the comparison is
/// `(x, y) ↦ x` restricted to the open complement.
pub fn additivity_data(y: &ClosedSubcomplex) -> Result<(FilteredMap, FilteredComplex, ChainMap)> {
    let x = y.parent().chain_complex();
    let yc = subcomplex_chain_complex(y);
    let inc = FilteredMap::new(canonical_filtration(&yc), canonical_filtration(&x), inclusion_chain_map(y))?;
    let open = open_complement_complex(y);
    let restrict = restriction_chain_map(y);
    let len = x.len().max(yc.len() + 1);
    let maps = (0..len)
        .map(|n| {
            let r = restrict
                .degree(n)
                .cloned()
                .unwrap_or_else(|| Gf2Matrix::zeros(open.dim(n), x.dim(n)));
            let ydim = n.checked_sub(1).map_or(0, |m| yc.dim(m));
            r.hstack(&Gf2Matrix::zeros(open.dim(n), ydim))
        })
        .collect();
    Ok((inc, canonical_filtration(&open), ChainMap::from_matrices(maps)))
}

/// Convenience: the additivity verdict for a closed subcomplex.
pub fn additivity_for(y: &ClosedSubcomplex, shift: ConeShift) -> Result<super::QuasiIsoReport> {
    let (inc, open, cmp) = additivity_data(y)?;
    super::check_additivity(&inc, &open, Some(&cmp), shift)
}
