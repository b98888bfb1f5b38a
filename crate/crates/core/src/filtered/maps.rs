use crate::error::{Error, Result};
use crate::gf2::Subspace;

use super::{ChainMap, FilteredComplex};

/// A chain map between filtered complexes that preserves the filtrations.
#[derive(Clone, Debug)]
pub struct FilteredMap {
    pub source: FilteredComplex,
    pub target: FilteredComplex,
    pub map: ChainMap,
}

impl FilteredMap {
    /// Fails with a precondition error if `F_p` is not carried into `F_p`.
    pub fn new(source: FilteredComplex, target: FilteredComplex, map: ChainMap) -> Result<Self> {
        let len = source.complex().len().max(target.complex().len());
        let (lo, hi) = (
            source.p_min().min(target.p_min()),
            source.p_max().max(target.p_max()),
        );
        for n in 0..len {
            let Some(f) = map.degree(n) else { continue };
            for p in lo..=hi {
                let img = source.level(n, p).image_under(f)?;
                if !img.is_subspace_of(&target.level(n, p)) {
                    return Err(Error::Precondition(format!(
                        "map does not preserve F_{p} in degree {n}"
                    )));
                }
            }
        }
        if let (Some(a), Some(b)) = (source.action(), target.action()) {
            if a.len() != b.len() {
                return Err(Error::Precondition("actions have different orders".into()));
            }
            for g in 0..a.len() {
                for n in 0..len {
                    let (Some(f), Some(ga), Some(gb)) = (map.degree(n), a[g].get(n), b[g].get(n)) else {
                        continue;
                    };
                    if f.mul(ga) != gb.mul(f) {
                        return Err(Error::Precondition(format!(
                            "map is not equivariant for element {g} in degree {n}"
                        )));
                    }
                }
            }
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(fc: &FilteredComplex) -> Self {
        Self {
            source: fc.clone(),
            target: fc.clone(),
            map: ChainMap::identity(fc.complex()),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FilteredMap) -> Result<FilteredMap> {
        FilteredMap::new(self.source.clone(), next.target.clone(), self.map.then(&next.map))
    }
}

/// Outcome of comparing two spectral sequences at `E^1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIsoReport {
    pub is_quasi_iso: bool,
    /// First `(p, q)` where the induced map on `E^1` is not bijective.
    pub failing: Option<(i32, i32)>,
}

/// `E^1_p(n) = Z^1_p / (F_{p-1} + F_p ∩ ∂F_p)` as a pair (cycles, denominator).
fn e1_pair(fc: &FilteredComplex, p: i32, n: usize) -> (Subspace, Subspace) {
    let c = fc.complex();
    let fp = fc.level(n, p);
    let z = if n == 0 {
        fp.clone()
    } else {
        let pre = Subspace::preimage(&c.boundary(n), &fc.level(n - 1, p - 1)).expect("shapes");
        fp.intersection(&pre).expect("same ambient")
    };
    let mut den = fc.level(n, p - 1);
    if n + 1 < c.len() {
        let bd = fc.level(n + 1, p).image_under(&c.boundary(n + 1)).expect("shapes");
        den = den.sum(&fp.intersection(&bd).expect("same ambient")).expect("same ambient");
    }
    (z, den)
}

/// `dim E^1_p(n)` indexed `[n][p - p_min]`, without the later pages.
pub fn e1_dims(fc: &FilteredComplex) -> Vec<Vec<usize>> {
    (0..fc.complex().len())
        .map(|n| {
            (fc.p_min()..=fc.p_max())
                .map(|p| {
                    let (z, d) = e1_pair(fc, p, n);
                    z.dim() - d.dim()
                })
                .collect()
        })
        .collect()
}

/// Whether the induced maps on every `E^1_{p,q}` are isomorphisms.
pub fn is_filtered_quasi_iso(f: &FilteredMap) -> QuasiIsoReport {
    let len = f.source.complex().len().max(f.target.complex().len());
    let lo = f.source.p_min().min(f.target.p_min());
    let hi = f.source.p_max().max(f.target.p_max());
    for n in 0..len {
        for p in lo..=hi {
            let (zs, ds) = e1_pair(&f.source, p, n);
            let (zt, dt) = e1_pair(&f.target, p, n);
            let dim_s = zs.dim() - ds.dim();
            let dim_t = zt.dim() - dt.dim();
            let ok = dim_s == dim_t && {
                let reps = zs.complement_basis(&ds).expect("same ambient");
                let imgs: Vec<_> = reps
                    .iter()
                    .map(|v| f.map.apply(n, v, f.target.complex().dim(n)))
                    .collect();
                let span = Subspace::span(dt.ambient(), &imgs).sum(&dt).expect("same ambient");
                span.dim() - dt.dim() == dim_t
            };
            if !ok {
                return QuasiIsoReport {
                    is_quasi_iso: false,
                    failing: Some((p, n as i32 - p)),
                };
            }
        }
    }
    QuasiIsoReport {
        is_quasi_iso: true,
        failing: None,
    }
}
