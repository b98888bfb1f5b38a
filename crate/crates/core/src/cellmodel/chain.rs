use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::Gf2Vector;

use super::{Complex, GroupAction};

/// A class in `C_k` over GF(2), stored as its set of `k`-cells.
///
/// A chain does not own its complex; cell indices refer to whichever complex
/// the caller pairs it with. Two chains are equal iff their supports are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    k: isize,
    support: Gf2Vector,
}

impl Chain {
    pub fn zero(complex: &Complex, k: isize) -> Self {
        let n = if k < 0 { 0 } else { complex.count(k as usize) };
        Self {
            k,
            support: Gf2Vector::zeros(n),
        }
    }

    pub fn from_vector(k: isize, support: Gf2Vector) -> Self {
        Self { k, support }
    }

    pub fn from_cells(complex: &Complex, k: usize, cells: impl IntoIterator<Item = usize>) -> Self {
        Self {
            k: k as isize,
            support: Gf2Vector::from_indices(complex.count(k), cells),
        }
    }

    /// Chain from simplices written as label lists; all must share one dimension.
    pub fn from_labels<S: AsRef<str>>(complex: &Complex, simplices: &[&[S]]) -> Result<Self> {
        let mut k = None;
        let mut cells = Vec::new();
        for s in simplices {
            let (d, i) = complex.find_labels(s).ok_or_else(|| {
                Error::Input(format!(
                    "simplex {{{}}} is not in the complex",
                    s.iter().map(|x| x.as_ref()).collect::<Vec<_>>().join(" ")
                ))
            })?;
            if *k.get_or_insert(d) != d {
                return Err(Error::Input("chain mixes simplices of different dimensions".into()));
            }
            cells.push(i);
        }
        let k = k.ok_or_else(|| Error::Input("empty simplex list has no dimension".into()))?;
        Ok(Self::from_cells(complex, k, cells))
    }

    #[inline]
    pub fn k(&self) -> isize {
        self.k
    }

    #[inline]
    pub fn support(&self) -> &Gf2Vector {
        &self.support
    }

    pub fn into_support(self) -> Gf2Vector {
        self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_zero()
    }

    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        self.support.ones()
    }

    pub fn len(&self) -> usize {
        self.support.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_zero()
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.k, other.k, "adding chains of different dimensions");
        Chain {
            k: self.k,
            support: &self.support + &other.support,
        }
    }

    /// Support names like `{1 2} {2 3}`, for reports.
    pub fn describe(&self, complex: &Complex) -> String {
        if self.k < 0 {
            return String::new();
        }
        self.cells()
            .map(|i| format!("{{{}}}", complex.simplex_name(self.k as usize, i)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain(k={}, cells={:?})", self.k, self.support.ones().collect::<Vec<_>>())
    }
}

/// A face-closed set of cells of a parent complex.
#[derive(Clone, PartialEq, Eq)]
pub struct ClosedSubcomplex {
    parent: Arc<Complex>,
    cells: Vec<Gf2Vector>,
}

impl ClosedSubcomplex {
    /// Validates face closure; `cells[k]` is a membership vector over `k`-cells.
    pub fn new(parent: Arc<Complex>, mut cells: Vec<Gf2Vector>) -> Result<Self> {
        let layers = parent.counts().len();
        if cells.len() > layers {
            return Err(Error::DimensionMismatch("subcomplex has more layers than its parent".into()));
        }
        cells.resize_with(layers, || Gf2Vector::zeros(0));
        for (k, layer) in cells.iter_mut().enumerate() {
            if layer.is_empty() && parent.count(k) > 0 {
                *layer = Gf2Vector::zeros(parent.count(k));
            }
            if layer.len() != parent.count(k) {
                return Err(Error::DimensionMismatch(format!(
                    "membership vector for dimension {k} has wrong length"
                )));
            }
        }
        for k in 1..layers {
            for i in cells[k].ones() {
                for f in parent.facet_indices(k, i) {
                    if !cells[k - 1].get(f) {
                        return Err(Error::Structural(format!(
                            "subcomplex contains {{{}}} but not its face {{{}}}",
                            parent.simplex_name(k, i),
                            parent.simplex_name(k - 1, f)
                        )));
                    }
                }
            }
        }
        Ok(Self { parent, cells })
    }

    pub fn empty(parent: Arc<Complex>) -> Self {
        let cells = parent.counts().iter().map(|&n| Gf2Vector::zeros(n)).collect();
        Self { parent, cells }
    }

    pub fn whole(parent: Arc<Complex>) -> Self {
        let cells = parent
            .counts()
            .iter()
            .map(|&n| Gf2Vector::from_indices(n, 0..n))
            .collect();
        Self { parent, cells }
    }

    /// Smallest subcomplex containing the given `(dimension, index)` cells.
    pub fn closure_of(parent: Arc<Complex>, generators: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut cells: Vec<Gf2Vector> = parent.counts().iter().map(|&n| Gf2Vector::zeros(n)).collect();
        let mut stack: Vec<(usize, usize)> = generators.into_iter().collect();
        while let Some((k, i)) = stack.pop() {
            if cells[k].get(i) {
                continue;
            }
            cells[k].set(i, true);
            for f in parent.facet_indices(k, i) {
                stack.push((k - 1, f));
            }
        }
        Self { parent, cells }
    }

    pub fn parent(&self) -> &Arc<Complex> {
        &self.parent
    }

    pub fn contains(&self, k: usize, i: usize) -> bool {
        self.cells.get(k).is_some_and(|l| l.get(i))
    }

    /// Membership vector over `k`-cells (all zero above the parent's dimension).
    pub fn layer(&self, k: usize) -> Gf2Vector {
        self.cells
            .get(k)
            .cloned()
            .unwrap_or_else(|| Gf2Vector::zeros(self.parent.count(k)))
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c: Vec<usize> = self.cells.iter().map(Gf2Vector::count_ones).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        c
    }

    pub fn is_empty(&self) -> bool {
        self.cells.iter().all(Gf2Vector::is_zero)
    }

    pub fn dim(&self) -> Option<usize> {
        self.counts().len().checked_sub(1)
    }

    pub fn intersection(&self, other: &ClosedSubcomplex) -> ClosedSubcomplex {
        ClosedSubcomplex {
            parent: self.parent.clone(),
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| a.and(b)).collect(),
        }
    }

    /// Whether every group element maps the subcomplex onto itself.
    pub fn is_invariant(&self, action: &GroupAction) -> bool {
        (0..action.order()).all(|g| {
            self.cells.iter().enumerate().all(|(k, layer)| {
                layer.ones().all(|i| layer.get(action.cell_image(g, k, i)))
            })
        })
    }
}

impl fmt::Debug for ClosedSubcomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClosedSubcomplex(counts={:?})", self.counts())
    }
}

/// Restriction to the open complement `X \ Y`: drops cells lying in `y`.
pub fn restrict_to_open(c: &Chain, y: &ClosedSubcomplex) -> Chain {
    if c.k() < 0 {
        return c.clone();
    }
    Chain::from_vector(c.k(), c.support().and_not(&y.layer(c.k() as usize)))
}

/// Restriction to the closed subcomplex `y`: keeps cells lying in `y`.
pub fn restrict_to_closed(c: &Chain, y: &ClosedSubcomplex) -> Chain {
    if c.k() < 0 {
        return c.clone();
    }
    Chain::from_vector(c.k(), c.support().and(&y.layer(c.k() as usize)))
}

/// Closure in `X` of a chain living on the open complement of `y`.
///
/// Classes only record top cells, so the support is unchanged; the call checks
/// that the chain really avoids `y`.
pub fn closure(c: &Chain, y: &ClosedSubcomplex) -> Result<Chain> {
    if c.k() >= 0 && !c.support().and(&y.layer(c.k() as usize)).is_zero() {
        return Err(Error::Precondition(
            "closure expects a chain supported on the open complement".into(),
        ));
    }
    Ok(c.clone())
}

/// Class of `A ∩ a3` for any closed representative `A` of `c`.
pub fn class_intersect(c: &Chain, a3: &ClosedSubcomplex) -> Chain {
    restrict_to_closed(c, a3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellmodel::shapes::hexagon;

    #[test]
    fn restriction_examples() {
        let x = Arc::new(hexagon());
        let cycle = Chain::from_cells(&x, 1, 0..6);
        let whole = ClosedSubcomplex::whole(x.clone());
        assert!(restrict_to_open(&cycle, &whole).is_zero());
        let empty = ClosedSubcomplex::empty(x.clone());
        assert_eq!(restrict_to_open(&cycle, &empty), cycle);
        let e12 = x.find_labels(&["1", "2"]).unwrap();
        let y = ClosedSubcomplex::closure_of(x.clone(), [e12]);
        let open = restrict_to_open(&cycle, &y);
        assert_eq!(open.len(), 5);
        assert_eq!(closure(&open, &y).unwrap(), open);
        assert!(closure(&cycle, &y).is_err());
    }

    #[test]
    fn class_intersect_examples() {
        let x = Arc::new(hexagon());
        let cycle = Chain::from_cells(&x, 1, 0..6);
        assert_eq!(class_intersect(&cycle, &ClosedSubcomplex::whole(x.clone())), cycle);
        assert!(class_intersect(&cycle, &ClosedSubcomplex::empty(x.clone())).is_zero());
        let half: Vec<_> = [["1", "2"], ["2", "3"], ["3", "4"]]
            .iter()
            .map(|e| x.find_labels(e).unwrap())
            .collect();
        let a3 = ClosedSubcomplex::closure_of(x.clone(), half.iter().copied());
        let got = class_intersect(&cycle, &a3);
        assert_eq!(got, Chain::from_cells(&x, 1, half.iter().map(|h| h.1)));
    }

    #[test]
    fn subcomplex_must_be_closed() {
        let x = Arc::new(hexagon());
        let mut cells = vec![Gf2Vector::zeros(6), Gf2Vector::zeros(6)];
        cells[1].set(0, true);
        assert!(matches!(
            ClosedSubcomplex::new(x, cells),
            Err(Error::Structural(_))
        ));
    }
}
