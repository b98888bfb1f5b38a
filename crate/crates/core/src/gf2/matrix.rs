use std::fmt;

use super::{Gf2Vector, Subspace};
use crate::error::{Error, Result};

/// Dense matrix over GF(2) stored as packed rows.
///
/// Acting on vectors uses the column convention: `m.mul_vec(x)` has length
/// `rows` and requires `x.len() == cols`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vector>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows only, pivots strictly increasing.
    pub rows: Vec<Gf2Vector>,
    pub pivots: Vec<usize>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Gf2Vector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| Gf2Vector::unit(n, i)).collect(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
        }
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Gf2Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match row count");
            for i in c.ones() {
                m.data[i].set(j, true);
            }
        }
        m
    }

    /// Row-major 0/1 literal. Panics on ragged input.
    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| Gf2Vector::from_u8s(r)).collect())
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[Gf2Vector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn column(&self, j: usize) -> Gf2Vector {
        Gf2Vector::from_indices(self.rows, (0..self.rows).filter(|&i| self.data[i].get(j)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vector::is_zero)
    }

    pub fn mul_vec(&self, x: &Gf2Vector) -> Gf2Vector {
        assert_eq!(x.len(), self.cols, "vector length does not match column count");
        Gf2Vector::from_indices(self.rows, (0..self.rows).filter(|&i| self.data[i].dot(x)))
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Gf2Vector::zeros(rhs.cols);
                for k in row.ones() {
                    acc.xor_assign(&rhs.data[k]);
                }
                acc
            })
            .collect();
        Gf2Matrix {
            rows: self.rows,
            cols: rhs.cols,
            data,
        }
    }

    pub fn add(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Gf2Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.rows, rhs.rows, "row counts differ");
        Gf2Matrix {
            rows: self.rows,
            cols: self.cols + rhs.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.concat(b)).collect(),
        }
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, rhs.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Gf2Matrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            data,
        }
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero column.
    pub fn echelon(&self) -> Echelon {
        echelon_of(self.data.clone(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Some `x` with `self * x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &Gf2Vector) -> Result<Option<Gf2Vector>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has length {} but matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let augmented: Vec<Gf2Vector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = Gf2Vector::zeros(self.cols + 1);
                for j in r.ones() {
                    row.set(j, true);
                }
                row.set(self.cols, b.get(i));
                row
            })
            .collect();
        let ech = echelon_of(augmented, self.cols + 1);
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Subspace {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut x = Gf2Vector::unit(self.cols, f);
                for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                    if row.get(f) {
                        x.set(p, true);
                    }
                }
                x
            })
            .collect::<Vec<_>>();
        Subspace::span(self.cols, &vectors)
    }

    /// Span of the columns, as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, self.transpose().row_vectors())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::span(self.cols, &self.data)
    }
}

/// A factored system `M x = b` for repeated right-hand sides.
#[derive(Clone, Debug)]
pub struct Solver {
    cols: usize,
    pivots: Vec<usize>,
    /// Rows of `T` with `T M` in reduced echelon form; the first `pivots.len()`
    /// produce pivot values, the rest are consistency checks.
    transform: Vec<Gf2Vector>,
}

impl Solver {
    pub fn new(m: &Gf2Matrix) -> Self {
        let (rows, cols) = (m.rows, m.cols);
        let augmented = m
            .data
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&Gf2Vector::unit(rows, i)))
            .collect();
        let ech = echelon_of(augmented, cols + rows);
        let rank = ech.pivots.iter().take_while(|&&p| p < cols).count();
        Self {
            cols,
            pivots: ech.pivots[..rank].to_vec(),
            transform: ech.rows.iter().map(|r| r.slice(cols, rows)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// The solution with every free variable zero, or `None` if inconsistent.
    pub fn solve(&self, b: &Gf2Vector) -> Option<Gf2Vector> {
        let rank = self.pivots.len();
        if self.transform[rank..].iter().any(|t| t.dot(b)) {
            return None;
        }
        let mut x = Gf2Vector::zeros(self.cols);
        for (t, &p) in self.transform.iter().zip(&self.pivots) {
            if t.dot(b) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

pub(crate) fn echelon_of(mut rows: Vec<Gf2Vector>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(next, found);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    rows.truncate(next);
    Echelon { rows, pivots }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}
