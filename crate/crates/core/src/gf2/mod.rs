//! Bit-packed linear algebra over GF(2).
//!
//! Everything rank-like in the crate (homology, spectral sequence pages,
//! exactness checks, the decomposition solver) reduces to the three types
//! here. Elimination is plain Gauss-Jordan with word-level XOR and pivots
//! chosen as the first nonzero entry in each column.

mod matrix;
mod subspace;
mod vector;

pub use matrix::{Echelon, Gf2Matrix, Solver};
pub use subspace::{Elements, Subspace};
pub use vector::{Gf2Vector, Ones};
