//! Fixtures shared by the benchmarks under `benches/`.

use equichain::gf2::{Gf2Matrix, Gf2Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A dense random matrix, the same for a given seed on every platform.
pub fn random_matrix(seed: u64, rows: usize, cols: usize) -> Gf2Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = (0..rows)
        .map(|_| Gf2Vector::from_bools(&(0..cols).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
        .collect();
    Gf2Matrix::from_rows(cols, rows)
}
