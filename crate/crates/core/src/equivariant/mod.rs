//! Filtration data on chains with a group action and the Smith-type
//! sequences built from it.

mod compare;
mod data;
mod decompose;
mod smith;

pub use compare::{
    free_part_image, transfer_filtration, quotient_comparison, FreePartRow, QuotientComparison,
    QuotientModel, QuotientRow,
};
pub use data::{FiltrationData, FiltrationReport};
pub use decompose::{decompose_invariant_chain, Decomposer};
pub use smith::{
    verify_smith_exactness, verify_smith_exactness_with, FixedFiltration, SmithDegree, SmithReport,
    TFiltration,
};
