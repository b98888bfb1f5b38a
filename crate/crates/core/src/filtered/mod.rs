//! Filtered chain complexes over GF(2), their spectral sequences, filtered
//! quasi-isomorphisms and simple complexes of small cubical diagrams.

pub mod cellular;
mod chain_complex;
mod cube;
mod filtration;
mod maps;
mod spectral;

pub use chain_complex::{ChainComplex, ChainMap};
pub use cube::{check_additivity, cone, is_acyclic, simple_complex, ConeShift, CubeDiagram};
pub use filtration::{canonical_filtration, canonical_filtration_shifted, FilteredComplex};
pub use maps::{e1_dims, is_filtered_quasi_iso, FilteredMap, QuasiIsoReport};
pub use spectral::{spectral_sequence, Page, SpectralSequence};
