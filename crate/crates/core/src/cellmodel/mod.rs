//! Finite simplicial models: complexes, chains with closed supports, group
//! actions, cellular maps and the operations between them.

mod action;
mod chain;
mod complex;
mod map;
mod quotient;
pub mod shapes;
mod subdivide;

pub use action::{GroupAction, MAX_GROUP_ORDER};
pub use chain::{class_intersect, closure, restrict_to_closed, restrict_to_open, Chain, ClosedSubcomplex};
pub use complex::{Complex, ComplexReport, Simplex};
pub use map::{CellularMap, PullbackSquare};
pub use quotient::{quotient_complex, Quotient, MAX_QUOTIENT_SUBDIVISIONS};
pub use subdivide::{barycentric_subdivide, Subdivision};
