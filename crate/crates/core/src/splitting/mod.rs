//! Splitting a closed pseudomanifold with an involution into a fundamental
//! domain and its image, glued along an invariant codimension-one interface.

mod problem;
mod search;
mod verify;

pub use problem::SplitProblem;
pub use search::{find_split, find_split_with, SearchMethod, SplitOptions, SplitResult, MAX_EXHAUSTIVE_ORBITS};
pub use verify::{verify_split, Certificate, Check, CONDITIONS};
