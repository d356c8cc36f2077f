//! Exact or tolerance-based linear algebra over a fixed rational structure.

mod exterior;
mod filtration;
mod matrix;
mod subspace;

pub use exterior::{wedge, wedge_derivation, wedge_filtration, wedge_indices, wedge_map};
pub use filtration::{Direction, Filtration};
pub use matrix::{row_reduce, LinearMap, Matrix};
pub use subspace::{quotient_map, quotient_section, Space, Subspace, DEFAULT_EPS};
