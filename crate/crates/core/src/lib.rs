//! Mixed Hodge structures on finite-dimensional spaces: Deligne splittings,
//! biextension heights, monodromy weight filtrations, nilpotent orbits and
//! the genus-3 degeneration models.

pub mod biextension;
pub mod error;
pub mod genus3;
pub mod linalg;
pub mod mhs;
pub mod nilpotent;
pub mod orbit;
pub mod samples;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use scalar::{Gauss, Scalar};
