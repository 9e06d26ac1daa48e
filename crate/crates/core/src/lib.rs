//! Exact computation of q-adic form rings and modules, the degree-zero
//! variation module of local cohomology along a filtration, and the grade
//! of form modules, with two independent exact cross-checks.

pub mod algebra;
pub mod error;
pub mod filtration;
pub mod graded;
pub mod groebner;
pub mod ideal;
pub mod lzero;
pub mod oracle;

pub use error::{Error, Result};
