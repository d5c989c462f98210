//! Exact-integer backbone: sieved arithmetic functions, progressions and
//! Chebyshev sums.

pub mod chebyshev;
pub mod elementary;
mod progression;
mod tables;

pub use chebyshev::{SwReport, SwRow};
pub use elementary::reduced_residues;
pub use progression::Progression;
pub use tables::{ArithTables, DEFAULT_MEMORY_CAP};
