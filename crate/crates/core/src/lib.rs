//! Circle-method laboratory for averages of the von Mangoldt function along
//! arithmetic progressions.

pub mod arith;
pub mod error;
pub mod expsums;
pub mod fixtures;
pub mod highlow;
pub mod inequality_lab;
pub mod multiplier;
pub mod phase;
pub mod stats;
pub mod transform;

pub use arith::{ArithTables, Progression};
pub use error::{Error, Result};
