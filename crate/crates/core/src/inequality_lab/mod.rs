//! Desk-scale scanners for the improving and maximal inequalities.

pub mod families;
pub mod kernel;
pub mod scan;

pub use families::{default_hi_families, default_improving_families, FamilySpec};
pub use kernel::{dual_ratio, improving_ratio, maximal_apply, AKernel, DualRatio};
pub use scan::{improving_scan, maximal_scan, ImprovingConfig, MaximalConfig, ScanReport, ScanRow, SplitConfig};
