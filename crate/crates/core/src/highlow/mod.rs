//! High/Low split of the major-arc approximant by Ramanujan height.

pub mod config;
pub mod kernels;
pub mod multifrequency;
pub mod ratios;

pub use config::DecompositionConfig;
pub use kernels::{
    hi_hat_profile, hi_points, lo_hat_profile, lo_kernel_closed, lo_kernel_discrepancy, lo_kernel_spectral,
    lo_points, phi_kernel, phi_profile, Kernel,
};
pub use multifrequency::{multifrequency_ratio, multifrequency_sweep, MultifrequencyRow};
pub use ratios::{hi_l2_ratio, lo_linf_ratio, maximal_ratios, MaximalRatios};
