//! Fourier multipliers of the prime average and of its major-arc model.

pub mod arcs;
pub mod averages;
pub mod cutoff;
pub mod error_terms;
pub mod prime;

pub use arcs::{
    approximant_hat, approximant_points, approximant_profile, arc_profile, farey_points, l_hat, FareyMode,
};
pub use averages::{m_hat, m_hat_len, m_prog_hat, m_prog_hat_factored, mm_prime_integer, mm_prime_rhs};
pub use cutoff::{CutoffKind, CutoffSpec};
pub use error_terms::{approx_error_profile, approx_error_profile_capped, major_arc_error, near_zero_error, ApproxError, WindowError};
pub use prime::{a_hat, a_hat_direct_at, a_hat_grid, a_kernel, a_weights};
