//! Ramanujan sums, their progression-restricted variants, and the Gauss sum
//! `Υ` attached to a progression.

pub mod bourgain;
pub mod gauss;
pub mod progression_sums;
pub mod ramanujan;
pub mod verify;

pub use bourgain::{bourgain_average, BourgainAverage};
pub use gauss::{
    count_height_class, farey_points_for, gauss_upsilon_closed, gauss_upsilon_direct, height,
    FareyPoint, HeightClassCount,
};
pub use progression_sums::{
    cohen_progression_check, progression_ramanujan_closed, progression_ramanujan_direct, CohenCheck,
};
pub use ramanujan::{divisor_tau_check, ramanujan_sum, ramanujan_sum_closed, ramanujan_sum_complex};
