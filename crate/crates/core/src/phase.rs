use num_complex::Complex64;
use std::f64::consts::TAU;

/// `e(x) = exp(2πi x)`.
pub fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

/// `e(num / den)` with the numerator reduced modulo `den` first, so the
/// angle stays in `[0, 2π)` regardless of the size of `num`.
pub fn e_ratio(num: i128, den: u64) -> Complex64 {
    let r = num.rem_euclid(den as i128) as f64;
    e(r / den as f64)
}

/// Representative of `x` modulo 1 in `[-1/2, 1/2)`.
pub fn wrap_unit(x: f64) -> f64 {
    x - (x + 0.5).floor()
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_int(x: f64) -> f64 {
    wrap_unit(x).abs()
}
