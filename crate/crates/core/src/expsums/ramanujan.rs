use crate::arith::elementary::{divisors, gcd, mobius, reduced_residues};
use crate::phase::e_ratio;
use num_complex::Complex64;

/// `τ_q(x) = Σ_{a ∈ 𝔸_q} e(ax/q)` as a complex number, by direct summation.
pub fn ramanujan_sum_complex(q: u64, x: i64) -> Complex64 {
    assert!(q >= 1, "modulus must be positive");
    reduced_residues(q)
        .into_iter()
        .map(|a| e_ratio(a as i128 * x as i128, q))
        .sum()
}

/// Real part of the direct sum. The imaginary part cancels and the value is
/// an integer, both up to `1e-9 · q`.
pub fn ramanujan_sum(q: u64, x: i64) -> f64 {
    let z = ramanujan_sum_complex(q, x);
    debug_assert!(z.im.abs() <= 1e-9 * q as f64, "τ_{q}({x}) has imag {}", z.im);
    debug_assert!((z.re - z.re.round()).abs() <= 1e-9 * q as f64);
    z.re
}

/// `Σ_{d | (q, x)} d·μ(q/d)`, with `gcd(q, 0) = q`.
pub fn ramanujan_sum_closed(q: u64, x: i64) -> i64 {
    assert!(q >= 1, "modulus must be positive");
    let g = gcd(q, x.unsigned_abs());
    divisors(g)
        .into_iter()
        .map(|d| d as i64 * mobius(q / d))
        .sum()
}

/// `Σ_{d | r} τ_d(x)` from direct sums, rounded; equals `r` if `r | x`, else 0.
pub fn divisor_tau_check(r: u64, x: i64) -> i64 {
    assert!(r >= 1, "r must be positive");
    let s: f64 = divisors(r).into_iter().map(|d| ramanujan_sum(d, x)).sum();
    s.round() as i64
}

/// Closed-form `τ_q` tabulated on one period `x ∈ [0, q)`.
pub(crate) fn ramanujan_period(q: u64) -> Vec<i64> {
    (0..q as i64).map(|x| ramanujan_sum_closed(q, x)).collect()
}
