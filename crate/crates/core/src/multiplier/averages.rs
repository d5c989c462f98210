//! Normalized exponential averages over intervals and progressions.

use crate::arith::Progression;
use crate::error::{Error, Result};
use crate::phase::{e, wrap_unit};
use num_complex::Complex64;
use std::f64::consts::PI;

/// `Σ_{0 ≤ m < K} e(−mθ)` via the Dirichlet closed form.
pub fn geometric_sum(theta: f64, k: u64) -> Complex64 {
    if k == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let t = wrap_unit(theta);
    let s = (PI * t).sin();
    if s == 0.0 {
        return Complex64::new(k as f64, 0.0);
    }
    // The half-integer phase is reduced before multiplying by K to keep the
    // argument small.
    let num = (PI * wrap_unit(k as f64 * t / 2.0) * 2.0).sin();
    e(-wrap_unit((k - 1) as f64 * t / 2.0)) * (num / s)
}

/// Number of integers `m` with `0 ≤ m < L`.
pub fn count_below(len: f64) -> u64 {
    if len <= 0.0 {
        0
    } else {
        len.ceil() as u64
    }
}

/// `M̂_L(θ) = L⁻¹ Σ_{0 ≤ m < L} e(−mθ)` for real `L > 0`.
pub fn m_hat_len(theta: f64, len: f64) -> Complex64 {
    assert!(len > 0.0, "average length must be positive");
    geometric_sum(theta, count_below(len)) / len
}

/// `M̂_N(θ) = N⁻¹ Σ_{0 ≤ n < N} e(−nθ)`.
pub fn m_hat(theta: f64, n: u64) -> Complex64 {
    assert!(n >= 1, "N must be positive");
    m_hat_len(theta, n as f64)
}

/// `M̂_{N,y,b}(θ) = (y/N) Σ_{0 ≤ n < N, n ≡ b (y)} e(−nθ)`.
pub fn m_prog_hat(theta: f64, n: u64, prog: &Progression) -> Result<Complex64> {
    let (y, b) = (prog.y(), prog.b());
    if n < y {
        return Err(Error::Precondition(format!("N = {n} must be at least y = {y}")));
    }
    let k = count_below((n - b) as f64 / y as f64);
    Ok(e(-wrap_unit(b as f64 * theta)) * geometric_sum(y as f64 * theta, k) * (y as f64 / n as f64))
}

/// Right side of the factorization `e(−bθ)·((N−b)/N)·M̂_{(N−b)/y}(yθ)`.
pub fn m_prog_hat_factored(theta: f64, n: u64, prog: &Progression) -> Complex64 {
    let (y, b) = (prog.y() as f64, prog.b() as f64);
    let n = n as f64;
    e(-wrap_unit(b * theta)) * ((n - b) / n) * m_hat_len(y * theta, (n - b) / y)
}

/// The integer in `[(N−b)/y, N/y)`, if any.
pub fn mm_prime_integer(n: u64, prog: &Progression) -> Option<u64> {
    let (y, b) = (prog.y(), prog.b());
    // m ≥ (N−b)/y ⇔ m·y ≥ N−b, and m < N/y ⇔ m·y < N.
    let m = (n - b).div_ceil(y);
    (m * y < n).then_some(m)
}

/// `M̂_{(N−b)/y}(θ)` rebuilt from `M̂_{N/y}(θ)` by the two-branch relation.
pub fn mm_prime_rhs(theta: f64, n: u64, prog: &Progression) -> Complex64 {
    let (y, b) = (prog.y() as f64, prog.b() as f64);
    let nf = n as f64;
    let base = m_hat_len(theta, nf / y) * (nf / (nf - b));
    match mm_prime_integer(n, prog) {
        None => base,
        Some(n0) => base - e(-wrap_unit(n0 as f64 * theta)) * (y / (nf - b)),
    }
}
