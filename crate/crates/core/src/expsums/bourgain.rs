use crate::arith::elementary::{divisors, gcd, mobius};
use crate::arith::Progression;
use crate::error::{Error, Result};
use serde::Serialize;

/// Result of the averaged Ramanujan-sum bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BourgainAverage {
    pub q_max: u64,
    pub m: u64,
    pub t: u32,
    pub progression: Progression,
    /// `[(y/M) Σ_{1 ≤ n ≤ M, n ≡ b (y)} (Σ_{q ≤ Q, (q,y)=1} |τ_q(n)|)^t]^{1/t}`.
    pub value: f64,
    pub warnings: Vec<String>,
}

/// `t`-th moment of `Σ_{q ≤ Q, (q,y)=1} |τ_q(n)|` over `n ≡ b (mod y)`,
/// `1 ≤ n ≤ M`, returned as an `L^t` norm.
///
/// With `y | M` and `Q = 1` the value is exactly 1. A warning is attached
/// when `M ≤ y·Q^t`, where the bound is not expected to hold.
pub fn bourgain_average(q_max: u64, m: u64, prog: &Progression, t: u32) -> Result<BourgainAverage> {
    if q_max == 0 {
        return Err(crate::error::invalid("Q", "must be at least 1"));
    }
    if m == 0 {
        return Err(crate::error::invalid("M", "must be positive"));
    }
    if t == 0 {
        return Err(crate::error::invalid("t", "must be at least 1"));
    }
    let y = prog.y();
    let mut warnings = Vec::new();
    let threshold = q_max
        .checked_pow(t)
        .and_then(|v| v.checked_mul(y))
        .ok_or(Error::Overflow("y·Q^t"))?;
    if m <= threshold {
        warnings.push(format!("M = {m} does not exceed y·Q^t = {threshold}"));
    }
    // τ_q(n) = Σ_{d | (q, n)} d·μ(q/d); keep the nonzero terms per modulus.
    let kernels: Vec<Vec<(u64, i64)>> = (1..=q_max)
        .filter(|&q| gcd(q, y) == 1)
        .map(|q| {
            divisors(q)
                .into_iter()
                .map(|d| (d, d as i64 * mobius(q / d)))
                .filter(|&(_, w)| w != 0)
                .collect()
        })
        .collect();
    let mut total = 0.0f64;
    let mut n = if prog.b() == 0 { y } else { prog.b() };
    while n <= m {
        let s: i64 = kernels
            .iter()
            .map(|ks| ks.iter().filter(|(d, _)| n % d == 0).map(|&(_, w)| w).sum::<i64>().abs())
            .sum();
        total += (s as f64).powi(t as i32);
        n += y;
    }
    Ok(BourgainAverage {
        q_max,
        m,
        t,
        progression: *prog,
        value: (y as f64 / m as f64 * total).powf(1.0 / t as f64),
        warnings,
    })
}
