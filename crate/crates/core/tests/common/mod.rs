//! Independent oracles: trial division, direct complex sums, and quadratic
//! convolutions. Nothing here calls into the sieve or the FFT paths.
#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::TAU;

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Prime factors with multiplicity by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            out.push(p);
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn naive_lambda(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let f = prime_factors(n);
    if f.iter().all(|&p| p == f[0]) {
        (f[0] as f64).ln()
    } else {
        0.0
    }
}

pub fn naive_mobius(n: u64) -> i64 {
    let f = prime_factors(n);
    if f.windows(2).any(|w| w[0] == w[1]) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn naive_totient(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

pub fn e(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * t)
}

/// `e(num/den)` with the numerator reduced first.
pub fn e_frac(num: i64, den: u64) -> Complex64 {
    e(num.rem_euclid(den as i64) as f64 / den as f64)
}

pub fn units(q: u64) -> Vec<u64> {
    if q == 1 {
        return vec![0];
    }
    (1..q).filter(|&a| gcd(a, q) == 1).collect()
}

/// `Σ_{a ∈ 𝔸_q} e(ax/q)`.
pub fn direct_tau(q: u64, x: i64) -> Complex64 {
    units(q).into_iter().map(|a| e_frac(a as i64 * x, q)).sum()
}

/// `(φ(y)/φ(ℓ)) Σ_{r ∈ 𝔸_ℓ, r ≡ b (y)} e(−ra/q)` by enumeration of `[0, ℓ)`.
pub fn direct_upsilon(a: i64, q: u64, y: u64, b: u64) -> Complex64 {
    let ell = q / gcd(q, y) * y;
    let phi = |n: u64| units(n).len() as f64;
    let s: Complex64 = (0..ell)
        .filter(|&r| gcd(r, ell) == 1 || ell == 1)
        .filter(|&r| r % y == b % y)
        .map(|r| e_frac(-(r as i64) * a * (ell / q) as i64, ell))
        .sum();
    s * (phi(y) / phi(ell))
}

/// `(φ(y)/N) Σ_{0 ≤ n < N, n ≡ b (y)} Λ(n) e(−nθ)` with trial-division `Λ`.
pub fn direct_a_hat(theta: f64, n: u64, y: u64, b: u64) -> Complex64 {
    (0..n)
        .filter(|&k| k % y == b)
        .map(|k| e(-(k as f64) * theta) * naive_lambda(k))
        .sum::<Complex64>()
        * (naive_totient(y) as f64 / n as f64)
}

/// `(A 1_F)(x) = (φ(y)/N) Σ_{n < N, n ≡ b (y)} Λ(n) 1_F(x − n)` on `ℤ_M`.
pub fn direct_average(set: &[i64], n: u64, y: u64, b: u64, m: usize) -> Vec<f64> {
    let mut ind = vec![0.0; m];
    for &s in set {
        ind[s.rem_euclid(m as i64) as usize] = 1.0;
    }
    let scale = naive_totient(y) as f64 / n as f64;
    let weights: Vec<(usize, f64)> = (0..n)
        .filter(|&k| k % y == b)
        .map(|k| (k as usize, naive_lambda(k) * scale))
        .filter(|&(_, w)| w != 0.0)
        .collect();
    (0..m)
        .map(|x| weights.iter().map(|&(k, w)| w * ind[(x + m - k % m) % m]).sum())
        .collect()
}

/// Cyclic convolution `(k ∗ f)(x) = Σ_j k(j) f(x − j)` in `O(M²)`.
pub fn brute_convolve(kernel: &[f64], f: &[f64]) -> Vec<f64> {
    let m = kernel.len();
    (0..m)
        .map(|x| (0..m).map(|j| kernel[j] * f[(x + m - j) % m]).sum())
        .collect()
}

/// `[(y/M) Σ_{1 ≤ n ≤ M, n ≡ b (y)} (Σ_{q ≤ Q, (q,y)=1} |τ_q(n)|)^t]^{1/t}`
/// with the Ramanujan sums taken as complex exponential sums.
pub fn brute_bourgain(q_max: u64, m: u64, y: u64, b: u64, t: i32) -> f64 {
    let qs: Vec<u64> = (1..=q_max).filter(|&q| gcd(q, y) == 1).collect();
    let total: f64 = (1..=m)
        .filter(|&n| n % y == b)
        .map(|n| qs.iter().map(|&q| direct_tau(q, n as i64).re.round().abs()).sum::<f64>().powi(t))
        .sum();
    (y as f64 / m as f64 * total).powf(1.0 / t as f64)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
