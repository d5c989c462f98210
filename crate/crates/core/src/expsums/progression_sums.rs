//! Ramanujan sums restricted to a residue class, and the progression form of
//! Cohen's identity.

use crate::arith::elementary::{gcd, mobius, mod_inverse, reduced_residues};
use crate::error::{Error, Result};
use crate::expsums::ramanujan::{ramanujan_sum_closed, ramanujan_sum_complex};
use crate::phase::e_ratio;
use num_complex::Complex64;

/// Units `r ∈ 𝔸_q` with `r ≡ b (mod g)`.
pub(crate) fn restricted_units(q: u64, g: u64, b: i64) -> impl Iterator<Item = u64> {
    let b = b.rem_euclid(g as i64) as u64;
    reduced_residues(q).into_iter().filter(move |r| r % g == b)
}

fn check_coprime(name: &str, v: i64, m: u64) -> Result<()> {
    if gcd(v.unsigned_abs() % m, m) != 1 {
        return Err(Error::Precondition(format!("gcd({name} = {v}, {m}) must be 1")));
    }
    Ok(())
}

/// `Σ_{r ∈ 𝔸_q, r ≡ b (g)} e(ra/q)` with `g = gcd(q, y)`, by direct summation.
pub fn progression_ramanujan_direct(q: u64, y: u64, b: i64, a: i64) -> Result<Complex64> {
    let g = gcd(q, y);
    check_coprime("a", a, q)?;
    check_coprime("b", b, g)?;
    Ok(restricted_units(q, g, b)
        .map(|r| e_ratio(r as i128 * a as i128, q))
        .sum())
}

/// Closed form of the restricted sum:
///
/// * `0` when `1 < g < q` and `gcd(g, q/g) > 1`;
/// * `μ(q/g)·e(abt/g)` when `g < q` and `gcd(g, q/g) = 1`, where
///   `1 − g·ḡ = (q/g)·t` and `ḡ` inverts `g` modulo `q/g`;
/// * `e(ab/q)` when `g = q`.
pub fn progression_ramanujan_closed(q: u64, y: u64, b: i64, a: i64) -> Result<Complex64> {
    let g = gcd(q, y);
    check_coprime("a", a, q)?;
    check_coprime("b", b, g)?;
    Ok(closed_phase(q, g, b, a, 1))
}

/// Shared evaluation of the three-case formula; `sign` is +1 for the restricted-sum
/// phase `e(ra/q)` and −1 for the conjugated Gauss-sum convention.
pub(crate) fn closed_phase(q: u64, g: u64, b: i64, a: i64, sign: i128) -> Complex64 {
    if g == q {
        return e_ratio(sign * a as i128 * b as i128, q);
    }
    let m = q / g;
    if gcd(g, m) > 1 {
        return Complex64::new(0.0, 0.0);
    }
    let t = cofactor_t(g, m);
    let mu = mobius(m) as f64;
    e_ratio(sign * a as i128 * b as i128 * t as i128, g) * mu
}

/// `t` with `1 − g·ḡ = m·t`, `ḡ = g⁻¹ mod m`.
pub(crate) fn cofactor_t(g: u64, m: u64) -> i64 {
    let gbar = mod_inverse(g % m, m).expect("g is a unit modulo q/g") as i128;
    let num = 1 - g as i128 * gbar;
    debug_assert_eq!(num % m as i128, 0);
    (num / m as i128) as i64
}

/// Both sides of the progression Cohen identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CohenCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
}

impl CohenCheck {
    pub fn abs_err(&self) -> f64 {
        (self.lhs - self.rhs).norm()
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.abs_err() <= tol
    }
}

/// `lhs = Σ_{t ∈ 𝔸_q, t ≡ b (g)} τ_q(x + t)` (direct sums) against
/// `rhs = μ(q/g)·τ_{q/g}(x)·τ_g(x + b)`, or 0 when `gcd(g, q/g) > 1`.
pub fn cohen_progression_check(q: u64, y: u64, b: i64, x: i64) -> Result<CohenCheck> {
    let g = gcd(q, y);
    check_coprime("b", b, g)?;
    let lhs = restricted_units(q, g, b)
        .map(|t| ramanujan_sum_complex(q, x + t as i64))
        .sum();
    let m = q / g;
    let rhs = if gcd(g, m) > 1 {
        0.0
    } else {
        (mobius(m) * ramanujan_sum_closed(m, x) * ramanujan_sum_closed(g, x + b)) as f64
    };
    Ok(CohenCheck {
        lhs,
        rhs: Complex64::new(rhs, 0.0),
    })
}
