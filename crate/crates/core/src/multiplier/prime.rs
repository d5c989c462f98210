//! The prime multiplier `Â_{N,y,b}` and its kernel.

use crate::arith::{ArithTables, Progression};
use crate::error::{Error, Result};
use crate::phase::{e, wrap_unit};
use crate::transform::{CyclicSignal, Dft, ProfileMeta, SpectralProfile};
use num_complex::Complex64;
use rayon::prelude::*;

/// `(n, φ(y)/N · Λ(n))` for `n < N`, `n ≡ b (mod y)`, `Λ(n) > 0`.
pub fn a_weights(tables: &ArithTables, n: u64, prog: &Progression) -> Result<Vec<(u64, f64)>> {
    if n == 0 {
        return Err(crate::error::invalid("N", "must be positive"));
    }
    tables.check_range("N - 1", n - 1)?;
    let scale = tables.totient(prog.y()) as f64 / n as f64;
    Ok(prog
        .members_below(n)
        .filter_map(|m| {
            let l = tables.lambda(m);
            (l > 0.0).then_some((m, scale * l))
        })
        .collect())
}

/// `Â_{N,y,b}(θ) = φ(y)/N · Σ_{n < N, n ≡ b (y)} Λ(n) e(−nθ)`, summed directly.
pub fn a_hat(tables: &ArithTables, theta: f64, n: u64, prog: &Progression) -> Result<Complex64> {
    Ok(a_weights(tables, n, prog)?
        .into_iter()
        .map(|(m, w)| e(-wrap_unit(m as f64 * wrap_unit(theta))) * w)
        .sum())
}

/// Physical-space kernel of `A_{N,y,b}` on `ℤ_M`. Terms with `n ≥ M` fold
/// back modulo `M`, which keeps the transform exact at `ξ = k/M`.
pub fn a_kernel(tables: &ArithTables, n: u64, prog: &Progression, m: usize) -> Result<CyclicSignal> {
    if m == 0 {
        return Err(Error::Empty("grid"));
    }
    let mut k = CyclicSignal::zeros(m);
    for (x, w) in a_weights(tables, n, prog)? {
        k.values_mut()[(x % m as u64) as usize] += w;
    }
    Ok(k)
}

/// `Â_{N,y,b}(k/M)` for every `k`, through one length-`M` transform.
pub fn a_hat_grid(tables: &ArithTables, n: u64, prog: &Progression, m: usize) -> Result<SpectralProfile> {
    let kernel = a_kernel(tables, n, prog, m)?;
    let meta = ProfileMeta { n, y: prog.y(), b: prog.b() };
    Ok(SpectralProfile::of_kernel(&kernel, &Dft::new(m), meta))
}

/// `Â` at selected grid points by direct summation, for cross-checking the
/// batch path.
pub fn a_hat_direct_at(
    tables: &ArithTables,
    n: u64,
    prog: &Progression,
    m: usize,
    ks: &[usize],
) -> Result<Vec<Complex64>> {
    let w = a_weights(tables, n, prog)?;
    Ok(ks
        .par_iter()
        .map(|&k| {
            w.iter()
                .map(|&(x, wt)| crate::phase::e_ratio(-((x as i128) * k as i128), m as u64) * wt)
                .sum()
        })
        .collect())
}
