//! Low/High profiles and the physical-space Low kernel.

use crate::arith::elementary::{gcd, mobius, totient};
use crate::error::{invalid, Result};
use crate::expsums::ramanujan_sum_closed;
use crate::expsums::FareyPoint;
use crate::highlow::config::DecompositionConfig;
use crate::multiplier::{approximant_points, arc_profile, farey_points, m_hat_len, FareyMode};
use crate::phase::wrap_unit;
use crate::transform::{centered, CyclicSignal, Dft, ProfileMeta, SpectralProfile};
use num_complex::Complex64;
use serde::Serialize;

/// Points with `0 < h_y(q) < Q`.
pub fn lo_points(cfg: &DecompositionConfig) -> Vec<FareyPoint> {
    if cfg.q <= 1 {
        return Vec::new();
    }
    farey_points(cfg.q - 1, cfg.prog, FareyMode::Height)
}

/// Points with `q < q_cut` and `h_y(q) ≥ Q`.
pub fn hi_points(cfg: &DecompositionConfig) -> Vec<FareyPoint> {
    approximant_points(cfg.q_cut, cfg.prog)
        .into_iter()
        .filter(|p| p.height() >= cfg.q)
        .collect()
}

pub fn lo_hat_profile(cfg: &DecompositionConfig) -> Result<SpectralProfile> {
    cfg.validate()?;
    arc_profile(&lo_points(cfg), cfg.n, &cfg.prog, &cfg.cutoff, cfg.m)
}

pub fn hi_hat_profile(cfg: &DecompositionConfig) -> Result<SpectralProfile> {
    cfg.validate()?;
    arc_profile(&hi_points(cfg), cfg.n, &cfg.prog, &cfg.cutoff, cfg.m)
}

/// A real kernel recovered from an inverse transform.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Kernel {
    pub signal: CyclicSignal,
    /// Largest imaginary part discarded by the inverse transform.
    pub max_imag: f64,
    pub warnings: Vec<String>,
}

/// `Φ̂_{N,q}(ξ) = M̂_{N/ℓ}(ℓξ)·η(ℓ²ξ)` on the grid, `ℓ = lcm(y, q)`.
pub fn phi_profile(cfg: &DecompositionConfig, q: u64) -> Result<SpectralProfile> {
    let ell = crate::arith::elementary::lcm(cfg.prog.y(), q);
    let ell2 = ell.checked_mul(ell).ok_or(crate::error::Error::Overflow("ℓ²"))?;
    if ell2 as f64 > cfg.m as f64 / 4.0 {
        return Err(invalid("q", format!("ℓ² = {ell2} exceeds M/4 = {}", cfg.m / 4)));
    }
    let (m, ellf, len) = (cfg.m, ell as f64, cfg.n as f64 / ell as f64);
    let values = (0..m)
        .map(|k| {
            let t = wrap_unit(k as f64 / m as f64);
            let eta = cfg.cutoff.eval(ellf * ellf * t);
            if eta == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                m_hat_len(ellf * t, len) * eta
            }
        })
        .collect();
    Ok(SpectralProfile::new(values, ProfileMeta { n: cfg.n, y: cfg.prog.y(), b: 0 }))
}

/// Inverse transform of [`phi_profile`].
pub fn phi_kernel(cfg: &DecompositionConfig, q: u64, dft: &Dft) -> Result<Kernel> {
    let prof = phi_profile(cfg, q)?;
    let ell = crate::arith::elementary::lcm(cfg.prog.y(), q);
    let mut warnings = Vec::new();
    if (ell * ell) as f64 > (cfg.m as f64).sqrt() {
        warnings.push(format!("ℓ² = {} exceeds √M = {:.1}", ell * ell, (cfg.m as f64).sqrt()));
    }
    let (signal, max_imag) = prof.to_signal(dft);
    Ok(Kernel { signal, max_imag, warnings })
}

/// Inverse transform of the Low profile.
pub fn lo_kernel_spectral(cfg: &DecompositionConfig, dft: &Dft) -> Result<Kernel> {
    let warnings = cfg.validate()?;
    let (signal, max_imag) = lo_hat_profile(cfg)?.to_signal(dft);
    Ok(Kernel { signal, max_imag, warnings })
}

/// `Lo(x) = y·1_{y | x−b} Σ_{q' < Q, (q', y) = 1} Φ_{N,q'}(x)·μ(q')/φ(q')·τ_{q'}(x)`,
/// with `x` read in the centered window `[−M/2, M/2)`.
pub fn lo_kernel_closed(cfg: &DecompositionConfig, dft: &Dft) -> Result<Kernel> {
    let mut warnings = cfg.validate()?;
    let y = cfg.prog.y();
    let m = cfg.m;
    let mut out = vec![0.0; m];
    let mut max_imag: f64 = 0.0;
    for qp in 1..cfg.q {
        if gcd(qp, y) != 1 || mobius(qp) == 0 {
            continue;
        }
        let phi = phi_kernel(cfg, qp, dft)?;
        max_imag = max_imag.max(phi.max_imag);
        warnings.extend(phi.warnings);
        let coef = y as f64 * mobius(qp) as f64 / totient(qp) as f64;
        let tau: Vec<i64> = (0..qp as i64).map(|x| ramanujan_sum_closed(qp, x)).collect();
        for (i, v) in out.iter_mut().enumerate() {
            let x = centered(i, m);
            if !cfg.prog.contains(x) {
                continue;
            }
            *v += coef * phi.signal.values()[i] * tau[x.rem_euclid(qp as i64) as usize] as f64;
        }
    }
    Ok(Kernel { signal: CyclicSignal::from_values(out), max_imag, warnings })
}

/// `max_x |spectral − closed|` and `max_x |spectral|`.
pub fn lo_kernel_discrepancy(cfg: &DecompositionConfig) -> Result<(f64, f64)> {
    let dft = Dft::new(cfg.m);
    let s = lo_kernel_spectral(cfg, &dft)?;
    let c = lo_kernel_closed(cfg, &dft)?;
    let diff = s
        .signal
        .values()
        .iter()
        .zip(c.signal.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok((diff, s.signal.norm_inf()))
}
