//! Measured approximation errors of the prime multiplier.

use crate::arith::{ArithTables, Progression, DEFAULT_MEMORY_CAP};
use crate::error::{Error, Result};
use crate::expsums::FareyPoint;
use crate::multiplier::arcs::approximant_profile;
use crate::multiplier::averages::m_hat_len;
use crate::multiplier::cutoff::CutoffSpec;
use crate::multiplier::prime::{a_hat_grid, a_weights};
use crate::phase::e_ratio;
use crate::transform::{Dft, SpectralProfile};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Sample points per unit `1/N` in the fine windows.
pub const WINDOW_RESOLUTION: u64 = 64;

/// Supremum of `|Â − model|` over a window `|θ − a/q| < (log N)^J / N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WindowError {
    pub n: u64,
    pub y: u64,
    pub b: u64,
    pub a: u64,
    pub q: u64,
    pub j: f64,
    /// `(log N)^J / N`.
    pub half_width: f64,
    pub points: usize,
    pub sup_error: f64,
    /// Offset `θ − a/q` where the supremum is attained.
    pub argmax_offset: f64,
    /// Error at `θ = a/q`.
    pub center_error: f64,
    pub warnings: Vec<String>,
}

/// `Σ_n w_n e(−nθ)` at `θ = a/q + j/(P·N)` for `|j| < P·W`, with one twisted
/// length-`N` transform per residue of `j` modulo `P`. Returns `(j, value)`.
fn fine_window(weights: &[(u64, f64)], n: u64, a: u64, q: u64, w: f64, p: u64) -> Vec<(i64, Complex64)> {
    let len = n as usize;
    let pn = p * n;
    let jmax = (p as f64 * w).ceil() as i64;
    let umax = jmax / p as i64 + 1;
    let dft = Dft::new(len);
    let per_v: Vec<Vec<(i64, Complex64)>> = (0..p)
        .into_par_iter()
        .map(|v| {
            let mut buf = vec![Complex64::new(0.0, 0.0); len];
            for &(x, wt) in weights {
                let tw = e_ratio(-((x as i128 * a as i128) % q as i128), q)
                    * e_ratio(-((x as i128 * v as i128) % pn as i128), pn);
                buf[x as usize] += tw * wt;
            }
            dft.forward(&mut buf);
            (-umax..=umax)
                .filter_map(|u| {
                    let j = u * p as i64 + v as i64;
                    (j.abs() < jmax).then(|| (j, buf[u.rem_euclid(len as i64) as usize]))
                })
                .collect()
        })
        .collect();
    let mut out: Vec<(i64, Complex64)> = per_v.into_iter().flatten().collect();
    out.sort_by_key(|p| p.0);
    out
}

fn window_error(
    tables: &ArithTables,
    n: u64,
    prog: &Progression,
    point: &FareyPoint,
    j: f64,
    mut warnings: Vec<String>,
) -> Result<WindowError> {
    if n < 2 {
        return Err(crate::error::invalid("N", "must be at least 2"));
    }
    if j <= 1.0 {
        return Err(crate::error::invalid("J", "must exceed 1"));
    }
    let w = (n as f64).ln().powf(j);
    if w >= n as f64 / 2.0 {
        warnings.push(format!("window (log N)^J = {w:.3} covers the whole circle at N = {n}"));
    }
    let weights = a_weights(tables, n, prog)?;
    let vals = fine_window(&weights, n, point.a(), point.q(), w.min(n as f64 / 2.0), WINDOW_RESOLUTION);
    let ell = point.ell() as f64;
    let len = n as f64 / ell;
    let ups = point.upsilon();
    let step = 1.0 / (WINDOW_RESOLUTION as f64 * n as f64);
    let mut sup_error: f64 = 0.0;
    let mut argmax_offset = 0.0;
    let mut center_error = 0.0;
    for &(jj, a) in &vals {
        let d = jj as f64 * step;
        let err = (a - ups * m_hat_len(ell * d, len)).norm();
        if jj == 0 {
            center_error = err;
        }
        if err > sup_error {
            sup_error = err;
            argmax_offset = d;
        }
    }
    Ok(WindowError {
        n,
        y: prog.y(),
        b: prog.b(),
        a: point.a(),
        q: point.q(),
        j,
        half_width: w / n as f64,
        points: vals.len(),
        sup_error,
        argmax_offset,
        center_error,
        warnings,
    })
}

/// `sup |Â_{N,y,b}(θ) − M̂_{N/y}(yθ)|` over `|θ| < (log N)^J / N`.
pub fn near_zero_error(tables: &ArithTables, n: u64, prog: &Progression, j: f64) -> Result<WindowError> {
    let mut warnings = Vec::new();
    let w = (n.max(2) as f64).ln().powf(j);
    if prog.y() as f64 >= w {
        warnings.push(format!("y = {} is not below (log N)^J = {w:.3}", prog.y()));
    }
    let origin = FareyPoint::new(0, 1, *prog)?;
    window_error(tables, n, prog, &origin, j, warnings)
}

/// `sup |Â_{N,y,b}(ξ) − Υ(a/q)·M̂_{N/ℓ}(ℓ(ξ − a/q))|` over `|ξ − a/q| < (log N)^J / N`.
pub fn major_arc_error(tables: &ArithTables, n: u64, prog: &Progression, point: &FareyPoint, j: f64) -> Result<WindowError> {
    if point.progression() != *prog {
        return Err(Error::Precondition("Farey point built for a different progression".into()));
    }
    let mut warnings = Vec::new();
    let w = (n.max(2) as f64).ln().powf(j);
    if prog.y() as f64 >= w || point.q() as f64 >= w {
        warnings.push(format!("y = {} or q = {} is not below (log N)^J = {w:.3}", prog.y(), point.q()));
    }
    window_error(tables, n, prog, point, j, warnings)
}

/// Residual `Â − (approximant)` on the `M`-grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxError {
    pub n: u64,
    pub y: u64,
    pub b: u64,
    pub q_cut: u64,
    pub m: usize,
    pub sup_error: f64,
    pub argmax_k: usize,
    #[serde(skip)]
    pub residual: SpectralProfile,
    pub warnings: Vec<String>,
}

pub(crate) fn check_grid(m: usize, cap: u64) -> Result<()> {
    if !m.is_power_of_two() {
        return Err(crate::error::invalid("M", format!("grid size {m} must be a power of two")));
    }
    if m as u64 > cap {
        return Err(Error::MemoryCap { requested: m as u64, cap });
    }
    Ok(())
}

pub fn approx_error_profile(
    tables: &ArithTables,
    n: u64,
    prog: &Progression,
    q_cut: u64,
    cutoff: &CutoffSpec,
    m: usize,
) -> Result<ApproxError> {
    approx_error_profile_capped(tables, n, prog, q_cut, cutoff, m, DEFAULT_MEMORY_CAP)
}

pub fn approx_error_profile_capped(
    tables: &ArithTables,
    n: u64,
    prog: &Progression,
    q_cut: u64,
    cutoff: &CutoffSpec,
    m: usize,
    cap: u64,
) -> Result<ApproxError> {
    check_grid(m, cap)?;
    let mut warnings = Vec::new();
    if (m as u64) < 4 * n {
        warnings.push(format!("M = {m} is below 4N = {}", 4 * n));
    }
    if q_cut as f64 > (n as f64).powf(0.1) {
        warnings.push(format!("q_cut = {q_cut} exceeds N^(1/10) = {:.3}", (n as f64).powf(0.1)));
    }
    let a = a_hat_grid(tables, n, prog, m)?;
    let l = approximant_profile(n, prog, q_cut, cutoff, m)?;
    let residual = a.sub(&l)?;
    let (argmax_k, sup_error) = residual
        .values()
        .iter()
        .enumerate()
        .map(|(k, z)| (k, z.norm()))
        .fold((0, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    Ok(ApproxError { n, y: prog.y(), b: prog.b(), q_cut, m, sup_error, argmax_k, residual, warnings })
}
