//! Major-arc approximants `L̂` attached to Farey points.

use crate::arith::elementary::{divisors, reduced_residues};
use crate::arith::Progression;
use crate::error::{Error, Result};
use crate::expsums::{height, FareyPoint};
use crate::multiplier::averages::m_hat_len;
use crate::multiplier::cutoff::CutoffSpec;
use crate::phase::wrap_unit;
use crate::transform::{ProfileMeta, SpectralProfile};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Filter used by [`farey_points`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FareyMode {
    /// `q ≤ Qmax`.
    Denominator,
    /// `1 ≤ h_y(q) ≤ Qmax`; height-0 points are dropped.
    Height,
}

/// Reduced `a/q ∈ [0, 1)` passing the filter, ordered by `(q, a)`.
pub fn farey_points(q_max: u64, prog: Progression, mode: FareyMode) -> Vec<FareyPoint> {
    let qs: Vec<u64> = match mode {
        FareyMode::Denominator => (1..=q_max).collect(),
        FareyMode::Height => {
            // height h forces q | y·h.
            let y = prog.y();
            let mut qs: Vec<u64> = (1..=q_max)
                .flat_map(|h| divisors(y * h).into_iter().filter(move |&q| height(q, y) == h))
                .collect();
            qs.sort_unstable();
            qs.dedup();
            qs
        }
    };
    qs.into_iter()
        .flat_map(|q| {
            reduced_residues(q)
                .into_iter()
                .map(move |a| FareyPoint::new(a, q, prog).expect("reduced residue"))
        })
        .collect()
}

/// Farey points with `q < q_cut`: the approximant's point set.
pub fn approximant_points(q_cut: u64, prog: Progression) -> Vec<FareyPoint> {
    if q_cut <= 1 {
        return Vec::new();
    }
    farey_points(q_cut - 1, prog, FareyMode::Denominator)
}

fn check_context(point: &FareyPoint, prog: &Progression) -> Result<()> {
    if point.progression() != *prog {
        return Err(Error::Precondition(format!(
            "Farey point built for {:?}, evaluated with {:?}",
            point.progression(),
            prog
        )));
    }
    Ok(())
}

/// `L̂(ξ) = Υ(a/q) · M̂_{N/ℓ}(ℓ(ξ − a/q)) · η(ℓ²(ξ − a/q))`, with `ξ − a/q`
/// taken in `[−1/2, 1/2)`.
pub fn l_hat(xi: f64, point: &FareyPoint, n: u64, prog: &Progression, cutoff: &CutoffSpec) -> Result<Complex64> {
    check_context(point, prog)?;
    Ok(l_hat_unchecked(xi, point, n, cutoff))
}

pub(crate) fn l_hat_unchecked(xi: f64, point: &FareyPoint, n: u64, cutoff: &CutoffSpec) -> Complex64 {
    let ups = point.upsilon();
    if ups.norm() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let ell = point.ell() as f64;
    let d = wrap_unit(xi - point.frequency());
    let eta = cutoff.eval(ell * ell * d);
    if eta == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    ups * m_hat_len(ell * d, n as f64 / ell) * eta
}

/// `Σ_{q < q_cut} Σ_a L̂` at a single frequency.
pub fn approximant_hat(xi: f64, n: u64, prog: &Progression, q_cut: u64, cutoff: &CutoffSpec) -> Complex64 {
    approximant_points(q_cut, *prog)
        .iter()
        .map(|p| l_hat_unchecked(xi, p, n, cutoff))
        .sum()
}

/// `Σ_{p ∈ points} L̂_p` sampled at `ξ = k/M`. Each point only touches the
/// grid indices inside its support.
pub fn arc_profile(points: &[FareyPoint], n: u64, prog: &Progression, cutoff: &CutoffSpec, m: usize) -> Result<SpectralProfile> {
    let meta = ProfileMeta { n, y: prog.y(), b: prog.b() };
    let mut prof = SpectralProfile::zeros(m, meta);
    let mf = m as f64;
    for p in points {
        check_context(p, prog)?;
        if p.upsilon().norm() == 0.0 {
            continue;
        }
        let ell = p.ell() as f64;
        let radius = cutoff.support_radius() / (ell * ell);
        let vals = prof.values_mut();
        if !radius.is_finite() || radius >= 0.5 {
            for (k, v) in vals.iter_mut().enumerate() {
                *v += l_hat_unchecked(k as f64 / mf, p, n, cutoff);
            }
            continue;
        }
        let center = p.frequency() * mf;
        let lo = (center - radius * mf).floor() as i64 - 1;
        let hi = (center + radius * mf).ceil() as i64 + 1;
        for j in lo..=hi {
            let k = j.rem_euclid(m as i64) as usize;
            vals[k] += l_hat_unchecked(k as f64 / mf, p, n, cutoff);
        }
    }
    Ok(prof)
}

/// The approximant sampled on the `M`-grid.
pub fn approximant_profile(n: u64, prog: &Progression, q_cut: u64, cutoff: &CutoffSpec, m: usize) -> Result<SpectralProfile> {
    arc_profile(&approximant_points(q_cut, *prog), n, prog, cutoff, m)
}
