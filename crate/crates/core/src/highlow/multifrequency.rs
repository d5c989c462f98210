//! Maximal function of smooth multipliers centered at rationals with a
//! common denominator.

use crate::error::{invalid, Result};
use crate::multiplier::CutoffSpec;
use crate::phase::wrap_unit;
use crate::transform::{convolve_with, CyclicSignal, Dft, ProfileMeta, SpectralProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// `‖sup_{n ∈ scales} |F⁻¹{Σ_j η(2ⁿ(θ − a_j/D)) f̂}|‖₂ / ‖f‖₂`.
pub fn multifrequency_ratio(
    den: u64,
    numerators: &[u64],
    scales: &[u32],
    cutoff: &CutoffSpec,
    f: &CyclicSignal,
) -> Result<f64> {
    if den == 0 || numerators.is_empty() || scales.is_empty() {
        return Err(invalid("multifrequency", "need D ≥ 1, at least one point and one scale"));
    }
    let m = f.len();
    let dft = Dft::new(m);
    let meta = ProfileMeta { n: 0, y: 1, b: 0 };
    let mut sup = CyclicSignal::zeros(m);
    for &s in scales {
        let t = (s as f64).exp2();
        let values = (0..m)
            .map(|k| {
                let xi = k as f64 / m as f64;
                let v: f64 = numerators
                    .iter()
                    .map(|&a| cutoff.eval(t * wrap_unit(xi - a as f64 / den as f64)))
                    .sum();
                num_complex::Complex64::new(v, 0.0)
            })
            .collect();
        let (out, _) = convolve_with(&SpectralProfile::new(values, meta), f, &dft)?;
        sup.abs_max_assign(&out);
    }
    Ok(sup.norm_l2() / f.norm_l2())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultifrequencyRow {
    pub den: u64,
    pub points: usize,
    pub ratio: f64,
}

/// Ratios for the first `J = 1, …, D` numerators `0, …, J−1` at scales
/// `2ⁿ`, `2d < n ≤ log₂M − 2`, where `D < 2^d`, on a seeded random ±1 signal.
pub fn multifrequency_sweep(den: u64, m: usize, seed: u64) -> Result<Vec<MultifrequencyRow>> {
    if den < 2 || !m.is_power_of_two() {
        return Err(invalid("multifrequency", "need D ≥ 2 and a power-of-two grid"));
    }
    let d = 64 - den.leading_zeros();
    let top = m.trailing_zeros().saturating_sub(2);
    let scales: Vec<u32> = (2 * d + 1..=top).collect();
    if scales.is_empty() {
        return Err(invalid("M", format!("grid {m} too small for scales above 2^{}", 2 * d)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = CyclicSignal::from_values((0..m).map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 }).collect());
    let cutoff = CutoffSpec::smooth();
    (1..=den as usize)
        .map(|j| {
            let nums: Vec<u64> = (0..j as u64).collect();
            Ok(MultifrequencyRow { den, points: j, ratio: multifrequency_ratio(den, &nums, &scales, &cutoff, &f)? })
        })
        .collect()
}
