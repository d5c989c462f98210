//! Discrete Fourier transforms on the cyclic group `ℤ_M`.
//!
//! Conventions: `ĝ(k) = Σ_x g(x) e(−xk/M)` (unnormalized forward) and
//! `g(x) = M⁻¹ Σ_k ĝ(k) e(xk/M)`, so that `ĝ(k)` is the multiplier of the
//! kernel `g` at frequency `ξ = k/M`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;
use std::sync::Arc;

/// A forward/inverse plan pair of fixed length.
#[derive(Clone)]
pub struct Dft {
    m: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Dft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("m", &self.m).finish()
    }
}

impl Dft {
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "transform length must be positive");
        let mut planner = FftPlanner::new();
        Dft {
            m,
            forward: planner.plan_fft_forward(m),
            inverse: planner.plan_fft_inverse(m),
        }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.m);
        self.forward.process(data);
    }

    /// Inverse transform including the `1/M` factor.
    pub fn inverse(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.m);
        self.inverse.process(data);
        let s = 1.0 / self.m as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }
}

/// Maps `x ∈ ℤ` to its index in `ℤ_M`.
pub fn wrap_index(x: i64, m: usize) -> usize {
    x.rem_euclid(m as i64) as usize
}

/// Representative of index `i` in the centered window `[−M/2, M/2)`.
pub fn centered(i: usize, m: usize) -> i64 {
    let i = i as i64;
    let m = m as i64;
    if i >= (m + 1) / 2 {
        i - m
    } else {
        i
    }
}

/// Real-valued function on `ℤ_M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicSignal {
    values: Vec<f64>,
}

impl CyclicSignal {
    pub fn zeros(m: usize) -> Self {
        CyclicSignal { values: vec![0.0; m] }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        CyclicSignal { values }
    }

    /// Indicator of a finite set of integers, reduced modulo `M`.
    pub fn indicator(m: usize, set: &[i64]) -> Self {
        let mut s = Self::zeros(m);
        for &x in set {
            s.values[wrap_index(x, m)] += 1.0;
        }
        s
    }

    pub fn delta(m: usize, at: i64) -> Self {
        Self::indicator(m, &[at])
    }

    /// Real parts of `values`, together with the largest discarded imaginary part.
    pub fn from_complex(values: &[Complex64]) -> (Self, f64) {
        let max_im = values.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        (
            CyclicSignal { values: values.iter().map(|z| z.re).collect() },
            max_im,
        )
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Value at the integer `x`, read modulo `M`.
    pub fn at(&self, x: i64) -> f64 {
        self.values[wrap_index(x, self.len())]
    }

    /// `(x, value)` pairs over the centered window, in increasing `x`.
    pub fn centered_pairs(&self) -> Vec<(i64, f64)> {
        let m = self.len();
        let mut out: Vec<(i64, f64)> = (0..m).map(|i| (centered(i, m), self.values[i])).collect();
        out.sort_by_key(|p| p.0);
        out
    }

    pub fn norm_inf(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// `ℓ^r` norm over the full cycle; `r = ∞` gives the sup norm.
    pub fn norm(&self, r: f64) -> f64 {
        assert!(r >= 1.0, "norm exponent must be at least 1");
        if r.is_infinite() {
            return self.norm_inf();
        }
        self.values.iter().map(|v| v.abs().powf(r)).sum::<f64>().powf(1.0 / r)
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Pointwise maximum of `|self|` and `|other|`, stored in `self`.
    pub fn abs_max_assign(&mut self, other: &CyclicSignal) {
        assert_eq!(self.len(), other.len());
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a = a.abs().max(b.abs());
        }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }
}

/// Context recorded with a multiplier profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileMeta {
    pub n: u64,
    pub y: u64,
    pub b: u64,
}

/// A multiplier sampled at `ξ = k/M`, `0 ≤ k < M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralProfile {
    values: Vec<Complex64>,
    meta: ProfileMeta,
}

impl SpectralProfile {
    pub fn new(values: Vec<Complex64>, meta: ProfileMeta) -> Self {
        SpectralProfile { values, meta }
    }

    pub fn zeros(m: usize, meta: ProfileMeta) -> Self {
        SpectralProfile { values: vec![Complex64::new(0.0, 0.0); m], meta }
    }

    /// Forward transform of a real kernel.
    pub fn of_kernel(kernel: &CyclicSignal, dft: &Dft, meta: ProfileMeta) -> Self {
        let mut buf = kernel.to_complex();
        dft.forward(&mut buf);
        SpectralProfile { values: buf, meta }
    }

    pub fn grid_size(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn meta(&self) -> ProfileMeta {
        self.meta
    }

    pub fn xi(&self, k: usize) -> f64 {
        k as f64 / self.grid_size() as f64
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max_k |value(M−k) − conj(value(k))|`.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let m = self.grid_size();
        (0..m)
            .map(|k| (self.values[(m - k) % m] - self.values[k].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Inverse transform, returned as a real signal plus the largest
    /// imaginary part discarded.
    pub fn to_signal(&self, dft: &Dft) -> (CyclicSignal, f64) {
        let mut buf = self.values.clone();
        dft.inverse(&mut buf);
        CyclicSignal::from_complex(&buf)
    }

    pub fn add_assign(&mut self, other: &SpectralProfile) -> Result<()> {
        if self.grid_size() != other.grid_size() {
            return Err(Error::SizeMismatch { left: self.grid_size(), right: other.grid_size() });
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &SpectralProfile) -> Result<SpectralProfile> {
        if self.grid_size() != other.grid_size() {
            return Err(Error::SizeMismatch { left: self.grid_size(), right: other.grid_size() });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(SpectralProfile { values, meta: self.meta })
    }
}

/// Cyclic convolution `(k ∗ f)(x) = Σ_z k(z) f(x − z)` through the transform pair.
pub fn convolve(kernel: &CyclicSignal, f: &CyclicSignal) -> Result<CyclicSignal> {
    if kernel.len() != f.len() {
        return Err(Error::SizeMismatch { left: kernel.len(), right: f.len() });
    }
    if kernel.is_empty() {
        return Err(Error::Empty("signal"));
    }
    let dft = Dft::new(kernel.len());
    Ok(convolve_with(&SpectralProfile::of_kernel(kernel, &dft, ProfileMeta { n: 0, y: 1, b: 0 }), f, &dft)?.0)
}

/// Convolution with a kernel given by its multiplier profile. Returns the
/// real part and the largest discarded imaginary part.
pub fn convolve_with(
    profile: &SpectralProfile,
    f: &CyclicSignal,
    dft: &Dft,
) -> Result<(CyclicSignal, f64)> {
    if profile.grid_size() != f.len() {
        return Err(Error::SizeMismatch { left: profile.grid_size(), right: f.len() });
    }
    let mut buf = f.to_complex();
    dft.forward(&mut buf);
    for (z, w) in buf.iter_mut().zip(profile.values()) {
        *z *= w;
    }
    dft.inverse(&mut buf);
    Ok(CyclicSignal::from_complex(&buf))
}
