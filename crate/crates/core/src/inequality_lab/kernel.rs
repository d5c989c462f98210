//! The prime average `A_{N,y,b}` as a convolution operator on `ℤ_M`.

use crate::arith::{ArithTables, Progression};
use crate::error::{invalid, Error, Result};
use crate::highlow::ratios::{check_r, check_set};
use crate::multiplier::a_hat_grid;
use crate::transform::{convolve_with, CyclicSignal, Dft, SpectralProfile};
use serde::Serialize;

/// `A_{N,y,b}` with its multiplier precomputed on a grid of size `M ≥ 2N`,
/// so `A 1_F` for `F ⊂ [0, N)` never wraps around.
#[derive(Debug, Clone)]
pub struct AKernel {
    n: u64,
    prog: Progression,
    dft: Dft,
    profile: SpectralProfile,
}

impl AKernel {
    pub fn new(tables: &ArithTables, n: u64, prog: Progression, m: usize) -> Result<Self> {
        if (m as u64) < 2 * n {
            return Err(invalid("M", format!("{m} is below 2N = {}", 2 * n)));
        }
        Ok(AKernel { n, prog, dft: Dft::new(m), profile: a_hat_grid(tables, n, &prog, m)? })
    }

    /// Grid `M = 4N` rounded up to a power of two.
    pub fn with_default_grid(tables: &ArithTables, n: u64, prog: Progression) -> Result<Self> {
        Self::new(tables, n, prog, (4 * n).next_power_of_two() as usize)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn progression(&self) -> Progression {
        self.prog
    }

    pub fn grid_size(&self) -> usize {
        self.profile.grid_size()
    }

    pub fn profile(&self) -> &SpectralProfile {
        &self.profile
    }

    pub fn apply(&self, f: &CyclicSignal) -> Result<CyclicSignal> {
        Ok(convolve_with(&self.profile, f, &self.dft)?.0)
    }

    pub fn apply_set(&self, set: &[i64]) -> Result<CyclicSignal> {
        self.apply(&CyclicSignal::indicator(self.grid_size(), set))
    }

    /// `‖A 1_F‖_{r'} / ((y/N)^{1/r − 1/r'} |F|^{1/r})`.
    pub fn improving_ratio(&self, r: f64, set: &[i64]) -> Result<f64> {
        check_r(r)?;
        check_set(set, self.n)?;
        let rp = r / (r - 1.0);
        let out = self.apply_set(set)?;
        let y_over_n = self.prog.y() as f64 / self.n as f64;
        let scale = y_over_n.powf(1.0 / r - 1.0 / rp) * (set.len() as f64).powf(1.0 / r);
        Ok(out.norm(rp) / scale)
    }

    /// `(y/N)⟨A 1_F, 1_G⟩ / ((y|F|/N)^{1/r} (y|G|/N)^{1/r})`.
    pub fn dual_ratio(&self, r: f64, f: &[i64], g: &[i64]) -> Result<DualRatio> {
        check_r(r)?;
        check_set(f, self.n)?;
        check_set(g, self.n)?;
        let out = self.apply_set(f)?;
        let pairing: f64 = g.iter().map(|&x| out.at(x)).sum();
        let y_over_n = self.prog.y() as f64 / self.n as f64;
        let (df, dg) = (y_over_n * f.len() as f64, y_over_n * g.len() as f64);
        let rp = r / (r - 1.0);
        let threshold = (self.n as f64).ln().powf(-rp);
        Ok(DualRatio {
            ratio: y_over_n * pairing / (df.powf(1.0 / r) * dg.powf(1.0 / r)),
            density_product: df * dg,
            threshold,
            trivial_regime: df * dg <= threshold,
        })
    }
}

/// Result of [`AKernel::dual_ratio`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualRatio {
    pub ratio: f64,
    /// `(y/N)²|F||G|`.
    pub density_product: f64,
    /// `(log N)^{−r'}`.
    pub threshold: f64,
    /// The crude bound `log N·(y|F|/N)(y|G|/N)` already implies the estimate.
    pub trivial_regime: bool,
}

pub fn improving_ratio(tables: &ArithTables, n: u64, prog: Progression, r: f64, set: &[i64]) -> Result<f64> {
    AKernel::with_default_grid(tables, n, prog)?.improving_ratio(r, set)
}

pub fn dual_ratio(tables: &ArithTables, n: u64, prog: Progression, r: f64, f: &[i64], g: &[i64]) -> Result<DualRatio> {
    AKernel::with_default_grid(tables, n, prog)?.dual_ratio(r, f, g)
}

/// Pointwise `sup_N |A_N 1_F|` over kernels sharing one grid.
pub fn maximal_apply(kernels: &[AKernel], set: &[i64]) -> Result<CyclicSignal> {
    let first = kernels.first().ok_or(Error::Empty("scale list"))?;
    let m = first.grid_size();
    let f = CyclicSignal::indicator(m, set);
    let mut sup = CyclicSignal::zeros(m);
    for k in kernels {
        if k.grid_size() != m {
            return Err(Error::SizeMismatch { left: m, right: k.grid_size() });
        }
        sup.abs_max_assign(&k.apply(&f)?);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_ratio_is_kernel_norm() {
        let t = ArithTables::build(1 << 12).unwrap();
        let prog = Progression::new(3, 1).unwrap();
        let n = 1 << 10;
        let k = AKernel::with_default_grid(&t, n, prog).unwrap();
        let r = 1.5;
        let ratio = k.improving_ratio(r, &[0]).unwrap();
        let w = crate::multiplier::a_weights(&t, n, &prog).unwrap();
        let norm3: f64 = w.iter().map(|(_, v)| v.powi(3)).sum::<f64>().powf(1.0 / 3.0);
        let want = norm3 / (3.0 / n as f64).powf(1.0 / 1.5 - 1.0 / 3.0);
        assert!((ratio - want).abs() < 1e-10 * want);
    }

    #[test]
    fn translation_invariance() {
        let t = ArithTables::build(1 << 12).unwrap();
        let k = AKernel::with_default_grid(&t, 1 << 10, Progression::new(5, 2).unwrap()).unwrap();
        let set: Vec<i64> = (0..200).step_by(3).collect();
        let shifted: Vec<i64> = set.iter().map(|x| x + 123).collect();
        let a = k.improving_ratio(1.5, &set).unwrap();
        let b = k.improving_ratio(1.5, &shifted).unwrap();
        assert!((a - b).abs() < 1e-9 * a);
    }

    #[test]
    fn dual_regimes() {
        let t = ArithTables::build(1 << 12).unwrap();
        let k = AKernel::with_default_grid(&t, 1 << 12, Progression::all()).unwrap();
        let small = k.dual_ratio(1.5, &[5], &[7]).unwrap();
        assert!(small.trivial_regime);
        let full: Vec<i64> = (0..1 << 12).collect();
        let big = k.dual_ratio(1.5, &full, &full).unwrap();
        assert!(!big.trivial_regime);
        assert!(big.ratio.is_finite() && big.ratio > 0.0);
        assert!(k.dual_ratio(1.5, &[], &[1]).is_err());
    }

    #[test]
    fn maximal_monotone_in_scale_list() {
        let t = ArithTables::build(1 << 12).unwrap();
        let prog = Progression::all();
        let ks: Vec<AKernel> = [256u64, 512, 1024].iter().map(|&n| AKernel::new(&t, n, prog, 4096).unwrap()).collect();
        let set: Vec<i64> = (0..256).step_by(5).collect();
        let all = maximal_apply(&ks, &set).unwrap();
        let sub = maximal_apply(&ks[..2], &set).unwrap();
        assert!(all.values().iter().zip(sub.values()).all(|(a, b)| a + 1e-12 >= *b));
    }
}
