//! Norm ratios of the High and Low operators applied to indicators.

use crate::error::{invalid, Error, Result};
use crate::highlow::config::DecompositionConfig;
use crate::highlow::kernels::{hi_hat_profile, lo_hat_profile};
use crate::transform::{convolve_with, CyclicSignal, Dft, SpectralProfile};
use serde::Serialize;

/// Hi and Lo multipliers of one configuration, ready to apply.
#[derive(Debug, Clone)]
pub struct HighLowOperators {
    pub cfg: DecompositionConfig,
    dft: Dft,
    hi: SpectralProfile,
    lo: SpectralProfile,
}

pub(crate) fn check_set(set: &[i64], n: u64) -> Result<()> {
    if set.is_empty() {
        return Err(Error::Empty("F"));
    }
    if let Some(x) = set.iter().find(|&&x| x < 0 || x as u64 >= n) {
        return Err(invalid("F", format!("element {x} outside [0, {n})")));
    }
    Ok(())
}

pub(crate) fn check_r(r: f64) -> Result<()> {
    if !(r > 1.0 && r < 2.0) {
        return Err(invalid("r", format!("{r} is not in (1, 2)")));
    }
    Ok(())
}

impl HighLowOperators {
    pub fn new(cfg: &DecompositionConfig) -> Result<Self> {
        Ok(HighLowOperators {
            cfg: *cfg,
            dft: Dft::new(cfg.m),
            hi: hi_hat_profile(cfg)?,
            lo: lo_hat_profile(cfg)?,
        })
    }

    pub fn hi_apply(&self, f: &CyclicSignal) -> Result<CyclicSignal> {
        Ok(convolve_with(&self.hi, f, &self.dft)?.0)
    }

    pub fn lo_apply(&self, f: &CyclicSignal) -> Result<CyclicSignal> {
        Ok(convolve_with(&self.lo, f, &self.dft)?.0)
    }

    /// `‖Hi ∗ 1_F‖₂ / |F|^{1/2}`.
    pub fn hi_l2_ratio(&self, set: &[i64]) -> Result<f64> {
        check_set(set, self.cfg.n)?;
        let out = self.hi_apply(&CyclicSignal::indicator(self.cfg.m, set))?;
        Ok(out.norm_l2() / (set.len() as f64).sqrt())
    }

    /// `‖Lo ∗ 1_F‖_∞ / ((y/N)^{1/r} |F|^{1/r})`.
    pub fn lo_linf_ratio(&self, set: &[i64], r: f64) -> Result<f64> {
        check_set(set, self.cfg.n)?;
        check_r(r)?;
        let out = self.lo_apply(&CyclicSignal::indicator(self.cfg.m, set))?;
        let scale = (self.cfg.prog.y() as f64 / self.cfg.n as f64 * set.len() as f64).powf(1.0 / r);
        Ok(out.norm_inf() / scale)
    }
}

pub fn hi_l2_ratio(cfg: &DecompositionConfig, set: &[i64]) -> Result<f64> {
    HighLowOperators::new(cfg)?.hi_l2_ratio(set)
}

pub fn lo_linf_ratio(cfg: &DecompositionConfig, set: &[i64], r: f64) -> Result<f64> {
    HighLowOperators::new(cfg)?.lo_linf_ratio(set, r)
}

/// Norms of `sup_N |Hi_N ∗ 1_F|` and `sup_N |Lo_N ∗ 1_F|` over a family of scales.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaximalRatios {
    /// `‖sup_N |Hi_N ∗ 1_F|‖₂ / |F|^{1/2}`.
    pub hi: f64,
    /// `‖sup_N |Lo_N ∗ 1_F|‖_r / |F|^{1/r}`.
    pub lo: f64,
    pub scales: Vec<u64>,
}

/// Configurations must share `M` and the progression; `F` lies in `[0, min N)`.
pub fn maximal_ratios(cfgs: &[DecompositionConfig], set: &[i64], r: f64) -> Result<MaximalRatios> {
    let first = cfgs.first().ok_or(Error::Empty("scale list"))?;
    check_r(r)?;
    let n_min = cfgs.iter().map(|c| c.n).min().unwrap_or(0);
    check_set(set, n_min)?;
    for c in cfgs {
        if c.m != first.m {
            return Err(Error::SizeMismatch { left: first.m, right: c.m });
        }
        if c.prog != first.prog {
            return Err(Error::Precondition("all scales must share the progression".into()));
        }
    }
    let f = CyclicSignal::indicator(first.m, set);
    let mut hi = CyclicSignal::zeros(first.m);
    let mut lo = CyclicSignal::zeros(first.m);
    for c in cfgs {
        let ops = HighLowOperators::new(c)?;
        hi.abs_max_assign(&ops.hi_apply(&f)?);
        lo.abs_max_assign(&ops.lo_apply(&f)?);
    }
    let k = set.len() as f64;
    Ok(MaximalRatios {
        hi: hi.norm_l2() / k.sqrt(),
        lo: lo.norm(r) / k.powf(1.0 / r),
        scales: cfgs.iter().map(|c| c.n).collect(),
    })
}
