use crate::arith::{Progression, DEFAULT_MEMORY_CAP};
use crate::error::{invalid, Result};
use crate::multiplier::error_terms::check_grid;
use crate::multiplier::CutoffSpec;
use serde::{Deserialize, Serialize};

/// Parameters of the High/Low split of the approximant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionConfig {
    pub n: u64,
    pub prog: Progression,
    /// Height threshold `Q`, a power of two.
    pub q: u64,
    /// Cyclic grid size `M`, a power of two with `M ≥ 4N`.
    pub m: usize,
    pub cutoff: CutoffSpec,
    /// Denominator ceiling: the approximant sums over `q < q_cut`.
    pub q_cut: u64,
}

impl DecompositionConfig {
    /// Smallest admissible setup: `M = 4N` rounded up to a power of two and
    /// `q_cut = max(y·(Q−1) + 1, Q)`.
    pub fn new(n: u64, prog: Progression, q: u64) -> Self {
        let m = (4 * n).next_power_of_two() as usize;
        let q_cut = (prog.y() * q.saturating_sub(1) + 1).max(q);
        DecompositionConfig { n, prog, q, m, cutoff: CutoffSpec::smooth(), q_cut }
    }

    pub fn with_grid(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    pub fn with_q_cut(mut self, q_cut: u64) -> Self {
        self.q_cut = q_cut;
        self
    }

    pub fn with_cutoff(mut self, cutoff: CutoffSpec) -> Self {
        self.cutoff = cutoff;
        self
    }

    /// Checks the hard requirements and returns soft warnings.
    ///
    /// Every Low point has `q | y·h` with `h < Q`, so `y·(Q−1) < q_cut` puts
    /// the whole Low set inside the approximant and makes the partition exact.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.validate_with_cap(DEFAULT_MEMORY_CAP)
    }

    pub fn validate_with_cap(&self, cap: u64) -> Result<Vec<String>> {
        if self.n < 2 {
            return Err(invalid("N", "must be at least 2"));
        }
        if self.q == 0 || !self.q.is_power_of_two() {
            return Err(invalid("Q", format!("{} is not a power of two", self.q)));
        }
        check_grid(self.m, cap)?;
        if (self.m as u64) < 4 * self.n {
            return Err(invalid("M", format!("{} is below 4N = {}", self.m, 4 * self.n)));
        }
        if self.prog.y() * (self.q - 1) >= self.q_cut {
            return Err(invalid(
                "q_cut",
                format!(
                    "{} must exceed y·(Q−1) = {} so the Low points lie in the approximant",
                    self.q_cut,
                    self.prog.y() * (self.q - 1)
                ),
            ));
        }
        let mut warnings = Vec::new();
        let root = (self.n as f64).powf(0.1);
        if self.q_cut as f64 > root {
            warnings.push(format!("q_cut = {} exceeds N^(1/10) = {root:.3}", self.q_cut));
        }
        if self.q > self.q_cut {
            warnings.push(format!("Q = {} exceeds q_cut = {}", self.q, self.q_cut));
        }
        Ok(warnings)
    }
}
