//! Chebyshev sums along progressions and Siegel–Walfisz style error rows.

use crate::arith::{ArithTables, Progression};
use crate::error::{Error, Result};
use serde::Serialize;

impl ArithTables {
    /// `Ψ(x; y, b) = Σ_{1 ≤ n < x, n ≡ b (y)} Λ(n)`.
    pub fn psi_progression(&self, x: u64, prog: &Progression) -> Result<f64> {
        self.check_range("x", x)?;
        Ok(prog.members_below(x).map(|n| self.lambda(n)).sum())
    }

    /// `Σ_{1 ≤ n < x} Λ(n)`.
    pub fn chebyshev_psi(&self, x: u64) -> Result<f64> {
        self.check_range("x", x)?;
        Ok(self.lambda_values()[..x as usize].iter().sum())
    }

    /// Relative deviation of `Ψ(x; y, b)` from `x / φ(y)` along a grid of `x`.
    ///
    /// `j` is the exponent in the admissibility window `y ≤ (log x)^j`; a
    /// spacing outside the window produces a warning, never an error.
    pub fn sw_error_report(&self, x_grid: &[u64], prog: &Progression, j: u32) -> Result<SwReport> {
        if x_grid.is_empty() {
            return Err(Error::Empty("x_grid"));
        }
        let phi_y = crate::arith::elementary::totient(prog.y()) as f64;
        let mut rows = Vec::with_capacity(x_grid.len());
        for &x in x_grid {
            let psi = self.psi_progression(x, prog)?;
            let main_term = x as f64 / phi_y;
            rows.push(SwRow {
                x,
                psi,
                main_term,
                rel_error: (psi - main_term).abs() * phi_y / x.max(1) as f64,
            });
        }
        let mut warnings = Vec::new();
        let x_max = *x_grid.iter().max().unwrap();
        let window = (x_max.max(2) as f64).ln().powi(j as i32);
        if prog.y() as f64 > window {
            warnings.push(format!(
                "spacing y = {} exceeds (log {x_max})^{j} = {window:.3}",
                prog.y()
            ));
        }
        Ok(SwReport {
            progression: *prog,
            j,
            rows,
            warnings,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SwRow {
    pub x: u64,
    pub psi: f64,
    pub main_term: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwReport {
    pub progression: Progression,
    pub j: u32,
    pub rows: Vec<SwRow>,
    pub warnings: Vec<String>,
}
