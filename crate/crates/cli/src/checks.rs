//! Recomputes the cheap fixture constants for `verify`.

use anyhow::Result;
use primeavg::arith::{ArithTables, Progression};
use primeavg::expsums::bourgain_average;
use primeavg::fixtures::{FixtureCheck, Fixtures};
use primeavg::highlow::{multifrequency_sweep, phi_kernel, DecompositionConfig};
use primeavg::multiplier::{approx_error_profile_capped, m_hat_len, m_prog_hat, near_zero_error, CutoffSpec};
use primeavg::phase::dist_to_int;
use primeavg::transform::Dft;

fn totient_constant(tables: &ArithTables) -> f64 {
    (1..=tables.bound())
        .map(|q| tables.totient(q) as f64 / (q as f64).sqrt())
        .fold(f64::INFINITY, f64::min)
}

/// Worst constants in `|M̂_{N,y,b}(θ) − M̂_{(N−b)/y}(yθ)| ≤ C·b·(|θ| + 1/N)` and
/// `|M̂_{N,y,b}(θ)| ≤ C·min(1, y/(N‖yθ‖))` over `y ≤ 12`.
fn average_constants() -> Result<(f64, f64)> {
    let (mut mm, mut mn) = (0.0f64, 0.0f64);
    for y in 1..=12u64 {
        for prog in Progression::all_with_spacing(y) {
            let b = prog.b();
            for n in [3 * y + 1, 100, 257, 1000, 4096] {
                for i in 0..2000 {
                    let th = -0.5 + i as f64 / 2000.0;
                    let v = m_prog_hat(th, n, &prog)?;
                    if b > 0 {
                        let r = m_hat_len(y as f64 * th, (n - b) as f64 / y as f64);
                        mm = mm.max((v - r).norm() / (b as f64 * (th.abs() + 1.0 / n as f64)));
                    }
                    let d = dist_to_int(y as f64 * th);
                    let bound = if d == 0.0 { 1.0 } else { 1f64.min(y as f64 / (n as f64 * d)) };
                    mn = mn.max(v.norm() / bound);
                }
            }
        }
    }
    Ok((mm, mn))
}

fn phi_constant() -> Result<f64> {
    let (n, m) = (1u64 << 12, 1usize << 16);
    let dft = Dft::new(m);
    let mut worst = 0.0f64;
    for (y, b) in [(1u64, 0u64), (2, 1), (3, 1), (5, 1), (6, 1)] {
        let cfg = DecompositionConfig::new(n, Progression::new(y, b)?, 4).with_grid(m);
        for q in 1..=8u64 {
            let ell = primeavg::arith::elementary::lcm(y, q);
            if ell * ell > 256 {
                continue;
            }
            for (x, v) in phi_kernel(&cfg, q, &dft)?.signal.centered_pairs() {
                let env = (1.0 + x.unsigned_abs() as f64 / n as f64).powi(-3) / n as f64;
                worst = worst.max(v.abs() / env);
            }
        }
    }
    Ok(worst)
}

/// Every fixture that can be recomputed in seconds.
pub fn fixture_checks(fx: &Fixtures, height_constant_measured: f64, cap: u64) -> Result<Vec<FixtureCheck>> {
    let mut out = vec![fx.check("height_upsilon_constant", height_constant_measured)?];
    let tables = ArithTables::build_with_cap(1 << 16, cap)?;
    out.push(fx.check("totient_lower_constant", totient_constant(&tables))?);
    let (mm, mn) = average_constants()?;
    out.push(fx.check("mm_factor_constant", mm)?);
    out.push(fx.check("mnless_constant", mn)?);
    out.push(fx.check("phi_envelope_constant", phi_constant()?)?);
    let mf = multifrequency_sweep(12, 1 << 12, 5)?.iter().map(|r| r.ratio).fold(0.0, f64::max);
    out.push(fx.check("multifrequency_bound", mf)?);
    let p5 = Progression::new(5, 2)?;
    let mut br = 0.0f64;
    for q in [4u64, 8, 16] {
        br = br.max(bourgain_average(q, 16 * 5 * q * q, &p5, 2)?.value / (q as f64).powf(1.25));
    }
    out.push(fx.check("bourgain_ratio_bound", br)?);
    let cut = CutoffSpec::smooth();
    for y in [1u64, 3] {
        let p = Progression::new(y, u64::from(y > 1))?;
        for e in [12u32, 16] {
            let n = 1u64 << e;
            let a = approx_error_profile_capped(&tables, n, &p, 16, &cut, 4 * n as usize, cap)?;
            out.push(fx.check(&format!("approx_sup_y{y}_n{e}"), a.sup_error)?);
            out.push(fx.check(&format!("near_zero_y{y}_n{e}"), near_zero_error(&tables, n, &p, 2.0)?.sup_error)?);
        }
    }
    Ok(out)
}
