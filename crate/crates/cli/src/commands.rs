//! One function per subcommand. Each returns whether its checks passed.

use crate::checks::fixture_checks;
use crate::config::*;
use crate::output::{num, opt_num, Artifacts};
use anyhow::{bail, Result};
use primeavg::arith::{ArithTables, Progression, DEFAULT_MEMORY_CAP};
use primeavg::expsums::bourgain_average;
use primeavg::expsums::verify::{gating_passed, run_all, VerifyConfig, KNOWN_DISCREPANCIES};
use primeavg::fixtures::{Fixtures, Provenance};
use primeavg::highlow::ratios::HighLowOperators;
use primeavg::highlow::{hi_hat_profile, lo_hat_profile, lo_kernel_discrepancy, DecompositionConfig};
use primeavg::inequality_lab::scan::default_residue;
use primeavg::inequality_lab::*;
use primeavg::multiplier::{approx_error_profile_capped, approximant_profile, near_zero_error, CutoffSpec};
use primeavg::stats::loglog_slope;
use serde::Serialize;
use serde_json::json;

pub const TABLE_BOUND_VAR: &str = "PRIMEAVG_TABLE_BOUND";
pub const MEMORY_CAP_VAR: &str = "PRIMEAVG_MEMORY_CAP";

/// Settings shared by every command.
pub struct Context {
    pub seed: u64,
    pub fixtures: Fixtures,
    pub memory_cap: u64,
    pub table_bound: Option<u64>,
}

impl Context {
    pub fn from_env(seed: u64) -> Result<Self> {
        Ok(Context {
            seed,
            fixtures: Fixtures::bundled(),
            memory_cap: env_u64(MEMORY_CAP_VAR)?.unwrap_or(DEFAULT_MEMORY_CAP),
            table_bound: env_u64(TABLE_BOUND_VAR)?,
        })
    }

    /// Tables covering `needed`, or the bound forced by the environment.
    fn tables(&self, needed: u64) -> Result<ArithTables> {
        let bound = self.table_bound.unwrap_or(needed.max(2));
        if bound < needed {
            bail!("{TABLE_BOUND_VAR} = {bound} is below the required bound {needed}");
        }
        Ok(ArithTables::build_with_cap(bound, self.memory_cap)?)
    }
}

fn progression(y: u64, b: Option<u64>) -> Result<Progression> {
    Ok(Progression::new(y, b.unwrap_or_else(|| default_residue(y)))?)
}

fn cutoff(name: Option<&str>) -> Result<CutoffSpec> {
    match name.unwrap_or("smooth") {
        "smooth" => Ok(CutoffSpec::smooth()),
        "unit" => Ok(CutoffSpec::unit()),
        other => bail!("unknown cutoff `{other}` (expected `smooth` or `unit`)"),
    }
}

#[derive(Serialize)]
struct Summary<T: Serialize> {
    command: &'static str,
    seed: u64,
    passed: bool,
    #[serde(flatten)]
    body: T,
    provenance: Provenance,
}

fn summary<T: Serialize>(out: &mut Artifacts, command: &'static str, ctx: &Context, passed: bool, body: T) -> Result<()> {
    let name = format!("{}_summary.json", command.replace('-', "_"));
    out.json(&name, &Summary { command, seed: ctx.seed, passed, body, provenance: Provenance::current() })
}

pub fn verify(ctx: &Context, p: &VerifyParams, out: &mut Artifacts) -> Result<bool> {
    let (qmax, ymax) = (p.qmax.unwrap_or(96), p.ymax.unwrap_or(36));
    if qmax == 0 || ymax == 0 {
        bail!("qmax and ymax must be positive");
    }
    let constant = ctx.fixtures.value("height_upsilon_constant")?;
    let cfg = VerifyConfig::new(qmax, ymax, ctx.seed, constant);
    let suites = run_all(&cfg);
    out.csv(
        "verify.csv",
        &["identity", "q", "y", "b", "a_or_x", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "tol", "passed", "seed"],
        suites.iter().flat_map(|s| s.rows.iter()).map(|r| {
            vec![
                r.identity.to_string(),
                r.q.to_string(),
                r.y.to_string(),
                r.b.to_string(),
                r.a_or_x.to_string(),
                num(r.lhs.re),
                num(r.lhs.im),
                num(r.rhs.re),
                num(r.rhs.im),
                num(r.abs_err),
                num(r.tol),
                r.passed().to_string(),
                ctx.seed.to_string(),
            ]
        }),
    )?;
    let measured_height = suites
        .iter()
        .filter(|s| s.identity == "height_decay")
        .flat_map(|s| s.rows.iter())
        .filter(|r| r.rhs.re > 0.0)
        .map(|r| r.lhs.re * constant / r.rhs.re)
        .fold(0.0, f64::max);
    let checks = if p.skip_fixtures.unwrap_or(false) {
        Vec::new()
    } else {
        fixture_checks(&ctx.fixtures, measured_height, ctx.memory_cap)?
    };
    out.csv(
        "verify_fixtures.csv",
        &["fixture", "measured", "fixture_value", "kind", "tolerance", "passed"],
        checks.iter().map(|c| {
            vec![
                c.name.clone(),
                num(c.measured),
                num(c.fixture),
                format!("{:?}", c.kind),
                num(c.tolerance),
                c.passed.to_string(),
            ]
        }),
    )?;
    let passed = gating_passed(&suites) && checks.iter().all(|c| c.passed);
    let suite_rows: Vec<_> = suites
        .iter()
        .map(|s| {
            json!({
                "identity": s.identity,
                "cases": s.rows.len(),
                "grid_size": s.total_tuples,
                "sampled": s.sampled,
                "failures": s.failures(),
                "max_abs_err": s.max_abs_err(),
                "gating": !KNOWN_DISCREPANCIES.contains(&s.identity),
            })
        })
        .collect();
    summary(out, "verify", ctx, passed, json!({ "qmax": qmax, "ymax": ymax, "suites": suite_rows, "fixtures": checks }))?;
    Ok(passed)
}

pub fn approx(ctx: &Context, p: &ApproxParams, out: &mut Artifacts) -> Result<bool> {
    let n = p.N.unwrap_or(4096);
    let y = p.y.unwrap_or(1);
    let prog = progression(y, p.b)?;
    let q_cut = p.qcut.unwrap_or(16);
    let m = p.M.unwrap_or((4 * n).next_power_of_two() as usize);
    let j = p.J.unwrap_or(2.0);
    let cut = cutoff(p.cutoff.as_deref())?;
    let tables = ctx.tables(n)?;
    let err = approx_error_profile_capped(&tables, n, &prog, q_cut, &cut, m, ctx.memory_cap)?;
    let nz = near_zero_error(&tables, n, &prog, j)?;
    let (b, q_cut_s, m_s) = (prog.b().to_string(), q_cut.to_string(), m.to_string());
    out.csv(
        "approx.csv",
        &["N", "y", "b", "q_cut", "M", "k", "xi", "re", "im", "abs"],
        err.residual.values().iter().enumerate().map(|(k, v)| {
            vec![
                n.to_string(),
                y.to_string(),
                b.clone(),
                q_cut_s.clone(),
                m_s.clone(),
                k.to_string(),
                num(k as f64 / m as f64),
                num(v.re),
                num(v.im),
                num(v.norm()),
            ]
        }),
    )?;
    let passed = err.sup_error.is_finite() && nz.sup_error.is_finite();
    summary(
        out,
        "approx",
        ctx,
        passed,
        json!({
            "N": n, "y": y, "b": prog.b(), "q_cut": q_cut, "M": m, "cutoff": cut.name(),
            "sup_error": err.sup_error, "argmax_xi": err.argmax_k as f64 / m as f64,
            "near_zero": nz, "warnings": err.warnings,
        }),
    )?;
    Ok(passed)
}

/// Smallest default grid for `highlow`; the Low kernel comparison is
/// discretization-limited below it.
const LO_GRID_FLOOR: usize = 1 << 16;
/// Heights above this are reported but do not gate the Low kernel comparison.
const LO_GATE_MAX_Q: u64 = 8;

pub fn highlow(ctx: &Context, p: &HighLowParams, out: &mut Artifacts) -> Result<bool> {
    let n = p.N.unwrap_or(4096);
    let y = p.y.unwrap_or(1);
    let prog = progression(y, p.b)?;
    let qs = p.Q.clone().unwrap_or_else(|| vec![2, 4, 8, 16]);
    let r = p.r.unwrap_or(1.5);
    let families = p.families.clone().unwrap_or_else(default_hi_families);
    let tables = ctx.tables(n)?;
    let sets: Vec<(String, u64, Vec<i64>)> = families
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let seed = cell_seed_for(ctx.seed, &[y, prog.b(), n, i as u64]);
            Ok((f.label(), seed, f.generate(&tables, n, &prog, seed)?))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    let mut per_q = Vec::new();
    let mut passed = true;
    for &q in &qs {
        let mut cfg = DecompositionConfig::new(n, prog, q);
        let m = p.M.unwrap_or(cfg.m.max(LO_GRID_FLOOR));
        cfg = cfg.with_grid(m);
        // The requested cut is a floor: every Low point must stay inside the approximant.
        let q_cut = p.qcut.unwrap_or(64).max(y * q.saturating_sub(1) + 1).max(q);
        cfg = cfg.with_q_cut(q_cut);
        let warnings = cfg.validate_with_cap(ctx.memory_cap)?;
        let ops = HighLowOperators::new(&cfg)?;
        let (mut hi_max, mut lo_max) = (0.0f64, 0.0f64);
        for (label, seed, set) in &sets {
            let hi = ops.hi_l2_ratio(set)?;
            let lo = ops.lo_linf_ratio(set, r)?;
            hi_max = hi_max.max(hi);
            lo_max = lo_max.max(lo);
            for (kind, v, rr) in [("hi_l2", hi, None), ("lo_linf", lo, Some(r))] {
                rows.push(vec![
                    n.to_string(),
                    y.to_string(),
                    prog.b().to_string(),
                    q.to_string(),
                    q_cut.to_string(),
                    cfg.m.to_string(),
                    label.clone(),
                    seed.to_string(),
                    set.len().to_string(),
                    opt_num(rr),
                    kind.to_string(),
                    num(v),
                ]);
            }
        }
        let lo = lo_hat_profile(&cfg)?;
        let hi = hi_hat_profile(&cfg)?;
        let all = approximant_profile(n, &prog, q_cut, &cfg.cutoff, cfg.m)?;
        let partition = (0..cfg.m)
            .map(|k| (lo.values()[k] + hi.values()[k] - all.values()[k]).norm())
            .fold(0.0, f64::max);
        let (disc, peak) = lo_kernel_discrepancy(&cfg)?;
        let rel = if peak > 0.0 { disc / peak } else { disc };
        let gated = q <= LO_GATE_MAX_Q;
        passed &= partition <= 1e-10 && (!gated || rel <= 1e-3);
        per_q.push(json!({
            "Q": q, "q_cut": q_cut, "M": cfg.m, "hi_l2_max": hi_max, "lo_linf_max": lo_max,
            "partition_defect": partition, "lo_discrepancy_rel": rel, "lo_discrepancy_gated": gated,
            "warnings": warnings,
        }));
    }
    out.csv(
        "highlow.csv",
        &["N", "y", "b", "Q", "q_cut", "M", "family", "set_seed", "set_size", "r", "ratio_kind", "value"],
        rows,
    )?;
    let hi: Vec<f64> = per_q.iter().map(|v| v["hi_l2_max"].as_f64().unwrap_or(0.0)).collect();
    let xs: Vec<f64> = qs.iter().map(|&q| q as f64).collect();
    let exponent = if qs.len() >= 2 { loglog_slope(&xs, &hi) } else { None };
    summary(
        out,
        "highlow",
        ctx,
        passed,
        json!({ "N": n, "y": y, "b": prog.b(), "r": r, "per_Q": per_q, "hi_exponent": exponent }),
    )?;
    Ok(passed)
}

fn cell_seed_for(seed: u64, coords: &[u64]) -> u64 {
    primeavg::inequality_lab::families::cell_seed(seed, coords)
}

const SCAN_HEADER: [&str; 17] = [
    "y", "b", "r", "N", "family", "set_seed", "set_size", "adversarial", "lambda", "q_lambda", "ratio",
    "strong_ratio", "lo_measure", "hi_measure", "rest_measure", "seed", "command",
];

fn scan_rows<'a>(rep: &'a ScanReport, seed: u64, command: &'a str) -> impl Iterator<Item = Vec<String>> + 'a {
    let opt_u = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    rep.rows.iter().map(move |r| {
        vec![
            r.y.to_string(),
            r.b.to_string(),
            num(r.r),
            r.n.to_string(),
            r.family.clone(),
            r.set_seed.to_string(),
            r.set_size.to_string(),
            r.adversarial.to_string(),
            opt_num(r.lambda),
            opt_u(r.q_lambda),
            num(r.ratio),
            opt_num(r.strong_ratio),
            opt_u(r.lo_measure),
            opt_u(r.hi_measure),
            opt_u(r.rest_measure),
            seed.to_string(),
            command.to_string(),
        ]
    })
}

#[derive(Serialize)]
struct ScanSummary<'a> {
    parameters: &'a ScanParameters,
    cells: &'a [primeavg::inequality_lab::scan::CellSummary],
    max_ratio: f64,
    b_variation: Option<f64>,
    warnings: &'a [String],
    rows: usize,
}

use primeavg::inequality_lab::scan::ScanParameters;

fn scan_summary(rep: &ScanReport) -> ScanSummary<'_> {
    ScanSummary {
        parameters: &rep.parameters,
        cells: &rep.cells,
        max_ratio: rep.max_ratio,
        b_variation: rep.b_variation,
        warnings: &rep.warnings,
        rows: rep.rows.len(),
    }
}

pub fn improving(ctx: &Context, p: &ImprovingParams, out: &mut Artifacts) -> Result<bool> {
    let ns = p.N.clone().unwrap_or_else(|| vec![1 << 14, 1 << 15, 1 << 16]);
    let ys = p.y.clone().unwrap_or_else(|| vec![1]);
    let rs = p.r.clone().unwrap_or_else(|| vec![1.5]);
    let mut cfg = ImprovingConfig::new(ns.clone(), ys, rs, ctx.seed);
    cfg.bs = p.b.clone();
    if let Some(f) = &p.families {
        cfg.families = f.clone();
    }
    cfg.adversarial = p.adversarial.unwrap_or(false);
    if let Some(v) = p.floor_per_y {
        cfg.floor_per_y = v;
    }
    if let Some(v) = p.stability_factor {
        cfg.stability_factor = v;
    }
    let tables = ctx.tables(ns.iter().copied().max().unwrap_or(2))?;
    let rep = improving_scan(&tables, &cfg)?;
    out.csv("improving.csv", &SCAN_HEADER, scan_rows(&rep, ctx.seed, "improving"))?;
    summary(out, "improving", ctx, rep.passed, scan_summary(&rep))?;
    Ok(rep.passed)
}

pub fn maximal(ctx: &Context, p: &MaximalParams, out: &mut Artifacts) -> Result<bool> {
    let ns = p.N.clone().unwrap_or_else(|| (10..=14).map(|e| 1u64 << e).collect());
    let mut cfg = MaximalConfig::new(ns.clone(), p.y.unwrap_or(1), p.r.unwrap_or(2.0), ctx.seed);
    cfg.bs = p.b.clone();
    if let Some(l) = &p.lambdas {
        cfg.lambdas = l.clone();
    }
    if let Some(f) = &p.families {
        cfg.families = f.clone();
    }
    if let Some(v) = p.floor_per_y {
        cfg.floor_per_y = v;
    }
    cfg.split = p.qcut.map(|q_cut| SplitConfig { q_cut });
    let limit = p.max_b_variation.unwrap_or(1.5);
    let tables = ctx.tables(ns.iter().copied().max().unwrap_or(2))?;
    let rep = maximal_scan(&tables, &cfg)?;
    let uniform = rep.cells.len() < 2 || rep.b_variation.is_some_and(|v| v < limit);
    let passed = rep.passed && uniform;
    out.csv("maximal.csv", &SCAN_HEADER, scan_rows(&rep, ctx.seed, "maximal"))?;
    summary(out, "maximal", ctx, passed, json!({ "scan": scan_summary(&rep), "max_b_variation": limit }))?;
    Ok(passed)
}

pub fn ramanujan_avg(ctx: &Context, p: &RamanujanAvgParams, out: &mut Artifacts) -> Result<bool> {
    let qs = p.Q.clone().unwrap_or_else(|| vec![4, 8, 16, 32]);
    let y = p.y.unwrap_or(1);
    let prog = progression(y, p.b)?;
    let t = p.t.unwrap_or(2);
    let max_exp = p.max_exponent.unwrap_or(1.25);
    let mut rows = Vec::new();
    let mut vals = Vec::new();
    let mut warnings = Vec::new();
    for &q in &qs {
        let m = match p.M {
            Some(m) => m,
            None => q.checked_mul(q).and_then(|v| v.checked_mul(16 * y)).ok_or_else(|| anyhow::anyhow!("16·y·Q² overflows"))?,
        };
        let r = bourgain_average(q, m, &prog, t)?;
        warnings.extend(r.warnings.iter().cloned());
        let ratio = r.value / (q as f64).powf(max_exp);
        rows.push(vec![
            y.to_string(),
            prog.b().to_string(),
            t.to_string(),
            q.to_string(),
            m.to_string(),
            num(r.value),
            num(ratio),
        ]);
        vals.push((q as f64, r.value, ratio));
    }
    out.csv("ramanujan_avg.csv", &["y", "b", "t", "Q", "M", "value", "ratio_to_Q_pow"], rows)?;
    let xs: Vec<f64> = vals.iter().map(|v| v.0).collect();
    let ys: Vec<f64> = vals.iter().map(|v| v.1).collect();
    let exponent = if vals.len() >= 2 { loglog_slope(&xs, &ys) } else { None };
    let max_ratio = vals.iter().map(|v| v.2).fold(0.0, f64::max);
    let check = ctx.fixtures.check("bourgain_ratio_bound", max_ratio)?;
    let passed = exponent.is_none_or(|e| e <= max_exp) && check.passed;
    summary(
        out,
        "ramanujan-avg",
        ctx,
        passed,
        json!({
            "y": y, "b": prog.b(), "t": t, "exponent_limit": max_exp, "fitted_exponent": exponent,
            "max_ratio": max_ratio, "fixture": check, "warnings": warnings,
        }),
    )?;
    Ok(passed)
}

pub fn sw(ctx: &Context, p: &SwParams, out: &mut Artifacts) -> Result<bool> {
    let xs = p.x.clone().unwrap_or_else(|| vec![1_000, 10_000, 100_000, 1_000_000]);
    let y = p.y.unwrap_or(1);
    let prog = progression(y, p.b)?;
    let j = p.J.unwrap_or(2);
    let tables = ctx.tables(xs.iter().copied().max().unwrap_or(2))?;
    let rep = tables.sw_error_report(&xs, &prog, j)?;
    out.csv(
        "sw.csv",
        &["y", "b", "x", "psi", "main_term", "rel_error"],
        rep.rows.iter().map(|r| {
            vec![y.to_string(), prog.b().to_string(), r.x.to_string(), num(r.psi), num(r.main_term), num(r.rel_error)]
        }),
    )?;
    let decreasing = rep.rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error);
    summary(out, "sw", ctx, true, json!({ "report": rep, "strictly_decreasing": decreasing }))?;
    Ok(true)
}
