//! Parameter sweeps for the improving and maximal inequalities.

use crate::arith::elementary::reduced_residues;
use crate::arith::{ArithTables, Progression};
use crate::error::{invalid, Result};
use crate::fixtures::Provenance;
use crate::highlow::ratios::HighLowOperators;
use crate::highlow::DecompositionConfig;
use crate::inequality_lab::families::{cell_seed, default_improving_families, FamilySpec};
use crate::inequality_lab::kernel::AKernel;
use crate::stats::loglog_slope;
use crate::transform::CyclicSignal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default desk-scale floor: scans require `N ≥ floor_per_y · y`.
pub const DEFAULT_FLOOR_PER_Y: u64 = 1 << 10;

fn default_floor() -> u64 {
    DEFAULT_FLOOR_PER_Y
}

fn default_stability() -> f64 {
    2.0
}

fn default_improving() -> Vec<FamilySpec> {
    default_improving_families()
}

fn default_maximal_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Random { density: 0.125 },
        FamilySpec::Interval { frac: 0.125 },
        FamilySpec::ProgressionSegment { frac: 0.125 },
        FamilySpec::SinglePoint { frac: 0.0 },
    ]
}

fn default_lambdas() -> Vec<f64> {
    (1..=6).map(|k| (-(k as f64)).exp2()).collect()
}

/// Default residue: 0 for `y = 1`, else 1.
pub fn default_residue(y: u64) -> u64 {
    u64::from(y > 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImprovingConfig {
    /// Dyadic scales.
    pub ns: Vec<u64>,
    pub ys: Vec<u64>,
    /// Residues per `y`; `None` takes [`default_residue`].
    #[serde(default)]
    pub bs: Option<Vec<u64>>,
    pub rs: Vec<f64>,
    #[serde(default = "default_improving")]
    pub families: Vec<FamilySpec>,
    /// Adds the greedy Λ-weighted family, reported separately.
    #[serde(default)]
    pub adversarial: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_floor")]
    pub floor_per_y: u64,
    /// Largest allowed ratio change between consecutive top scales.
    #[serde(default = "default_stability")]
    pub stability_factor: f64,
}

impl ImprovingConfig {
    pub fn new(ns: Vec<u64>, ys: Vec<u64>, rs: Vec<f64>, seed: u64) -> Self {
        ImprovingConfig {
            ns,
            ys,
            bs: None,
            rs,
            families: default_improving_families(),
            adversarial: false,
            seed,
            floor_per_y: DEFAULT_FLOOR_PER_Y,
            stability_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitConfig {
    /// Lower bound for the denominator ceiling of the split.
    pub q_cut: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaximalConfig {
    pub ns: Vec<u64>,
    pub y: u64,
    /// `None` sweeps every `b ∈ 𝔸_y`.
    #[serde(default)]
    pub bs: Option<Vec<u64>>,
    pub r: f64,
    #[serde(default = "default_lambdas")]
    pub lambdas: Vec<f64>,
    #[serde(default = "default_maximal_families")]
    pub families: Vec<FamilySpec>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_floor")]
    pub floor_per_y: u64,
    /// Also measure the Lo/Hi/remainder pieces at `Q(λ)`.
    #[serde(default)]
    pub split: Option<SplitConfig>,
}

impl MaximalConfig {
    pub fn new(ns: Vec<u64>, y: u64, r: f64, seed: u64) -> Self {
        MaximalConfig {
            ns,
            y,
            bs: None,
            r,
            lambdas: default_lambdas(),
            families: default_maximal_families(),
            seed,
            floor_per_y: DEFAULT_FLOOR_PER_Y,
            split: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum ScanParameters {
    Improving(ImprovingConfig),
    Maximal(MaximalConfig),
}

/// One measured ratio; with the report parameters and `set_seed` it can be
/// recomputed in isolation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub y: u64,
    pub b: u64,
    pub r: f64,
    /// Scale, or the largest scale for maximal rows.
    pub n: u64,
    pub family: String,
    pub set_seed: u64,
    pub set_size: usize,
    pub adversarial: bool,
    pub lambda: Option<f64>,
    pub q_lambda: Option<u64>,
    pub ratio: f64,
    pub strong_ratio: Option<f64>,
    pub lo_measure: Option<u64>,
    pub hi_measure: Option<u64>,
    pub rest_measure: Option<u64>,
}

/// Per `(y, b, r)` summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub y: u64,
    pub b: u64,
    pub r: f64,
    /// Largest non-adversarial ratio at each scale.
    pub max_by_n: Vec<(u64, f64)>,
    pub max_ratio: f64,
    pub adversarial_max: Option<f64>,
    pub fitted_exponent: Option<f64>,
    /// Largest ratio change between consecutive scales among the top three.
    pub max_change: f64,
    pub stable: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub parameters: ScanParameters,
    pub rows: Vec<ScanRow>,
    pub cells: Vec<CellSummary>,
    pub max_ratio: f64,
    /// Largest over smallest per-`b` maximum (maximal scans).
    pub b_variation: Option<f64>,
    pub passed: bool,
    pub warnings: Vec<String>,
    pub provenance: Provenance,
}

fn check_scales(ns: &[u64], y: u64, floor_per_y: u64, tables: &ArithTables) -> Result<()> {
    if ns.is_empty() {
        return Err(invalid("ns", "scale list is empty"));
    }
    for &n in ns {
        if !n.is_power_of_two() {
            return Err(invalid("ns", format!("{n} is not a power of two")));
        }
        if n < floor_per_y * y {
            return Err(invalid("ns", format!("N = {n} is below the floor {floor_per_y}·y = {}", floor_per_y * y)));
        }
        if n > tables.bound() + 1 {
            return Err(invalid("ns", format!("N = {n} exceeds the table bound {}", tables.bound())));
        }
    }
    Ok(())
}

fn residues(y: u64, bs: &Option<Vec<u64>>, all_default: bool) -> Result<Vec<Progression>> {
    match bs {
        Some(bs) => bs.iter().map(|&b| Progression::new(y, b)).collect(),
        None if all_default => Ok(Progression::all_with_spacing(y)),
        None => Ok(vec![Progression::new(y, default_residue(y))?]),
    }
}

fn summarize(y: u64, b: u64, r: f64, rows: &[&ScanRow], stability: f64) -> CellSummary {
    let mut ns: Vec<u64> = rows.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let max_by_n: Vec<(u64, f64)> = ns
        .iter()
        .map(|&n| {
            let m = rows
                .iter()
                .filter(|r| r.n == n && !r.adversarial)
                .map(|r| r.ratio)
                .fold(0.0, f64::max);
            (n, m)
        })
        .collect();
    let adv = rows.iter().filter(|r| r.adversarial).map(|r| r.ratio).fold(None, |a: Option<f64>, v| {
        Some(a.map_or(v, |a| a.max(v)))
    });
    let top = &max_by_n[max_by_n.len().saturating_sub(3)..];
    let max_change = top
        .windows(2)
        .map(|w| (w[1].1 / w[0].1).max(w[0].1 / w[1].1))
        .fold(1.0, f64::max);
    let xs: Vec<f64> = max_by_n.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = max_by_n.iter().map(|p| p.1).collect();
    CellSummary {
        y,
        b,
        r,
        max_ratio: ys.iter().cloned().fold(0.0, f64::max),
        max_by_n,
        adversarial_max: adv,
        fitted_exponent: loglog_slope(&xs, &ys),
        max_change,
        stable: max_change < stability,
    }
}

/// Fixed-scale improving ratios over `(y, b, N, r, F)`.
pub fn improving_scan(tables: &ArithTables, cfg: &ImprovingConfig) -> Result<ScanReport> {
    if cfg.ys.is_empty() || cfg.rs.is_empty() || cfg.families.is_empty() {
        return Err(invalid("improving", "ys, rs and families must be non-empty"));
    }
    for &r in &cfg.rs {
        crate::highlow::ratios::check_r(r)?;
    }
    for f in &cfg.families {
        f.validate()?;
    }
    let mut families = cfg.families.clone();
    if cfg.adversarial {
        families.push(FamilySpec::Greedy { frac: 0.25 });
    }
    let mut cells = Vec::new();
    for &y in &cfg.ys {
        check_scales(&cfg.ns, y, cfg.floor_per_y, tables)?;
        for prog in residues(y, &cfg.bs, false)? {
            for &n in &cfg.ns {
                cells.push((prog, n));
            }
        }
    }
    let rows: Vec<Vec<ScanRow>> = cells
        .par_iter()
        .map(|&(prog, n)| -> Result<Vec<ScanRow>> {
            let kernel = AKernel::with_default_grid(tables, n, prog)?;
            let mut out = Vec::new();
            for (fi, fam) in families.iter().enumerate() {
                let set_seed = cell_seed(cfg.seed, &[prog.y(), prog.b(), n, fi as u64]);
                let set = fam.generate(tables, n, &prog, set_seed)?;
                for &r in &cfg.rs {
                    out.push(ScanRow {
                        y: prog.y(),
                        b: prog.b(),
                        r,
                        n,
                        family: fam.label(),
                        set_seed,
                        set_size: set.len(),
                        adversarial: fam.is_adversarial(),
                        lambda: None,
                        q_lambda: None,
                        ratio: kernel.improving_ratio(r, &set)?,
                        strong_ratio: None,
                        lo_measure: None,
                        hi_measure: None,
                        rest_measure: None,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<ScanRow> = rows.into_iter().flatten().collect();
    let mut summaries = Vec::new();
    for &y in &cfg.ys {
        for prog in residues(y, &cfg.bs, false)? {
            for &r in &cfg.rs {
                let sel: Vec<&ScanRow> = rows.iter().filter(|x| x.y == y && x.b == prog.b() && x.r == r).collect();
                summaries.push(summarize(y, prog.b(), r, &sel, cfg.stability_factor));
            }
        }
    }
    let max_ratio = summaries.iter().map(|c| c.max_ratio).fold(0.0, f64::max);
    let passed = summaries.iter().all(|c| c.stable);
    Ok(ScanReport {
        parameters: ScanParameters::Improving(cfg.clone()),
        rows,
        cells: summaries,
        max_ratio,
        b_variation: None,
        passed,
        warnings: Vec::new(),
        provenance: Provenance::current(),
    })
}

/// Power of two nearest to `λ^{−1 + r/2}` (at least 1).
pub fn q_lambda(lambda: f64, r: f64) -> u64 {
    let target = lambda.powf(-1.0 + r / 2.0);
    let e = target.log2().round().max(0.0) as u32;
    1u64 << e.min(20)
}

fn count_above(s: &CyclicSignal, level: f64) -> u64 {
    s.values().iter().filter(|v| v.abs() > level).count() as u64
}

/// Weak-type ratios `λ·|{sup_N |A_N 1_F| > λ}|^{1/r} / |F|^{1/r}`.
pub fn maximal_scan(tables: &ArithTables, cfg: &MaximalConfig) -> Result<ScanReport> {
    check_scales(&cfg.ns, cfg.y, cfg.floor_per_y, tables)?;
    if !(cfg.r > 1.0) || !cfg.r.is_finite() {
        return Err(invalid("r", format!("{} must be a finite number above 1", cfg.r)));
    }
    if cfg.lambdas.is_empty() || cfg.lambdas.iter().any(|&l| !(l > 0.0 && l < 1.0)) {
        return Err(invalid("lambdas", "need a non-empty grid inside (0, 1)"));
    }
    if cfg.families.is_empty() {
        return Err(invalid("families", "must be non-empty"));
    }
    for f in &cfg.families {
        f.validate()?;
    }
    let n_max = *cfg.ns.iter().max().expect("non-empty");
    let m = (4 * n_max) as usize;
    let progs = residues(cfg.y, &cfg.bs, true)?;
    let mut warnings = Vec::new();
    let per_b: Vec<Vec<ScanRow>> = progs
        .par_iter()
        .map(|&prog| -> Result<Vec<ScanRow>> {
            let kernels: Vec<AKernel> = cfg
                .ns
                .iter()
                .map(|&n| AKernel::new(tables, n, prog, m))
                .collect::<Result<_>>()?;
            let mut out = Vec::new();
            for (fi, fam) in cfg.families.iter().enumerate() {
                let set_seed = cell_seed(cfg.seed, &[prog.y(), prog.b(), n_max, fi as u64]);
                let set = fam.generate(tables, n_max, &prog, set_seed)?;
                let sup = crate::inequality_lab::kernel::maximal_apply(&kernels, &set)?;
                let k = set.len() as f64;
                let strong = sup.norm(cfg.r) / k.powf(1.0 / cfg.r);
                for &lambda in &cfg.lambdas {
                    let q = q_lambda(lambda, cfg.r);
                    let count = count_above(&sup, lambda);
                    let (lo_m, hi_m, rest_m) = match cfg.split {
                        Some(split) => {
                            let (a, b, c) = split_measures(&kernels, prog, q, split.q_cut, &set, lambda)?;
                            (Some(a), Some(b), Some(c))
                        }
                        None => (None, None, None),
                    };
                    out.push(ScanRow {
                        y: prog.y(),
                        b: prog.b(),
                        r: cfg.r,
                        n: n_max,
                        family: fam.label(),
                        set_seed,
                        set_size: set.len(),
                        adversarial: fam.is_adversarial(),
                        lambda: Some(lambda),
                        q_lambda: Some(q),
                        ratio: lambda * (count as f64).powf(1.0 / cfg.r) / k.powf(1.0 / cfg.r),
                        strong_ratio: Some(strong),
                        lo_measure: lo_m,
                        hi_measure: hi_m,
                        rest_measure: rest_m,
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<ScanRow> = per_b.into_iter().flatten().collect();
    let cells: Vec<CellSummary> = progs
        .iter()
        .map(|p| {
            let sel: Vec<&ScanRow> = rows.iter().filter(|x| x.b == p.b()).collect();
            summarize(cfg.y, p.b(), cfg.r, &sel, f64::INFINITY)
        })
        .collect();
    let maxes: Vec<f64> = cells.iter().map(|c| c.max_ratio).collect();
    let max_ratio = maxes.iter().cloned().fold(0.0, f64::max);
    let min_b = maxes.iter().cloned().fold(f64::INFINITY, f64::min);
    if reduced_residues(cfg.y).len() != progs.len() {
        warnings.push("b sweep restricted to the configured residues".into());
    }
    Ok(ScanReport {
        parameters: ScanParameters::Maximal(cfg.clone()),
        rows,
        cells,
        max_ratio,
        b_variation: (min_b > 0.0).then(|| max_ratio / min_b),
        passed: max_ratio.is_finite(),
        warnings,
        provenance: Provenance::current(),
    })
}

/// Measures of `{sup_N |Lo_N 1_F| > λ/3}`, `{sup_N |Hi_N 1_F| > λ/3}` and
/// `{sup_N |(A_N − Lo_N − Hi_N) 1_F| > λ/3}`.
fn split_measures(
    kernels: &[AKernel],
    prog: Progression,
    q: u64,
    q_cut: u64,
    set: &[i64],
    lambda: f64,
) -> Result<(u64, u64, u64)> {
    let m = kernels[0].grid_size();
    let f = CyclicSignal::indicator(m, set);
    let mut lo_sup = CyclicSignal::zeros(m);
    let mut hi_sup = CyclicSignal::zeros(m);
    let mut rest_sup = CyclicSignal::zeros(m);
    for k in kernels {
        let cfg = DecompositionConfig::new(k.n(), prog, q)
            .with_grid(m)
            .with_q_cut(q_cut.max(prog.y() * (q - 1) + 1).max(q));
        let ops = HighLowOperators::new(&cfg)?;
        let lo = ops.lo_apply(&f)?;
        let hi = ops.hi_apply(&f)?;
        let a = k.apply(&f)?;
        let rest = CyclicSignal::from_values(
            a.values().iter().zip(lo.values()).zip(hi.values()).map(|((a, l), h)| a - l - h).collect(),
        );
        lo_sup.abs_max_assign(&lo);
        hi_sup.abs_max_assign(&hi);
        rest_sup.abs_max_assign(&rest);
    }
    let t = lambda / 3.0;
    Ok((count_above(&lo_sup, t), count_above(&hi_sup, t), count_above(&rest_sup, t)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_policy() {
        assert_eq!(q_lambda(0.25, 2.0), 1);
        assert_eq!(q_lambda(1.0 / 64.0, 1.5), 1 << 2);
    }

    #[test]
    fn improving_single_case_matches_ratio() {
        let t = ArithTables::build(1 << 12).unwrap();
        let mut cfg = ImprovingConfig::new(vec![1 << 11], vec![1], vec![1.5], 4);
        cfg.families = vec![FamilySpec::Interval { frac: 0.5 }];
        let rep = improving_scan(&t, &cfg).unwrap();
        assert_eq!(rep.rows.len(), 1);
        let set: Vec<i64> = (0..1024).collect();
        let direct = crate::inequality_lab::improving_ratio(&t, 1 << 11, Progression::all(), 1.5, &set).unwrap();
        assert!((rep.rows[0].ratio - direct).abs() < 1e-12);
    }

    #[test]
    fn improving_validation() {
        let t = ArithTables::build(1 << 12).unwrap();
        assert!(improving_scan(&t, &ImprovingConfig::new(vec![1000], vec![1], vec![1.5], 0)).is_err());
        assert!(improving_scan(&t, &ImprovingConfig::new(vec![1 << 10], vec![3], vec![1.5], 0)).is_err());
        assert!(improving_scan(&t, &ImprovingConfig::new(vec![1 << 11], vec![1], vec![2.5], 0)).is_err());
    }

    #[test]
    fn maximal_single_scale_is_fixed_scale() {
        let t = ArithTables::build(1 << 12).unwrap();
        let mut cfg = MaximalConfig::new(vec![1 << 10], 1, 2.0, 1);
        cfg.families = vec![FamilySpec::Interval { frac: 0.25 }];
        cfg.lambdas = vec![0.5];
        let rep = maximal_scan(&t, &cfg).unwrap();
        let k = AKernel::new(&t, 1 << 10, Progression::all(), 1 << 12).unwrap();
        let set: Vec<i64> = (0..256).collect();
        let out = k.apply_set(&set).unwrap();
        let count = out.values().iter().filter(|v| v.abs() > 0.5).count() as f64;
        assert!((rep.rows[0].ratio - 0.5 * (count / 256.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn split_columns_present() {
        let t = ArithTables::build(1 << 12).unwrap();
        let mut cfg = MaximalConfig::new(vec![1 << 10, 1 << 11], 3, 1.5, 1);
        cfg.floor_per_y = 1;
        cfg.bs = Some(vec![1]);
        cfg.lambdas = vec![0.25];
        cfg.families = vec![FamilySpec::Random { density: 0.125 }];
        cfg.split = Some(SplitConfig { q_cut: 8 });
        let rep = maximal_scan(&t, &cfg).unwrap();
        assert!(rep.rows[0].lo_measure.is_some() && rep.rows[0].rest_measure.is_some());
    }
}
