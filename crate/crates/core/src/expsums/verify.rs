//! Exhaustive (or seeded-sampled) checks of the exact identities, producing
//! one row per tested tuple.

use crate::arith::elementary::{gcd, reduced_residues};
use crate::arith::Progression;
use crate::expsums::gauss::{count_height_class, gauss_upsilon_closed, gauss_upsilon_direct, height};
use crate::expsums::progression_sums::{
    progression_ramanujan_closed, progression_ramanujan_direct, restricted_units,
};
use crate::expsums::ramanujan::{
    divisor_tau_check, ramanujan_period, ramanujan_sum_closed, ramanujan_sum_complex,
};
use crate::arith::elementary::mobius;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Default cap on tuples per identity.
pub const DEFAULT_SAMPLE_CAP: usize = 100_000;

/// How a row is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `|lhs − rhs| ≤ tol`.
    Equal,
    /// `|lhs| ≤ |rhs| + tol`.
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub q: u64,
    pub y: u64,
    pub b: u64,
    pub a_or_x: i64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs − rhs|` for equalities, the excess `max(|lhs| − |rhs|, 0)` for bounds.
    pub abs_err: f64,
    pub tol: f64,
    pub relation: Relation,
}

impl IdentityRow {
    #[allow(clippy::too_many_arguments)]
    fn new(
        identity: &'static str,
        q: u64,
        y: u64,
        b: u64,
        a_or_x: i64,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
        relation: Relation,
    ) -> Self {
        let abs_err = match relation {
            Relation::Equal => (lhs - rhs).norm(),
            Relation::AtMost => (lhs.norm() - rhs.norm()).max(0.0),
        };
        IdentityRow { identity, q, y, b, a_or_x, lhs, rhs, abs_err, tol, relation }
    }

    pub fn passed(&self) -> bool {
        self.abs_err <= self.tol
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentitySuite {
    pub identity: &'static str,
    pub rows: Vec<IdentityRow>,
    /// Size of the full tuple grid.
    pub total_tuples: u64,
    pub sampled: bool,
}

impl IdentitySuite {
    fn exhaustive(identity: &'static str, rows: Vec<IdentityRow>) -> Self {
        let total_tuples = rows.len() as u64;
        IdentitySuite { identity, rows, total_tuples, sampled: false }
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn passed(&self) -> bool {
        !self.rows.is_empty() && self.failures() == 0
    }

    pub fn max_abs_err(&self) -> f64 {
        self.rows.iter().map(|r| r.abs_err).fold(0.0, f64::max)
    }

    /// Largest `abs_err / tol`; below 1 means every row passed.
    pub fn max_scaled_err(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| if r.tol > 0.0 { r.abs_err / r.tol } else if r.abs_err > 0.0 { f64::INFINITY } else { 0.0 })
            .fold(0.0, f64::max)
    }
}

/// Grid of `(q, a)` and `(y, b)` pairs with `a ∈ 𝔸_q`, `b ∈ 𝔸_y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TupleGrid {
    pub q_max: u64,
    pub y_max: u64,
    /// `None` runs every tuple.
    pub sample_cap: Option<usize>,
    pub seed: u64,
}

impl TupleGrid {
    pub fn new(q_max: u64, y_max: u64, seed: u64) -> Self {
        TupleGrid { q_max, y_max, sample_cap: Some(DEFAULT_SAMPLE_CAP), seed }
    }

    /// `(q, a, y, b)` tuples in lexicographic order, subsampled without
    /// replacement when the grid exceeds the cap.
    pub fn tuples(&self) -> (Vec<(u64, u64, u64, u64)>, u64, bool) {
        let qa: Vec<(u64, u64)> = (1..=self.q_max)
            .flat_map(|q| reduced_residues(q).into_iter().map(move |a| (q, a)))
            .collect();
        let yb: Vec<(u64, u64)> = (1..=self.y_max)
            .flat_map(|y| reduced_residues(y).into_iter().map(move |b| (y, b)))
            .collect();
        let total = qa.len() * yb.len();
        let decode = |i: usize| {
            let (q, a) = qa[i / yb.len()];
            let (y, b) = yb[i % yb.len()];
            (q, a, y, b)
        };
        match self.sample_cap {
            Some(cap) if total > cap => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut idx = rand::seq::index::sample(&mut rng, total, cap).into_vec();
                idx.sort_unstable();
                (idx.into_iter().map(decode).collect(), total as u64, true)
            }
            _ => ((0..total).map(decode).collect(), total as u64, false),
        }
    }

    fn run<F>(&self, identity: &'static str, f: F) -> IdentitySuite
    where
        F: Fn(u64, u64, Progression) -> IdentityRow + Sync,
    {
        let (tuples, total_tuples, sampled) = self.tuples();
        let rows = tuples
            .par_iter()
            .map(|&(q, a, y, b)| f(q, a, Progression::new(y, b).expect("b is a unit")))
            .collect();
        IdentitySuite { identity, rows, total_tuples, sampled }
    }
}

/// Direct against closed-form Ramanujan sums, `q ≤ q_max`, `x ∈ [0, 2q)`.
pub fn suite_ramanujan_closed(q_max: u64) -> IdentitySuite {
    let rows = (1..=q_max)
        .into_par_iter()
        .flat_map_iter(|q| {
            (0..2 * q as i64).map(move |x| {
                let closed = ramanujan_sum_closed(q, x) as f64;
                IdentityRow::new(
                    "ramanujan_closed",
                    q,
                    1,
                    0,
                    x,
                    ramanujan_sum_complex(q, x),
                    Complex64::new(closed, 0.0),
                    1e-8,
                    Relation::Equal,
                )
            })
        })
        .collect();
    IdentitySuite::exhaustive("ramanujan_closed", rows)
}

/// `Σ_{d|r} τ_d(x) = r·1_{r|x}` after rounding, `r ≤ r_max`, `x ∈ [0, 2r)`.
pub fn suite_divisor_tau(r_max: u64) -> IdentitySuite {
    let rows = (1..=r_max)
        .into_par_iter()
        .flat_map_iter(|r| {
            (0..2 * r as i64).map(move |x| {
                let want = if x % r as i64 == 0 { r as f64 } else { 0.0 };
                IdentityRow::new(
                    "divisor_tau",
                    r,
                    1,
                    0,
                    x,
                    Complex64::new(divisor_tau_check(r, x) as f64, 0.0),
                    Complex64::new(want, 0.0),
                    0.0,
                    Relation::Equal,
                )
            })
        })
        .collect();
    IdentitySuite::exhaustive("divisor_tau", rows)
}

/// Restricted Ramanujan sum, direct against the three-case closed form.
pub fn suite_progression_ramanujan(grid: &TupleGrid) -> IdentitySuite {
    grid.run("progression_ramanujan", |q, a, prog| {
        let (y, b) = (prog.y(), prog.b());
        let lhs = progression_ramanujan_direct(q, y, b as i64, a as i64).expect("valid tuple");
        let rhs = progression_ramanujan_closed(q, y, b as i64, a as i64).expect("valid tuple");
        IdentityRow::new("progression_ramanujan", q, y, b, a as i64, lhs, rhs, 1e-8 * q as f64, Relation::Equal)
    })
}

/// `Υ` by direct summation against its closed form.
pub fn suite_upsilon(grid: &TupleGrid) -> IdentitySuite {
    grid.run("upsilon", |q, a, prog| {
        let lhs = gauss_upsilon_direct(a as i64, q, &prog).expect("valid tuple");
        let rhs = gauss_upsilon_closed(a as i64, q, &prog).expect("valid tuple");
        IdentityRow::new("upsilon", q, prog.y(), prog.b(), a as i64, lhs, rhs, 1e-8 * q as f64, Relation::Equal)
    })
}

/// `|Υ(a/q)| ≤ C·h^{−1+ε}` for height `h > 0`, and `Υ = 0` when `h = 0`.
pub fn suite_height_decay(grid: &TupleGrid, eps: f64, constant: f64) -> IdentitySuite {
    grid.run("height_decay", move |q, a, prog| {
        let ups = gauss_upsilon_direct(a as i64, q, &prog).expect("valid tuple");
        let h = height(q, prog.y());
        let bound = if h == 0 { 0.0 } else { constant * (h as f64).powf(eps - 1.0) };
        IdentityRow::new(
            "height_decay",
            q,
            prog.y(),
            prog.b(),
            a as i64,
            Complex64::new(ups.norm(), 0.0),
            Complex64::new(bound, 0.0),
            1e-9,
            Relation::AtMost,
        )
    })
}

/// Progression Cohen identity over `q ≤ q_max`, `y ≤ y_max`, `b ∈ 𝔸_y`, `x ∈ [0, q)`.
pub fn suite_cohen(q_max: u64, y_max: u64) -> IdentitySuite {
    let rows = (1..=q_max)
        .into_par_iter()
        .flat_map_iter(|q| {
            // τ_q is q-periodic; tabulate the direct sums once per modulus.
            let direct: Vec<Complex64> = (0..q as i64).map(|x| ramanujan_sum_complex(q, x)).collect();
            let mut out = Vec::new();
            for y in 1..=y_max {
                let g = gcd(q, y);
                let m = q / g;
                let tau_m = ramanujan_period(m);
                let tau_g = ramanujan_period(g);
                for b in reduced_residues(y) {
                    for x in 0..q as i64 {
                        let lhs: Complex64 = restricted_units(q, g, b as i64)
                            .map(|t| direct[((x + t as i64) % q as i64) as usize])
                            .sum();
                        let rhs = if gcd(g, m) > 1 {
                            0.0
                        } else {
                            (mobius(m)
                                * tau_m[x.rem_euclid(m as i64) as usize]
                                * tau_g[(x + b as i64).rem_euclid(g as i64) as usize]) as f64
                        };
                        out.push(IdentityRow::new(
                            "cohen_progression",
                            q,
                            y,
                            b,
                            x,
                            lhs,
                            Complex64::new(rhs, 0.0),
                            1e-8 * q as f64,
                            Relation::Equal,
                        ));
                    }
                }
            }
            out
        })
        .collect();
    IdentitySuite::exhaustive("cohen_progression", rows)
}

/// Enumerated height-class counts against `φ(r)·y/gcd(y, r)`.
pub fn suite_height_class(y_max: u64, r_max: u64) -> IdentitySuite {
    height_class_rows("height_class", y_max, r_max, |c| c.formula)
}

/// Enumerated height-class counts against `φ(r)·y·1_{gcd(y,r)=1}`.
pub fn suite_height_class_corrected(y_max: u64, r_max: u64) -> IdentitySuite {
    height_class_rows("height_class_corrected", y_max, r_max, |c| c.corrected)
}

fn height_class_rows(
    identity: &'static str,
    y_max: u64,
    r_max: u64,
    rhs: impl Fn(&crate::expsums::gauss::HeightClassCount) -> u64 + Sync,
) -> IdentitySuite {
    let rows = (1..=y_max)
        .into_par_iter()
        .flat_map_iter(|y| {
            let rhs = &rhs;
            (1..=r_max).map(move |r| {
                let c = count_height_class(y, r).expect("positive arguments");
                IdentityRow::new(
                    identity,
                    0,
                    y,
                    0,
                    r as i64,
                    Complex64::new(c.enumerated as f64, 0.0),
                    Complex64::new(rhs(&c) as f64, 0.0),
                    0.0,
                    Relation::Equal,
                )
            })
        })
        .collect();
    IdentitySuite::exhaustive(identity, rows)
}

/// Parameters for [`run_all`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub grid: TupleGrid,
    pub ramanujan_q_max: u64,
    pub divisor_r_max: u64,
    pub cohen_q_max: u64,
    pub cohen_y_max: u64,
    pub height_class_max: u64,
    pub height_eps: f64,
    pub height_constant: f64,
}

impl VerifyConfig {
    pub fn new(q_max: u64, y_max: u64, seed: u64, height_constant: f64) -> Self {
        VerifyConfig {
            grid: TupleGrid::new(q_max, y_max, seed),
            ramanujan_q_max: 128,
            divisor_r_max: 200,
            cohen_q_max: 64.min(q_max),
            cohen_y_max: 24.min(y_max),
            height_class_max: 60,
            height_eps: 0.3,
            height_constant,
        }
    }
}

/// Suites whose right side is a closed form that disagrees with enumeration;
/// they are reported but do not decide a verification run.
pub const KNOWN_DISCREPANCIES: &[&str] = &["height_class"];

/// True when every suite outside [`KNOWN_DISCREPANCIES`] passed.
pub fn gating_passed(suites: &[IdentitySuite]) -> bool {
    suites
        .iter()
        .filter(|s| !KNOWN_DISCREPANCIES.contains(&s.identity))
        .all(IdentitySuite::passed)
}

/// Every identity suite, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<IdentitySuite> {
    vec![
        suite_ramanujan_closed(cfg.ramanujan_q_max),
        suite_divisor_tau(cfg.divisor_r_max),
        suite_progression_ramanujan(&cfg.grid),
        suite_upsilon(&cfg.grid),
        suite_cohen(cfg.cohen_q_max, cfg.cohen_y_max),
        suite_height_decay(&cfg.grid, cfg.height_eps, cfg.height_constant),
        suite_height_class(cfg.height_class_max, cfg.height_class_max),
        suite_height_class_corrected(cfg.height_class_max, cfg.height_class_max),
    ]
}
