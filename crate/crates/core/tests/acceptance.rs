//! Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_FAILURES` are evaluated exactly as stated and are
//! expected to print FAIL; the binary exits non-zero if any other criterion
//! fails or if a known failure starts passing.

mod common;

use common::{brute_convolve, direct_average, units};
use primeavg::arith::{ArithTables, Progression};
use primeavg::expsums::verify::{suite_cohen, suite_divisor_tau, suite_progression_ramanujan, suite_upsilon, TupleGrid};
use primeavg::expsums::{bourgain_average, count_height_class};
use primeavg::fixtures::Fixtures;
use primeavg::highlow::ratios::HighLowOperators;
use primeavg::highlow::{hi_hat_profile, lo_hat_profile, lo_kernel_discrepancy, DecompositionConfig};
use primeavg::inequality_lab::scan::default_residue;
use primeavg::inequality_lab::*;
use primeavg::multiplier::{approx_error_profile, approximant_profile, near_zero_error, CutoffSpec};
use primeavg::stats::loglog_slope;
use primeavg::transform::{convolve, CyclicSignal};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;
use std::time::{Duration, Instant};

/// Height-class closed form (criterion 4) and the Bourgain exponent for
/// `y = 12` (criterion 5).
const KNOWN_FAILURES: &[u32] = &[4, 5];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool")
}

fn prog(y: u64) -> Progression {
    Progression::new(y, default_residue(y)).unwrap()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let (a, b) = pool(1).install(|| {
        let grid = TupleGrid::new(96, 36, 1);
        (suite_progression_ramanujan(&grid), suite_upsilon(&grid))
    });
    let elapsed = start.elapsed();
    let ok = a.failures() == 0 && b.failures() == 0 && elapsed < Duration::from_secs(300);
    outcome(
        ok,
        format!(
            "restricted sums {} tuples, max err/tolerance {:.2e}; Υ {} tuples, max err/tolerance {:.2e}; {:.1?} single-threaded",
            a.rows.len(),
            a.max_scaled_err(),
            b.rows.len(),
            b.max_scaled_err(),
            elapsed
        ),
    )
}

fn c2() -> Outcome {
    let s = suite_cohen(64, 24);
    let bad = s.rows.iter().filter(|r| !(r.abs_err < 1e-8 * r.q as f64)).count();
    outcome(bad == 0, format!("{} cases, {bad} failures, max err {:.2e}", s.rows.len(), s.max_abs_err()))
}

fn c3() -> Outcome {
    let s = suite_divisor_tau(200);
    let bad = s.rows.iter().filter(|r| r.lhs.re.round() != r.rhs.re).count();
    outcome(bad == 0, format!("{} cases, {bad} mismatches after rounding", s.rows.len()))
}

fn c4() -> Outcome {
    let mut bad = 0;
    let mut first = None;
    for y in 1..=60u64 {
        for r in 1..=60u64 {
            let c = count_height_class(y, r).unwrap();
            if c.enumerated != c.formula {
                bad += 1;
                first.get_or_insert((y, r, c.enumerated, c.formula));
            }
        }
    }
    let detail = match first {
        Some((y, r, e, f)) => format!("{bad}/3600 pairs differ; first y={y} r={r}: enumerated {e}, φ(r)·y/gcd(y,r) = {f}"),
        None => "all 3600 pairs agree".into(),
    };
    outcome(bad == 0, detail)
}

fn c5(fx: &Fixtures) -> Outcome {
    let start = Instant::now();
    let bound = fx.get("bourgain_ratio_bound").unwrap();
    let qs = [4u64, 8, 16, 32];
    let mut ok = true;
    let mut parts = Vec::new();
    for y in [1u64, 5, 12] {
        let p = prog(y);
        let vals: Vec<f64> = qs.iter().map(|&q| bourgain_average(q, 16 * y * q * q, &p, 2).unwrap().value).collect();
        let xs: Vec<f64> = qs.iter().map(|&q| q as f64).collect();
        let slope = loglog_slope(&xs, &vals).unwrap();
        let ratio = vals.iter().zip(&xs).map(|(v, q)| v / q.powf(1.25)).fold(0.0, f64::max);
        let good = slope <= 1.25 && bound.accepts(ratio);
        ok &= good;
        parts.push(format!("y={y}: exponent {slope:.3}, max LHS/Q^1.25 {ratio:.3}{}", if good { "" } else { " ✗" }));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    outcome(ok, format!("{}; {elapsed:.1?}", parts.join("; ")))
}

fn c6(fx: &Fixtures) -> Outcome {
    let tables = ArithTables::build(1 << 20).unwrap();
    let cut = CutoffSpec::smooth();
    let mut ok = true;
    let mut parts = Vec::new();
    for y in [1u64, 3] {
        let p = prog(y);
        let mut sups = Vec::new();
        let mut nzs = Vec::new();
        for e in [12u32, 16, 20] {
            let n = 1u64 << e;
            let a = approx_error_profile(&tables, n, &p, 16, &cut, 4 * n as usize).unwrap();
            let z = near_zero_error(&tables, n, &p, 2.0).unwrap();
            ok &= fx.check(&format!("approx_sup_y{y}_n{e}"), a.sup_error).unwrap().passed;
            ok &= fx.check(&format!("near_zero_y{y}_n{e}"), z.sup_error).unwrap().passed;
            sups.push(a.sup_error);
            nzs.push(z.sup_error);
        }
        ok &= sups[2] < sups[0] && nzs[0] > nzs[1] && nzs[1] > nzs[2];
        parts.push(format!(
            "y={y}: sup {:.4e} → {:.4e}, near-zero {:.3e} > {:.3e} > {:.3e}",
            sups[0], sups[2], nzs[0], nzs[1], nzs[2]
        ));
    }
    outcome(ok, parts.join("; "))
}

/// Configurations for criteria 7 and 8.
fn lo_configs() -> Vec<DecompositionConfig> {
    let mut v = Vec::new();
    for y in 1..=6u64 {
        for p in Progression::all_with_spacing(y) {
            for q in [1u64, 2, 4, 8] {
                v.push(DecompositionConfig::new(1 << 12, p, q).with_grid(1 << 16));
            }
        }
    }
    v
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut worst = (0.0f64, String::new());
    let mut min_shrink = f64::INFINITY;
    for cfg in lo_configs() {
        let (d16, peak) = lo_kernel_discrepancy(&cfg).unwrap();
        if peak == 0.0 {
            ok &= d16 == 0.0;
            continue;
        }
        let rel = d16 / peak;
        ok &= rel <= 1e-3;
        if rel > worst.0 {
            worst = (rel, format!("y={} b={} Q={}", cfg.prog.y(), cfg.prog.b(), cfg.q));
        }
        // Below 1e-12·peak the discrepancy is roundoff and cannot shrink.
        if rel > 1e-12 {
            let (d17, _) = lo_kernel_discrepancy(&cfg.with_grid(1 << 17)).unwrap();
            let shrink = d16 / d17;
            min_shrink = min_shrink.min(shrink);
            ok &= shrink >= 2.0;
        }
    }
    outcome(ok, format!("worst {:.3e}·peak at {}; smallest shrink on doubling M {min_shrink:.1}×", worst.0, worst.1))
}

fn hi_configs() -> Vec<DecompositionConfig> {
    let mut v = Vec::new();
    for y in [1u64, 3] {
        for q in [2u64, 4, 8, 16] {
            v.push(DecompositionConfig::new(1 << 16, prog(y), q).with_q_cut(64.max(y * (q - 1) + 1)));
        }
    }
    v
}

fn c8() -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0;
    for cfg in lo_configs().into_iter().chain(hi_configs()) {
        let lo = lo_hat_profile(&cfg).unwrap();
        let hi = hi_hat_profile(&cfg).unwrap();
        let all = approximant_profile(cfg.n, &cfg.prog, cfg.q_cut, &cfg.cutoff, cfg.m).unwrap();
        for k in 0..cfg.m {
            worst = worst.max((lo.values()[k] + hi.values()[k] - all.values()[k]).norm());
        }
        count += 1;
    }
    outcome(worst <= 1e-10, format!("{count} configs, max |Hi + Lo − approximant| {worst:.2e}"))
}

fn c9() -> Outcome {
    let n = 1u64 << 16;
    let tables = ArithTables::build(n).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for y in [1u64, 3] {
        let p = prog(y);
        let sets: Vec<Vec<i64>> = default_hi_families()
            .iter()
            .enumerate()
            .map(|(i, f)| f.generate(&tables, n, &p, i as u64).unwrap())
            .collect();
        let mut qs = Vec::new();
        let mut ratios = Vec::new();
        for cfg in hi_configs().into_iter().filter(|c| c.prog == p) {
            let ops = HighLowOperators::new(&cfg).unwrap();
            let best = sets.iter().map(|s| ops.hi_l2_ratio(s).unwrap()).fold(0.0, f64::max);
            qs.push(cfg.q as f64);
            ratios.push(best);
        }
        let slope = loglog_slope(&qs, &ratios).unwrap();
        ok &= slope <= -0.7;
        let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
        parts.push(format!("y={y}: exponent {slope:.3} (ratios {})", shown.join(", ")));
    }
    outcome(ok, parts.join("; "))
}

fn c10(fx: &Fixtures) -> Outcome {
    let start = Instant::now();
    let tables = ArithTables::build(1 << 18).unwrap();
    let cfg = ImprovingConfig::new(vec![1 << 14, 1 << 16, 1 << 18], vec![1, 3, 5], vec![1.5], 7);
    let rep = pool(8).install(|| improving_scan(&tables, &cfg)).unwrap();
    let elapsed = start.elapsed();
    let mut ok = elapsed < Duration::from_secs(900);
    let mut parts = Vec::new();
    for c in &rep.cells {
        let at = |n: u64| c.max_by_n.iter().find(|p| p.0 == n).unwrap().1;
        let (a, b) = (at(1 << 16), at(1 << 18));
        let change = (a / b).max(b / a);
        ok &= change < 2.0;
        parts.push(format!("y={}: {a:.4} → {b:.4}", c.y));
    }
    ok &= fx.check("improving_ratio_bound", rep.max_ratio).unwrap().passed;
    outcome(ok, format!("{}; {elapsed:.1?} on 8 workers", parts.join("; ")))
}

fn c11(fx: &Fixtures) -> Outcome {
    let tables = ArithTables::build(1 << 16).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for y in [1u64, 5] {
        let mut cfg = MaximalConfig::new((10..=16).map(|e| 1u64 << e).collect(), y, 2.0, 11);
        cfg.floor_per_y = 1;
        let rep = maximal_scan(&tables, &cfg).unwrap();
        ok &= fx.check("maximal_weak_bound", rep.max_ratio).unwrap().passed;
        let var = rep.b_variation.unwrap();
        if y == 5 {
            ok &= var < 1.5;
        }
        parts.push(format!("y={y}: max weak ratio {:.4}, b variation {var:.3}", rep.max_ratio));
    }
    outcome(ok, parts.join("; "))
}

fn c12() -> Outcome {
    let tables = ArithTables::build(1 << 10).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let m = 1usize << rng.gen_range(4..=10);
        let n = rng.gen_range(4..=(m / 2) as u64);
        let y = rng.gen_range(1..=6u64.min(n));
        let bs = units(y);
        let b = bs[rng.gen_range(0..bs.len())];
        let size = rng.gen_range(1..=32.min(n as usize));
        let set: Vec<i64> = rand::seq::index::sample(&mut rng, n as usize, size).into_iter().map(|x| x as i64).collect();
        let k = AKernel::new(&tables, n, Progression::new(y, b).unwrap(), m).unwrap();
        let got = k.apply_set(&set).unwrap();
        let want = direct_average(&set, n, y, b, m);
        let kern: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = CyclicSignal::indicator(m, &set);
        let conv = convolve(&CyclicSignal::from_values(kern.clone()), &f).unwrap();
        let brute = brute_convolve(&kern, f.values());
        for i in 0..m {
            worst = worst.max((got.values()[i] - want[i]).abs());
            worst = worst.max((conv.values()[i] - brute[i]).abs());
        }
    }
    outcome(worst < 1e-8, format!("1000 draws, max |convolve − direct| {worst:.2e}"))
}

fn main() -> ExitCode {
    let fx = Fixtures::bundled();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "exact identity suite", Box::new(c1)),
        (2, "progression Cohen identity", Box::new(c2)),
        (3, "divisor identity", Box::new(c3)),
        (4, "height-class count", Box::new(c4)),
        (5, "Bourgain progression average", Box::new(|| c5(&fx))),
        (6, "approximation decay", Box::new(|| c6(&fx))),
        (7, "dual-path Low kernel", Box::new(c7)),
        (8, "High/Low partition", Box::new(c8)),
        (9, "High-part decay", Box::new(c9)),
        (10, "improving stability", Box::new(|| c10(&fx))),
        (11, "maximal weak type", Box::new(|| c11(&fx))),
        (12, "oracle equivalence", Box::new(c12)),
    ];
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    for (id, name, run) in &criteria {
        if !filter.is_empty() && !filter.contains(id) {
            continue;
        }
        let start = Instant::now();
        let o = run();
        let known = KNOWN_FAILURES.contains(id);
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        let note = match (o.passed, known) {
            (false, true) => " (known failure)",
            (true, true) => " (listed as a known failure but passed)",
            _ => "",
        };
        println!("criterion {id:>2} {verdict}{note}: {name}: {} [{:.1?}]", o.detail, start.elapsed());
        if o.passed == known {
            unexpected.push(*id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
