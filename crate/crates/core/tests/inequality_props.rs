mod common;

use common::*;
use primeavg::arith::{ArithTables, Progression};
use primeavg::fixtures::Fixtures;
use primeavg::inequality_lab::*;
use primeavg::transform::{convolve, CyclicSignal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn norm(v: &[f64], p: f64) -> f64 {
    v.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

/// The improving ratio from the quadratic-time average.
fn oracle_ratio(n: u64, y: u64, b: u64, r: f64, set: &[i64]) -> f64 {
    let m = (4 * n).next_power_of_two() as usize;
    let rp = r / (r - 1.0);
    let out = direct_average(set, n, y, b, m);
    norm(&out, rp) / ((y as f64 / n as f64).powf(1.0 / r - 1.0 / rp) * (set.len() as f64).powf(1.0 / r))
}

#[test]
fn improving_ratio_matches_oracle() {
    let t = ArithTables::build(1 << 11).unwrap();
    for (y, b) in [(1u64, 0u64), (3, 2), (4, 1)] {
        let prog = Progression::new(y, b).unwrap();
        for set in [vec![5i64], (0..100).collect(), (0..1024).filter(|x| x % y as i64 == b as i64).collect()] {
            let lib = improving_ratio(&t, 1 << 10, prog, 1.5, &set).unwrap();
            let want = oracle_ratio(1 << 10, y, b, 1.5, &set);
            assert!((lib - want).abs() < 1e-9 * want, "y={y}: {lib} vs {want}");
        }
    }
}

#[test]
fn single_point_is_kernel_norm() {
    let t = ArithTables::build(1 << 12).unwrap();
    let (n, y, b) = (1u64 << 11, 5u64, 3u64);
    let r = 1.5;
    let rp = 3.0;
    let weights: Vec<f64> = (0..n)
        .filter(|k| k % y == b)
        .map(|k| naive_lambda(k) * naive_totient(y) as f64 / n as f64)
        .collect();
    let want = norm(&weights, rp) / (y as f64 / n as f64).powf(1.0 / r - 1.0 / rp);
    let got = improving_ratio(&t, n, Progression::new(y, b).unwrap(), r, &[100]).unwrap();
    assert!((got - want).abs() < 1e-9 * want);
}

#[test]
fn progression_segment_beats_random_sets() {
    let t = ArithTables::build(1 << 14).unwrap();
    let n = 1u64 << 13;
    let prog = Progression::new(3, 1).unwrap();
    let k = AKernel::with_default_grid(&t, n, prog).unwrap();
    let seg = FamilySpec::ProgressionSegment { frac: 0.5 }.generate(&t, n, &prog, 0).unwrap();
    let best = k.improving_ratio(1.5, &seg).unwrap();
    for (i, d) in [0.5, 0.25, 0.125].into_iter().enumerate() {
        let set = FamilySpec::Random { density: d }.generate(&t, n, &prog, i as u64).unwrap();
        assert!(k.improving_ratio(1.5, &set).unwrap() < best);
    }
}

#[test]
fn translation_invariance() {
    let t = ArithTables::build(1 << 12).unwrap();
    let k = AKernel::with_default_grid(&t, 1 << 11, Progression::new(3, 2).unwrap()).unwrap();
    let set: Vec<i64> = (0..200).map(|x| x * 3 + 1).collect();
    let shifted: Vec<i64> = set.iter().map(|x| x + 777).collect();
    let a = k.improving_ratio(1.5, &set).unwrap();
    let b = k.improving_ratio(1.5, &shifted).unwrap();
    assert!((a - b).abs() < 1e-10 * a);
}

fn rnd_ratio(t: &ArithTables, n: u64) -> f64 {
    let f: Vec<i64> = (0..n as i64).step_by(5).collect();
    let g: Vec<i64> = (0..300).collect();
    dual_ratio(t, n, Progression::new(3, 1).unwrap(), 1.5, &f, &g).unwrap().ratio
}

#[test]
fn dual_ratio_examples() {
    let t = ArithTables::build(1 << 12).unwrap();
    let n = 1u64 << 11;
    let prog = Progression::new(3, 1).unwrap();
    let full: Vec<i64> = (0..n as i64).collect();
    let f: Vec<i64> = (0..300).collect();
    let d = dual_ratio(&t, n, prog, 1.5, &f, &full).unwrap();
    assert!(d.ratio.is_finite() && d.ratio > 0.0 && !d.trivial_regime);
    // A maps the class c mod y onto c + b, so F = G pairs to zero for y > 1;
    // the extremal pair puts G on the image class.
    let seg: Vec<i64> = (0..n as i64 / 2).filter(|x| x % 3 == 1).collect();
    let image: Vec<i64> = (0..n as i64 / 2).filter(|x| x % 3 == 2).collect();
    assert!(dual_ratio(&t, n, prog, 1.5, &seg, &seg).unwrap().ratio.abs() < 1e-12);
    let s = dual_ratio(&t, n, prog, 1.5, &seg, &image).unwrap();
    let plain: Vec<i64> = (0..n as i64 / 2).collect();
    let s1 = dual_ratio(&t, n, Progression::all(), 1.5, &plain, &plain).unwrap();
    assert!(s1.ratio > rnd_ratio(&t, n), "{}", s1.ratio);
    let rnd = dual_ratio(&t, n, prog, 1.5, &(0..n as i64).step_by(5).collect::<Vec<_>>(), &f).unwrap();
    assert!(s.ratio > rnd.ratio, "{} vs {}", s.ratio, rnd.ratio);
    let tiny = dual_ratio(&t, n, prog, 1.5, &[1], &[4]).unwrap();
    assert!(tiny.trivial_regime);
    assert!(tiny.density_product <= tiny.threshold);
    assert!(dual_ratio(&t, n, prog, 1.5, &[], &[4]).is_err());
}

#[test]
fn y_one_is_plain_prime_average() {
    let t = ArithTables::build(1 << 11).unwrap();
    let set: Vec<i64> = (0..64).map(|x| x * 7).collect();
    let lib = improving_ratio(&t, 1 << 10, Progression::all(), 1.5, &set).unwrap();
    let m = 1 << 12;
    let out: Vec<f64> = (0..m)
        .map(|x: i64| (2..1024i64).filter(|p| set.contains(&(x - p))).map(|p| naive_lambda(p as u64)).sum::<f64>() / 1024.0)
        .collect();
    let want = norm(&out, 3.0) / ((1.0 / 1024f64).powf(1.0 / 3.0) * 64f64.powf(2.0 / 3.0));
    assert!((lib - want).abs() < 1e-9 * want);
}

#[test]
fn exponent_continuity_in_r() {
    let t = ArithTables::build(1 << 13).unwrap();
    let k = AKernel::with_default_grid(&t, 1 << 12, Progression::all()).unwrap();
    for fam in [FamilySpec::Interval { frac: 0.25 }, FamilySpec::Interval { frac: 0.5 }] {
        let set = fam.generate(&t, 1 << 12, &Progression::all(), 0).unwrap();
        let v: Vec<f64> = [1.4, 1.5, 1.6].iter().map(|&r| k.improving_ratio(r, &set).unwrap()).collect();
        let between = (v[0].min(v[2])..=v[0].max(v[2])).contains(&v[1]);
        println!("{} r=1.4,1.5,1.6: {v:?} middle between: {between}", fam.label());
        assert!(v.iter().all(|x| x.is_finite()));
    }
}

#[test]
fn maximal_monotone_under_longer_lists() {
    let t = ArithTables::build(1 << 12).unwrap();
    let p = Progression::new(5, 2).unwrap();
    let m = 1 << 13;
    let ks: Vec<AKernel> = [1u64 << 9, 1 << 10, 1 << 11].iter().map(|&n| AKernel::new(&t, n, p, m).unwrap()).collect();
    let set: Vec<i64> = (0..300).map(|x| x * 5 + 2).collect();
    let short = maximal_apply(&ks[..2], &set).unwrap();
    let long = maximal_apply(&ks, &set).unwrap();
    assert!(short.values().iter().zip(long.values()).all(|(a, b)| a <= b));
}

#[test]
fn scans_are_reproducible() {
    let t = ArithTables::build(1 << 13).unwrap();
    let mut cfg = ImprovingConfig::new(vec![1 << 12, 1 << 13], vec![1, 3], vec![1.5], 9);
    cfg.floor_per_y = 1;
    cfg.adversarial = true;
    let a = improving_scan(&t, &cfg).unwrap();
    let b = improving_scan(&t, &cfg).unwrap();
    assert_eq!(a.rows, b.rows);
    assert!(a.rows.iter().any(|r| r.adversarial));
    for c in &a.cells {
        assert!(c.adversarial_max.is_some());
    }
    // Any row can be recomputed from its own columns.
    for row in a.rows.iter().step_by(5) {
        let prog = Progression::new(row.y, row.b).unwrap();
        let fam = cfg.families.iter().chain([FamilySpec::Greedy { frac: 0.25 }].iter()).find(|f| f.label() == row.family).unwrap();
        let set = fam.generate(&t, row.n, &prog, row.set_seed).unwrap();
        let v = improving_ratio(&t, row.n, prog, row.r, &set).unwrap();
        assert_eq!(v, row.ratio);
    }
}

#[test]
fn small_scan_fixtures() {
    let fx = Fixtures::bundled();
    let t = ArithTables::build(1 << 14).unwrap();
    let cfg = ImprovingConfig::new(vec![1 << 13, 1 << 14], vec![1], vec![1.5], 1);
    let rep = improving_scan(&t, &cfg).unwrap();
    assert!(rep.passed);
    assert!(fx.check("improving_ratio_bound", rep.max_ratio).unwrap().passed);
    let mut mcfg = MaximalConfig::new(vec![1 << 10, 1 << 11, 1 << 12], 1, 2.0, 1);
    mcfg.families = vec![FamilySpec::Random { density: 0.125 }];
    let rep = maximal_scan(&t, &mcfg).unwrap();
    assert!(fx.check("maximal_weak_bound", rep.max_ratio).unwrap().passed);
}

#[test]
fn convolution_matches_quadratic_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let m = 1usize << rng.gen_range(3..=9);
        let k: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut idx: Vec<i64> = (0..m as i64).collect();
        idx.shuffle(&mut rng);
        idx.truncate(rng.gen_range(1..=32.min(m)));
        let f = CyclicSignal::indicator(m, &idx);
        let got = convolve(&CyclicSignal::from_values(k.clone()), &f).unwrap();
        let want = brute_convolve(&k, f.values());
        for i in 0..m {
            assert!((got.values()[i] - want[i]).abs() < 1e-8);
        }
    }
    let d = CyclicSignal::delta(16, 0);
    let k = CyclicSignal::from_values((0..16).map(|x| x as f64).collect());
    let out = convolve(&k, &d).unwrap();
    assert!(out.values().iter().zip(k.values()).all(|(a, b)| (a - b).abs() < 1e-12));
    assert!(convolve(&k, &CyclicSignal::zeros(8)).is_err());
}
