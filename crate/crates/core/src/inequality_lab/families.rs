//! Fixed families of test sets `F ⊂ [0, N)`.

use crate::arith::Progression;
use crate::error::{invalid, Result};
use crate::multiplier::a_weights;
use crate::ArithTables;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// `[0, ⌈frac·N⌉)`.
    Interval { frac: f64 },
    /// `{n ≡ b (y)} ∩ [0, ⌈frac·N⌉)`.
    ProgressionSegment { frac: f64 },
    /// Each `n < N` kept independently with probability `density`.
    Random { density: f64 },
    /// Each progression member below `N` kept with probability `density`.
    RandomProgression { density: f64 },
    /// `{⌊frac·N⌋}`.
    SinglePoint { frac: f64 },
    /// `dℤ ∩ [0, N)`.
    Lattice { d: u64 },
    /// `{N − 1 − n}` over the `⌈frac·N/y⌉` heaviest kernel sites `n`; maximizes
    /// `A 1_F(N − 1)` among sets of that size.
    Greedy { frac: f64 },
}

impl FamilySpec {
    pub fn label(&self) -> String {
        match self {
            FamilySpec::Interval { frac } => format!("interval:{frac}"),
            FamilySpec::ProgressionSegment { frac } => format!("progression:{frac}"),
            FamilySpec::Random { density } => format!("random:{density}"),
            FamilySpec::RandomProgression { density } => format!("random_progression:{density}"),
            FamilySpec::SinglePoint { frac } => format!("point:{frac}"),
            FamilySpec::Lattice { d } => format!("lattice:{d}"),
            FamilySpec::Greedy { frac } => format!("greedy:{frac}"),
        }
    }

    pub fn is_adversarial(&self) -> bool {
        matches!(self, FamilySpec::Greedy { .. })
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            FamilySpec::Interval { frac }
            | FamilySpec::ProgressionSegment { frac }
            | FamilySpec::Greedy { frac } => frac > 0.0 && frac <= 1.0,
            FamilySpec::SinglePoint { frac } => (0.0..1.0).contains(&frac),
            FamilySpec::Random { density } | FamilySpec::RandomProgression { density } => {
                density > 0.0 && density <= 1.0
            }
            FamilySpec::Lattice { d } => d >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid("family", format!("{} has parameters out of range", self.label())))
        }
    }

    /// Members in increasing order. Random families draw from `seed` only.
    pub fn generate(&self, tables: &ArithTables, n: u64, prog: &Progression, seed: u64) -> Result<Vec<i64>> {
        self.validate()?;
        let upto = |frac: f64| ((frac * n as f64).ceil() as u64).clamp(1, n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let set: Vec<i64> = match *self {
            FamilySpec::Interval { frac } => (0..upto(frac) as i64).collect(),
            FamilySpec::ProgressionSegment { frac } => {
                (prog.b()..upto(frac)).step_by(prog.y() as usize).map(|x| x as i64).collect()
            }
            FamilySpec::Random { density } => (0..n as i64).filter(|_| rng.gen::<f64>() < density).collect(),
            FamilySpec::RandomProgression { density } => (prog.b()..n)
                .step_by(prog.y() as usize)
                .filter(|_| rng.gen::<f64>() < density)
                .map(|x| x as i64)
                .collect(),
            FamilySpec::SinglePoint { frac } => vec![(frac * n as f64).floor() as i64],
            FamilySpec::Lattice { d } => (0..n as i64).step_by(d as usize).collect(),
            FamilySpec::Greedy { frac } => {
                let mut w = a_weights(tables, n, prog)?;
                w.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
                let k = ((frac * n as f64 / prog.y() as f64).ceil() as usize).max(1);
                let mut s: Vec<i64> = w.iter().take(k).map(|&(x, _)| (n - 1 - x) as i64).collect();
                s.sort_unstable();
                s
            }
        };
        if set.is_empty() {
            // A sparse random draw can come out empty; fall back to one point.
            return Ok(vec![prog.b() as i64]);
        }
        Ok(set)
    }
}

/// Families used by the improving scan unless configured otherwise.
pub fn default_improving_families() -> Vec<FamilySpec> {
    vec![
        FamilySpec::Interval { frac: 1.0 },
        FamilySpec::Interval { frac: 0.5 },
        FamilySpec::Interval { frac: 0.125 },
        FamilySpec::ProgressionSegment { frac: 1.0 },
        FamilySpec::ProgressionSegment { frac: 0.5 },
        FamilySpec::Random { density: 0.5 },
        FamilySpec::Random { density: 0.125 },
        FamilySpec::Random { density: 1.0 / 32.0 },
        FamilySpec::RandomProgression { density: 0.5 },
        FamilySpec::SinglePoint { frac: 0.5 },
    ]
}

/// Families for the High-part decay sweep: the improving families plus
/// lattices `dℤ` for `d ≤ 64`, which resonate with the Hi frequencies.
pub fn default_hi_families() -> Vec<FamilySpec> {
    let mut v = default_improving_families();
    v.extend((1..=64).map(|d| FamilySpec::Lattice { d }));
    v
}

/// Mixes a base seed with cell coordinates (splitmix64 finalizer).
pub fn cell_seed(seed: u64, coords: &[u64]) -> u64 {
    let mut h = seed;
    for &c in coords {
        h ^= c.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}
