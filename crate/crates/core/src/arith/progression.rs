use crate::arith::elementary::gcd;
use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

/// Residue class `{n : n ≡ b (mod y)}` with `gcd(b, y) = 1` and `0 ≤ b < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Progression {
    y: u64,
    b: u64,
}

impl Progression {
    pub fn new(y: u64, b: u64) -> Result<Self> {
        if y == 0 {
            return Err(invalid("y", "spacing must be positive"));
        }
        if b >= y {
            return Err(invalid("b", format!("residue {b} must lie in [0, {y})")));
        }
        if gcd(b, y) != 1 {
            return Err(invalid("b", format!("gcd({b}, {y}) must be 1")));
        }
        Ok(Self { y, b })
    }

    /// The trivial progression of all integers.
    pub fn all() -> Self {
        Self { y: 1, b: 0 }
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn contains(&self, n: i64) -> bool {
        n.rem_euclid(self.y as i64) as u64 == self.b
    }

    /// Positive members below `x`, in increasing order.
    pub fn members_below(&self, x: u64) -> impl Iterator<Item = u64> {
        let first = if self.b == 0 { self.y } else { self.b };
        (first..x).step_by(self.y as usize)
    }

    /// Every admissible progression with spacing `y`.
    pub fn all_with_spacing(y: u64) -> Vec<Progression> {
        crate::arith::elementary::reduced_residues(y)
            .into_iter()
            .map(|b| Progression { y, b })
            .collect()
    }
}
