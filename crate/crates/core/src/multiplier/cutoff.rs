use serde::{Deserialize, Serialize};

/// Shape of the transition between the inner and outer radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffKind {
    /// `C^∞` step built from `exp(−1/t)`: equal to 1 on `|u| ≤ inner`,
    /// 0 on `|u| ≥ outer`.
    SmoothStep,
    /// Identically 1. Not compactly supported; used to isolate the averaging
    /// factor in tests.
    Unit,
}

/// Even cutoff `η` with `1_{[−1/16, 1/16]} ≤ η ≤ 1_{[−1/4, 1/4]}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub kind: CutoffKind,
    pub inner: f64,
    pub outer: f64,
}

impl Default for CutoffSpec {
    fn default() -> Self {
        CutoffSpec::smooth()
    }
}

fn flat(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

impl CutoffSpec {
    pub fn smooth() -> Self {
        CutoffSpec { kind: CutoffKind::SmoothStep, inner: 1.0 / 16.0, outer: 0.25 }
    }

    pub fn unit() -> Self {
        CutoffSpec { kind: CutoffKind::Unit, inner: f64::INFINITY, outer: f64::INFINITY }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            CutoffKind::SmoothStep => "smooth_step",
            CutoffKind::Unit => "unit",
        }
    }

    /// Radius outside which the cutoff vanishes.
    pub fn support_radius(&self) -> f64 {
        self.outer
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self.kind {
            CutoffKind::Unit => 1.0,
            CutoffKind::SmoothStep => {
                let a = u.abs();
                if a <= self.inner {
                    1.0
                } else if a >= self.outer {
                    0.0
                } else {
                    let v = (a - self.inner) / (self.outer - self.inner);
                    let (p, q) = (flat(1.0 - v), flat(v));
                    p / (p + q)
                }
            }
        }
    }
}
