//! The progression Gauss sum `Υ`, heights, and Farey points.

use crate::arith::elementary::{gcd, lcm, reduced_residues, totient};
use crate::arith::Progression;
use crate::error::{Error, Result};
use crate::expsums::progression_sums::{closed_phase, restricted_units};
use crate::phase::e_ratio;
use num_complex::Complex64;
use serde::Serialize;

fn check_unit(a: i64, q: u64) -> Result<()> {
    if q == 0 {
        return Err(crate::error::invalid("q", "must be positive"));
    }
    if gcd(a.unsigned_abs() % q, q) != 1 {
        return Err(Error::Precondition(format!("gcd(a = {a}, q = {q}) must be 1")));
    }
    Ok(())
}

fn scale(q: u64, y: u64) -> f64 {
    totient(y) as f64 / totient(lcm(q, y)) as f64
}

/// `Υ(a/q) = φ(y)/φ(ℓ) · Σ_{r ∈ 𝔸_q, r ≡ b (g)} e(−ra/q)`, summed directly.
pub fn gauss_upsilon_direct(a: i64, q: u64, prog: &Progression) -> Result<Complex64> {
    check_unit(a, q)?;
    let g = gcd(q, prog.y());
    let s: Complex64 = restricted_units(q, g, prog.b() as i64)
        .map(|r| e_ratio(-(r as i128) * a as i128, q))
        .sum();
    Ok(s * scale(q, prog.y()))
}

/// Closed form of `Υ`; vanishes exactly when `gcd(g, q/g) > 1`.
pub fn gauss_upsilon_closed(a: i64, q: u64, prog: &Progression) -> Result<Complex64> {
    check_unit(a, q)?;
    let g = gcd(q, prog.y());
    Ok(closed_phase(q, g, prog.b() as i64, a, -1) * scale(q, prog.y()))
}

/// `ℓ/y` when `gcd(g, q/g) = 1`, else 0.
pub fn height(q: u64, y: u64) -> u64 {
    assert!(q >= 1 && y >= 1, "height needs positive q and y");
    let g = gcd(q, y);
    if gcd(g, q / g) > 1 {
        0
    } else {
        lcm(q, y) / y
    }
}

/// A reduced rational `a/q` together with its progression data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FareyPoint {
    a: u64,
    q: u64,
    prog: Progression,
    g: u64,
    ell: u64,
    height: u64,
    upsilon: Complex64,
}

impl FareyPoint {
    pub fn new(a: u64, q: u64, prog: Progression) -> Result<Self> {
        if q == 0 || a >= q {
            return Err(crate::error::invalid("a", format!("need 0 ≤ a < q, got a = {a}, q = {q}")));
        }
        let upsilon = gauss_upsilon_closed(a as i64, q, &prog)?;
        Ok(FareyPoint {
            a,
            q,
            prog,
            g: gcd(q, prog.y()),
            ell: lcm(q, prog.y()),
            height: height(q, prog.y()),
            upsilon,
        })
    }

    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn progression(&self) -> Progression {
        self.prog
    }
    pub fn g(&self) -> u64 {
        self.g
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn height(&self) -> u64 {
        self.height
    }
    pub fn upsilon(&self) -> Complex64 {
        self.upsilon
    }
    /// `a/q` as a float in `[0, 1)`.
    pub fn frequency(&self) -> f64 {
        self.a as f64 / self.q as f64
    }
}

/// All Farey points `a/q`, `a ∈ 𝔸_q`, for `q` in `qs`, in `(q, a)` order.
pub fn farey_points_for(qs: impl IntoIterator<Item = u64>, prog: Progression) -> Vec<FareyPoint> {
    qs.into_iter()
        .flat_map(|q| {
            reduced_residues(q)
                .into_iter()
                .map(move |a| FareyPoint::new(a, q, prog).expect("reduced residue"))
        })
        .collect()
}

/// Number of Farey points `a/q` of a given height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HeightClassCount {
    pub y: u64,
    pub r: u64,
    /// `#{a/q : height(q, y) = r}`, enumerated.
    pub enumerated: u64,
    /// `φ(r)·y/gcd(y, r)`.
    pub formula: u64,
    /// `φ(r)·y` if `gcd(y, r) = 1`, else 0.
    pub corrected: u64,
}

/// Counts `a/q` with height `r`. Any such `q` divides `ℓ = r·y`, so the
/// enumeration over `q | r·y` is complete.
pub fn count_height_class(y: u64, r: u64) -> Result<HeightClassCount> {
    if y == 0 || r == 0 {
        return Err(crate::error::invalid("y, r", "must be positive"));
    }
    let ry = r.checked_mul(y).ok_or(Error::Overflow("r·y"))?;
    let enumerated = crate::arith::elementary::divisors(ry)
        .into_iter()
        .filter(|&q| height(q, y) == r)
        .map(totient)
        .sum();
    Ok(HeightClassCount {
        y,
        r,
        enumerated,
        formula: totient(r) * y / gcd(y, r),
        corrected: if gcd(y, r) == 1 { totient(r) * y } else { 0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(y: u64, b: u64) -> Progression {
        Progression::new(y, b).unwrap()
    }

    #[test]
    fn height_examples() {
        assert_eq!(height(1, 1), 1);
        assert_eq!(height(6, 4), 3);
        assert_eq!(height(8, 4), 0);
        assert_eq!(height(5, 3), 5);
    }

    #[test]
    fn upsilon_examples() {
        let z = gauss_upsilon_direct(1, 1, &p(1, 0)).unwrap();
        assert!((z - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        let z = gauss_upsilon_direct(1, 6, &p(4, 1)).unwrap();
        assert!((z - Complex64::new(0.5, 0.0)).norm() < 1e-12);
        let z = gauss_upsilon_closed(1, 8, &p(4, 1)).unwrap();
        assert_eq!(z, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn direct_matches_closed_small() {
        for y in 1..=12u64 {
            for b in reduced_residues(y) {
                let prog = p(y, b);
                for q in 1..=40u64 {
                    for a in reduced_residues(q) {
                        let d = gauss_upsilon_direct(a as i64, q, &prog).unwrap();
                        let c = gauss_upsilon_closed(a as i64, q, &prog).unwrap();
                        assert!((d - c).norm() < 1e-9, "y={y} b={b} q={q} a={a}");
                    }
                }
            }
        }
    }

    #[test]
    fn height_class_examples() {
        let c = count_height_class(1, 5).unwrap();
        assert_eq!((c.enumerated, c.formula), (4, 4));
        let c = count_height_class(4, 3).unwrap();
        assert_eq!((c.enumerated, c.formula), (8, 8));
        let c = count_height_class(4, 2).unwrap();
        assert_eq!((c.enumerated, c.formula, c.corrected), (0, 2, 0));
    }

    #[test]
    fn farey_point_fields() {
        let fp = FareyPoint::new(1, 6, p(4, 1)).unwrap();
        assert_eq!((fp.g(), fp.ell(), fp.height()), (2, 12, 3));
        assert!((fp.upsilon().re - 0.5).abs() < 1e-12);
        assert!(FareyPoint::new(2, 6, p(4, 1)).is_err());
        assert!(FareyPoint::new(0, 1, p(3, 2)).is_ok());
        assert!(FareyPoint::new(7, 6, p(4, 1)).is_err());
    }
}
