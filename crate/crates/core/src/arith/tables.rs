use crate::error::{invalid, Error, Result};

/// Default ceiling on the number of table entries (`bound + 1`).
pub const DEFAULT_MEMORY_CAP: u64 = 200_000_000;

/// Sieved von Mangoldt, Möbius and totient values on `0..=bound`.
///
/// Index 0 holds placeholder values (`Λ(0) = 0`, `μ(0) = 0`, `φ(0) = 0`).
/// Immutable once built; safe to share across threads.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithTables {
    bound: u64,
    lambda: Vec<f64>,
    mobius: Vec<i8>,
    totient: Vec<u32>,
    is_prime: Vec<bool>,
}

impl ArithTables {
    pub fn build(bound: u64) -> Result<Self> {
        Self::build_with_cap(bound, DEFAULT_MEMORY_CAP)
    }

    /// Linear (Euler) sieve: each composite is visited once, through its
    /// smallest prime factor.
    pub fn build_with_cap(bound: u64, cap: u64) -> Result<Self> {
        if bound < 2 {
            return Err(invalid("bound", format!("must be at least 2, got {bound}")));
        }
        if bound >= u32::MAX as u64 {
            return Err(invalid("bound", "tables are limited to 32-bit indices"));
        }
        if bound + 1 > cap {
            return Err(Error::MemoryCap {
                requested: bound + 1,
                cap,
            });
        }
        let n = bound as usize;
        let mut lambda = vec![0.0f64; n + 1];
        let mut mobius = vec![0i8; n + 1];
        let mut totient = vec![0u32; n + 1];
        let mut is_prime = vec![false; n + 1];
        let mut composite = vec![false; n + 1];
        let mut primes: Vec<u32> = Vec::new();

        mobius[1] = 1;
        totient[1] = 1;
        for i in 2..=n {
            if !composite[i] {
                is_prime[i] = true;
                primes.push(i as u32);
                lambda[i] = (i as f64).ln();
                mobius[i] = -1;
                totient[i] = (i - 1) as u32;
            }
            for &p in &primes {
                let p = p as usize;
                let ip = match i.checked_mul(p) {
                    Some(v) if v <= n => v,
                    _ => break,
                };
                composite[ip] = true;
                if i % p == 0 {
                    // i is a power of p exactly when Λ(i) = log p.
                    lambda[ip] = lambda[i];
                    mobius[ip] = 0;
                    totient[ip] = totient[i] * p as u32;
                    break;
                }
                mobius[ip] = -mobius[i];
                totient[ip] = totient[i] * (p as u32 - 1);
            }
        }

        Ok(Self {
            bound,
            lambda,
            mobius,
            totient,
            is_prime,
        })
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda[n as usize]
    }

    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[n as usize]
    }

    pub fn totient(&self, n: u64) -> u64 {
        self.totient[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.is_prime[n as usize]
    }

    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda
    }

    pub fn mobius_values(&self) -> &[i8] {
        &self.mobius
    }

    pub fn totient_values(&self) -> &[u32] {
        &self.totient
    }

    pub(crate) fn check_range(&self, what: &'static str, value: u64) -> Result<()> {
        if value > self.bound {
            Err(Error::OutOfRange {
                what,
                value,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }
}
