//! Small-number helpers: gcd, inverses, trial-division factorization.
//!
//! These work on individual integers and are meant for denominators and
//! spacings (at most a few thousand), not for table-sized ranges.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `m`, in `[0, m)`. For `m == 1` every residue is the
/// inverse of every other, and `Some(0)` is returned.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 0 {
        return None;
    }
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Prime factorization as `(p, e)` pairs in increasing order of `p`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius is defined on positive integers");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient is defined on positive integers");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// The unit group `{a in [0, q) : gcd(a, q) = 1}`; for `q = 1` this is `{0}`.
pub fn reduced_residues(q: u64) -> Vec<u64> {
    assert!(q >= 1, "modulus must be positive");
    if q == 1 {
        return vec![0];
    }
    (1..q).filter(|&a| gcd(a, q) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_residues_small_moduli() {
        assert_eq!(reduced_residues(1), vec![0]);
        assert_eq!(reduced_residues(6), vec![1, 5]);
        assert_eq!(reduced_residues(8), vec![1, 3, 5, 7]);
        for q in 1..200 {
            assert_eq!(reduced_residues(q).len() as u64, totient(q));
        }
    }

    #[test]
    fn inverse_matches_definition() {
        for m in 2..60u64 {
            for a in 0..m {
                match mod_inverse(a, m) {
                    Some(inv) => assert_eq!(a * inv % m, 1),
                    None => assert!(gcd(a, m) > 1),
                }
            }
        }
        assert_eq!(mod_inverse(5, 1), Some(0));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn mobius_and_lcm() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(lcm(3, 6), 6);
    }
}
