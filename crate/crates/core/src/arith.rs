//! Modular and primality arithmetic.

use crate::error::{Error, Result};
use std::fmt;

/// An odd prime below 2^31.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddPrime(u32);

impl OddPrime {
    pub const LIMIT: u64 = 1 << 31;

    pub fn new(value: u64) -> Result<Self> {
        if value >= Self::LIMIT || value.is_multiple_of(2) || !is_prime(value) {
            return Err(Error::NotOddPrime(value));
        }
        Ok(OddPrime(value as u32))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0 as u64
    }

    /// `(p + 1) / 2`, the number of solutions of `p = ab + cd`.
    pub fn solution_count(self) -> usize {
        (self.0 as usize).div_ceil(2)
    }
}

impl fmt::Display for OddPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// All odd primes `p` with `lo <= p <= hi`.
pub fn odd_primes_between(lo: u64, hi: u64) -> Vec<OddPrime> {
    let lo = lo.max(3);
    if hi < lo {
        return Vec::new();
    }
    let hi = hi.min(OddPrime::LIMIT - 1);
    if hi - lo < 4096 || lo > 1 << 26 {
        return (lo..=hi).filter_map(|n| OddPrime::new(n).ok()).collect();
    }
    // Sieve of Eratosthenes up to hi.
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
    }
    (lo as usize..=n)
        .filter(|&k| k % 2 == 1 && !composite[k])
        .map(|k| OddPrime(k as u32))
        .collect()
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test valid on the whole `u64` range.
///
/// Miller-Rabin with the first twelve primes as witnesses, which has no
/// strong pseudoprimes below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &q in &WITNESSES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Inverse of `x` modulo `p`, in `[1, p - 1]`.
pub fn mod_inverse(x: i128, p: OddPrime) -> Result<u64> {
    let m = p.get() as i128;
    let x = x.rem_euclid(m);
    if x == 0 {
        return Err(Error::NotInvertible { value: x, modulus: p.get() });
    }
    // Extended Euclid on (m, x).
    let (mut r0, mut r1) = (m, x);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    Ok(t0.rem_euclid(m) as u64)
}

/// The smaller square root of -1 modulo `p`, present iff `p ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(p: OddPrime) -> Option<u64> {
    let p = p.get();
    if p % 4 != 1 {
        return None;
    }
    // Any quadratic non-residue z gives z^((p-1)/4) as a root.
    let root = (2..p)
        .find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)
        .map(|z| pow_mod(z, (p - 1) / 4, p))?;
    Some(root.min(p - root))
}
