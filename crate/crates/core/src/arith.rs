//! Small exact integer helpers shared by the field, code and analysis modules.

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^m` into `(p, m)`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power(q).is_some()
}

/// Smallest prime power `>= n` (and `>= 2`).
pub fn next_prime_power(n: u64) -> u64 {
    let mut q = n.max(2);
    while !is_prime_power(q) {
        q += 1;
    }
    q
}

/// Largest prime power strictly below `q`, if any.
pub fn prev_prime_power(q: u64) -> Option<u64> {
    (2..q).rev().find(|&c| is_prime_power(c))
}

pub fn checked_pow(base: u128, exp: u128, what: &str) -> Result<u128> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow(what.to_string()))?;
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
