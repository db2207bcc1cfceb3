//! Classical modular arithmetic.

use crate::error::{Result, SimError};

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    assert!(m >= 2, "modulus must be at least 2");
    let mut result = 1;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    result
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(SimError::NotInvertible { a, m });
    }
    let (mut old_r, mut r) = ((a % m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(SimError::NotInvertible { a, m });
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `x` modulo `n`, by iteration.
pub fn order_of(x: u64, n: u64) -> Result<u64> {
    if n < 2 || gcd(x % n, n) != 1 {
        return Err(SimError::NotCoprime { x, n });
    }
    let x = x % n;
    let mut acc = x;
    let mut r = 1;
    while acc != 1 {
        acc = mul_mod(acc, x, n);
        r += 1;
    }
    Ok(r)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Whether `g` generates the multiplicative group modulo the prime `p`.
pub fn is_generator(g: u64, p: u64) -> bool {
    p >= 2 && !g.is_multiple_of(p) && order_of(g, p).is_ok_and(|r| r == p - 1)
}

/// Smallest `r ≥ 0` with `g^r ≡ x (mod p)`, by exhaustive search.
pub fn discrete_log_brute(g: u64, x: u64, p: u64) -> Option<u64> {
    let target = x % p;
    let mut acc = 1 % p;
    for r in 0..p {
        if acc == target {
            return Some(r);
        }
        acc = mul_mod(acc, g, p);
    }
    None
}
