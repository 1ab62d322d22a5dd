//! Primality, primes in the class 1 mod 4, and quadratic residues.

use crate::error::{Error, Result};

/// Largest input accepted by the prime search.
pub const SEARCH_LIMIT: u64 = 1 << 63;

/// Miller–Rabin bases that decide primality for every n < 2⁶⁴.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// A prime together with its residue modulo 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeWitness {
    pub p: u64,
    pub residue_class: u64,
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod modulus` by binary exponentiation with 128-bit products.
pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, b, modulus);
        }
        b = mul_mod(b, b, modulus);
        exp >>= 1;
    }
    result
}

/// Deterministic Miller–Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
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

/// Smallest prime `p ≥ n` with `p ≡ 1 (mod 4)`.
pub fn find_prime_1mod4(n: u64) -> Result<PrimeWitness> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    // first candidate ≥ n congruent to 1 mod 4
    let mut candidate = n.checked_add((5 - n % 4) % 4).ok_or_else(overflow)?;
    while candidate <= SEARCH_LIMIT {
        if is_prime(candidate) {
            return Ok(PrimeWitness {
                p: candidate,
                residue_class: candidate % 4,
            });
        }
        candidate = candidate.checked_add(4).ok_or_else(overflow)?;
    }
    Err(overflow())
}

fn overflow() -> Error {
    Error::Overflow("prime search exceeded 2^63".into())
}

/// Whether `p ≤ n + n^{3/5}/2`, evaluated in binary64.
pub fn window_check(n: u64, p: u64) -> bool {
    let n = n as f64;
    (p as f64) <= n + n.powf(0.6) / 2.0
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Euler's criterion: whether `a` is a nonzero quadratic residue mod the odd prime `p`.
pub fn is_quadratic_residue(a: u64, p: u64) -> Result<bool> {
    check_odd_prime(p)?;
    let a = a % p;
    Ok(a != 0 && pow_mod(a, (p - 1) / 2, p) == 1)
}

/// The `(p−1)/2` nonzero squares mod `p`, ascending.
pub fn quadratic_residues(p: u64) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    let mut is_residue = vec![false; p as usize];
    for k in 1..=(p - 1) / 2 {
        is_residue[mul_mod(k, k, p) as usize] = true;
    }
    Ok((1..p).filter(|&a| is_residue[a as usize]).collect())
}
