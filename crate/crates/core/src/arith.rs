//! Small exact-arithmetic helpers: primality, prime powers, p-adic
//! valuations, factorials and binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn prime_power(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// p-adic valuation of a nonzero integer; `None` for zero.
pub fn valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// Valuation of `n` capped at `cap`; zero maps to `cap`.
pub fn valuation_capped(n: &BigInt, p: u64, cap: u32) -> u32 {
    valuation(n, p).map_or(cap, |v| v.min(cap))
}

/// Legendre's formula: v_p(n!) = sum_{k>=1} floor(n / p^k).
pub fn valuation_factorial(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Least nonnegative residue of `n` modulo `m` (m > 0).
pub fn reduce(n: &BigInt, m: &BigInt) -> BigInt {
    n.mod_floor(m)
}

/// Is `r <= log_p(x)` for a rational r and integer x >= 1?
pub fn rational_le_log(r: &BigRational, p: u64, x: u64) -> bool {
    if !r.is_positive() {
        return true;
    }
    // r = u/v with v > 0:  p^(u/v) <= x  <=>  p^u <= x^v
    let u = r.numer().to_u32_checked();
    let v = r.denom().to_u32_checked();
    match (u, v) {
        (Some(u), Some(v)) => {
            num_traits::pow(BigInt::from(p), u as usize) <= num_traits::pow(BigInt::from(x), v as usize)
        }
        _ => false,
    }
}

/// Is `r >= log_p(x)` for a rational r and integer x >= 1?
pub fn rational_ge_log(r: &BigRational, p: u64, x: u64) -> bool {
    if r.is_negative() {
        return false;
    }
    if r.is_zero() {
        return x == 1;
    }
    let u = r.numer().to_u32_checked();
    let v = r.denom().to_u32_checked();
    match (u, v) {
        (Some(u), Some(v)) => {
            num_traits::pow(BigInt::from(p), u as usize) >= num_traits::pow(BigInt::from(x), v as usize)
        }
        _ => true,
    }
}

trait ToU32Checked {
    fn to_u32_checked(&self) -> Option<u32>;
}

impl ToU32Checked for BigInt {
    fn to_u32_checked(&self) -> Option<u32> {
        num_traits::ToPrimitive::to_u32(self)
    }
}

/// log base p of x as a float, for display only.
pub fn log_p(x: u64, p: u64) -> f64 {
    (x as f64).ln() / (p as f64).ln()
}

/// floor(sqrt(n)).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_below_thirty() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn legendre_matches_direct_valuation() {
        for p in [2u64, 3, 5, 7] {
            for n in 0..40u64 {
                let direct = valuation(&factorial(n), p).unwrap();
                assert_eq!(valuation_factorial(n, p), direct as u64, "p={p} n={n}");
            }
        }
        assert_eq!(valuation_factorial(9, 3), 4);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155117520u64));
    }

    #[test]
    fn log_comparisons_are_exact() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        // log_3 9 = 2
        assert!(rational_le_log(&r(2, 1), 3, 9));
        assert!(rational_ge_log(&r(2, 1), 3, 9));
        assert!(!rational_le_log(&r(201, 100), 3, 9));
        assert!(!rational_ge_log(&r(199, 100), 3, 9));
        // log_3 6 ~ 1.63
        assert!(rational_le_log(&r(3, 2), 3, 6));
        assert!(!rational_ge_log(&r(3, 2), 3, 6));
        assert!(rational_ge_log(&r(0, 1), 5, 1));
        assert!(!rational_ge_log(&r(-1, 2), 5, 1));
    }

    #[test]
    fn integer_square_roots() {
        for n in 0..200u64 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
