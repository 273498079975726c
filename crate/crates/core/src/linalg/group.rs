use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, prime_power};
use crate::error::{Error, Result};

/// A finite abelian p-group `Z/p^{n_1} + ... + Z/p^{n_r}`, kept as the sorted
/// (ascending) multiset of exponents. The trivial group has no exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianPGroup {
    p: u64,
    exponents: Vec<u32>,
}

impl AbelianPGroup {
    pub fn new(p: u64, mut exponents: Vec<u32>) -> Result<Self> {
        arith::ensure_prime(p)?;
        if exponents.contains(&0) {
            return Err(Error::OutOfRange { what: "exponent", detail: "exponents must be >= 1".into() });
        }
        exponents.sort_unstable();
        Ok(AbelianPGroup { p, exponents })
    }

    pub fn trivial(p: u64) -> Self {
        AbelianPGroup { p, exponents: Vec::new() }
    }

    /// Builds the group from a list of nonnegative invariant factors, dropping
    /// units. A zero factor means the group is infinite; any other prime
    /// dividing a factor is rejected.
    pub fn from_invariant_factors(p: u64, factors: &[BigInt]) -> Result<Self> {
        let mut exponents = Vec::new();
        for (pos, f) in factors.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::InfiniteCokernel(pos));
            }
            let v = arith::valuation(f, p).expect("nonzero");
            if prime_power(p, v) != f.abs() {
                return Err(Error::MixedPrime { p, value: f.to_string() });
            }
            if v > 0 {
                exponents.push(v);
            }
        }
        AbelianPGroup::new(p, exponents)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Exponents in ascending order.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// log_p of the order.
    pub fn order_exponent(&self) -> u64 {
        self.exponents.iter().map(|&n| n as u64).sum()
    }

    pub fn order(&self) -> BigInt {
        prime_power(self.p, self.order_exponent() as u32)
    }

    /// log_p of the exponent of the group; 0 for the trivial group.
    pub fn max_exponent(&self) -> u32 {
        self.exponents.last().copied().unwrap_or(0)
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &AbelianPGroup) -> AbelianPGroup {
        assert_eq!(self.p, other.p, "direct sum of groups for different primes");
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        e.sort_unstable();
        AbelianPGroup { p: self.p, exponents: e }
    }

    /// `(n, multiplicity)` pairs, ascending in n.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &n in &self.exponents {
            match out.last_mut() {
                Some((m, c)) if *m == n => *c += 1,
                _ => out.push((n, 1)),
            }
        }
        out
    }

    pub fn from_multiplicities(p: u64, counts: &[(u32, usize)]) -> Result<Self> {
        let exps = counts.iter().flat_map(|&(n, c)| std::iter::repeat_n(n, c)).collect();
        AbelianPGroup::new(p, exps)
    }

    /// Multiset containment: is every factor of `other` also a factor of `self`
    /// (with multiplicity)?
    pub fn contains_summands_of(&self, other: &AbelianPGroup) -> bool {
        self.p == other.p && self.multiset_difference(other).is_some()
    }

    /// `self - other` as multisets, or `None` if `other` is not contained.
    pub fn multiset_difference(&self, other: &AbelianPGroup) -> Option<AbelianPGroup> {
        let mut rest = self.exponents.clone();
        for n in &other.exponents {
            let pos = rest.iter().position(|m| m == n)?;
            rest.remove(pos);
        }
        Some(AbelianPGroup { p: self.p, exponents: rest })
    }

    /// Descending exponent list padded with zeros to `len`.
    pub fn descending_padded(&self, len: usize) -> Vec<u32> {
        let mut d: Vec<u32> = self.exponents.iter().rev().copied().collect();
        d.resize(len.max(d.len()), 0);
        d
    }

    /// Appendix-style rendering: `"m × p^n"` entries separated by two spaces,
    /// `"0"` for the trivial group.
    pub fn to_table_text(&self) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        self.multiplicities()
            .iter()
            .map(|&(n, c)| {
                if n == 1 {
                    format!("{c} × {}", self.p)
                } else {
                    format!("{c} × {}^{n}", self.p)
                }
            })
            .collect::<Vec<_>>()
            .join("  ")
    }
}

impl fmt::Display for AbelianPGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table_text())
    }
}

/// Exponents `m_j >= 1` of a target `Z/p^{m_1} + ... + Z/p^{m_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuliVector(Vec<u32>);

impl ModuliVector {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::OutOfRange { what: "modulus exponent", detail: "must be >= 1".into() });
        }
        Ok(ModuliVector(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    pub fn moduli(&self, p: u64) -> Vec<BigInt> {
        self.0.iter().map(|&m| prime_power(p, m)).collect()
    }
}
