//! Chart-change coefficients for powers of derivations on P^1.
//!
//! With `xy = 1` one has `∂_y^s = (-1)^s Σ_{t=1}^{s} a_{s,t} x^{s+t} ∂_x^t`,
//! where `a_{s,t} = C(s,t) (s-1)!/(t-1)!`. For divided powers of level m,
//! `∂^{<k>} = (q_k!/k!) ∂^k` with `q_k = floor(k / p^m)`, the coefficients
//! become `a^{(m)}_{s,t} = C(s-1,t-1) q_s!/q_t!`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};

fn check_range(s: u64, t: u64) -> Result<()> {
    if t == 0 || t > s {
        return Err(Error::OutOfRange { what: "coefficient index", detail: format!("need 1 <= t <= s, got s={s}, t={t}") });
    }
    Ok(())
}

/// `a_{s,t} = C(s,t) (s-1)!/(t-1)!`.
pub fn coeff_a(s: u64, t: u64) -> Result<BigInt> {
    check_range(s, t)?;
    Ok(binomial(s, t) * factorial(s - 1) / factorial(t - 1))
}

/// `a_{s,t}` for all `1 <= t <= s <= s_max` from the recurrence
/// `a_{s+1,t} = a_{s,t-1} + (s+t) a_{s,t}` with `a_{1,1} = 1`.
/// Row `s` of the result is indexed by `t` (entry 0 unused, always zero).
pub fn coeff_table_by_recurrence(s_max: u64) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = vec![Vec::new()];
    if s_max == 0 {
        return table;
    }
    table.push(vec![BigInt::zero(), BigInt::one()]);
    for s in 1..s_max {
        let prev = &table[s as usize];
        let at = |t: u64| -> BigInt { prev.get(t as usize).cloned().unwrap_or_default() };
        let row: Vec<BigInt> = (0..=s + 1)
            .map(|t| if t == 0 { BigInt::zero() } else { at(t - 1) + (s + t) * at(t) })
            .collect();
        table.push(row);
    }
    table
}

/// `q^{(m)}_d = floor(d / p^m)`.
pub fn q_level(d: u64, p: u64, m: u32) -> u64 {
    match p.checked_pow(m) {
        Some(pm) => d / pm,
        None => 0,
    }
}

/// `q!/k!` as a rational: the scale of the level-m divided power of order k.
pub fn divided_power_scale(k: u64, p: u64, m: u32) -> BigRational {
    BigRational::new(factorial(q_level(k, p, m)), factorial(k))
}

/// `a^{(m)}_{s,t}`. The defining rational expression
/// `a_{s,t} (q_s!/s!) (q_t!/t!)^{-1}` is evaluated exactly and required to be
/// an integer equal to `C(s-1,t-1) q_s!/q_t!`.
pub fn coeff_a_level(s: u64, t: u64, p: u64, m: u32) -> Result<BigInt> {
    check_range(s, t)?;
    let rational = BigRational::from_integer(coeff_a(s, t)?) * divided_power_scale(s, p, m)
        / divided_power_scale(t, p, m);
    if !rational.is_integer() {
        return Err(Error::IntegralityViolation(format!("a^({m})_({s},{t}) = {rational} for p = {p}")));
    }
    let value = rational.to_integer();
    let closed = binomial(s - 1, t - 1) * factorial(q_level(s, p, m)) / factorial(q_level(t, p, m));
    if value != closed {
        return Err(Error::IntegralityViolation(format!(
            "a^({m})_({s},{t}): rational form {value} != closed form {closed} for p = {p}"
        )));
    }
    Ok(value)
}

/// Coefficients `a^{(m)}_{s,t}` for `1 <= t <= s <= s_max`, indexed `[s][t]`.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    p: u64,
    m: u32,
    rows: Vec<Vec<BigInt>>,
}

impl CoefficientTable {
    pub fn new(s_max: u64, p: u64, m: u32) -> Result<Self> {
        let mut rows = vec![Vec::new()];
        for s in 1..=s_max {
            let mut row = vec![BigInt::zero()];
            for t in 1..=s {
                row.push(coeff_a_level(s, t, p, m)?);
            }
            rows.push(row);
        }
        Ok(CoefficientTable { p, m, rows })
    }

    pub fn get(&self, s: u64, t: u64) -> &BigInt {
        &self.rows[s as usize][t as usize]
    }

    pub fn s_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    pub fn level(&self) -> (u64, u32) {
        (self.p, self.m)
    }
}

/// `Σ_{t=u}^{s} (-1)^t a_{s,t} a_{t,u}`; equals `(-1)^s` when `u = s` and 0
/// when `u < s` (changing charts twice is the identity).
pub fn involution_sum(table: &CoefficientTable, s: u64, u: u64) -> BigInt {
    (u..=s)
        .map(|t| {
            let term = table.get(s, t) * table.get(t, u);
            if t % 2 == 0 { term } else { -term }
        })
        .sum()
}
