use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorial, isqrt, log_p, prime_power, rational_ge_log, rational_le_log, valuation_factorial};
use crate::error::{Error, Result};
use crate::linalg::CokernelPresentation;
use crate::local_data::q_d_matrix;
use crate::operators::q_level;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Exact `v_p(d!/q!)` with `q = ⌊d/p^m⌋`, against
/// `d/(p-1) - d/((p-1)p^m) + log_p d + 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorialQuotient {
    pub d: u64,
    pub p: u64,
    pub m: u32,
    pub q: u64,
    pub exact: u64,
    /// Rational part of the bound; the full bound adds `log_p d`.
    pub bound_rational: String,
    pub bound_approx: f64,
    pub holds: bool,
}

pub fn vp_factorial_quotient(d: u64, p: u64, m: u32) -> Result<FactorialQuotient> {
    arith::ensure_prime(p)?;
    if d == 0 {
        return Err(Error::OutOfRange { what: "degree", detail: "d must be >= 1".into() });
    }
    let q = q_level(d, p, m);
    let exact = valuation_factorial(d, p) - valuation_factorial(q, p);
    let pm = prime_power(p, m);
    let r = BigRational::new(d.into(), (p - 1).into())
        - BigRational::new(d.into(), BigInt::from(p - 1) * &pm)
        + rat(1, 1);
    let holds = rational_le_log(&(BigRational::from_integer(exact.into()) - &r), p, d);
    Ok(FactorialQuotient {
        d,
        p,
        m,
        q,
        exact,
        bound_approx: r.to_f64().unwrap_or(f64::NAN) + log_p(d, p),
        bound_rational: r.to_string(),
        holds,
    })
}

/// Choice of `n_d` in the pushed class `(d!/q!) p^{n_d} c_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Schedule {
    Sqrt,
    Zero,
}

impl Schedule {
    pub fn n(self, d: u64) -> u64 {
        match self {
            Schedule::Sqrt => isqrt(d),
            Schedule::Zero => 0,
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schedule::Sqrt => "sqrt",
            Schedule::Zero => "zero",
        })
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(Schedule::Sqrt),
            "zero" => Ok(Schedule::Zero),
            _ => Err(Error::OutOfRange { what: "schedule", detail: format!("unknown schedule {s:?}") }),
        }
    }
}

/// `((p²-3p)/(p²-1) + 1/((p-1)p^m)) d - n_d - 2`; the lower bound is this
/// minus `log_p d`.
pub fn lower_bound_rational_part(p: u64, m: u32, d: u64, n_d: u64) -> BigRational {
    let p_i = BigInt::from(p);
    let slope = BigRational::new(&p_i * &p_i - 3u32 * &p_i, &p_i * &p_i - 1u32)
        + BigRational::new(1.into(), BigInt::from(p - 1) * prime_power(p, m));
    slope * BigRational::from_integer(d.into()) - BigRational::from_integer((n_d + 2).into())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescentRow {
    pub d: u64,
    pub q: u64,
    pub n: u64,
    /// Largest invariant exponent of the degree-d group.
    pub max_exponent: u32,
    pub vp_quotient: u64,
    pub exact_exponent: u32,
    pub lower_bound: f64,
    pub bound_nonnegative: bool,
    pub bound_satisfied: bool,
}

/// Growth of the exact exponents over the computed range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trend {
    pub first: u32,
    pub last: u32,
    pub max: u32,
    pub rising_steps: usize,
    pub falling_steps: usize,
    pub final_exceeds_first: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDiagnostic {
    pub p: u64,
    pub m: u32,
    pub schedule: Schedule,
    pub rows: Vec<DescentRow>,
    pub trend: Option<Trend>,
    pub note: Option<String>,
}

impl LevelDiagnostic {
    pub fn bounds_respected(&self) -> bool {
        self.rows.iter().all(|r| r.bound_satisfied)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("p={} m={} schedule={}\n", self.p, self.m, self.schedule);
        out.push_str("d  q  n_d  e_max  v_p(d!/q!)  exact  lower_bound\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}  {}  {}  {}  {}  {}  {:.3}{}\n",
                r.d,
                r.q,
                r.n,
                r.max_exponent,
                r.vp_quotient,
                r.exact_exponent,
                r.lower_bound,
                if r.bound_satisfied { "" } else { "  VIOLATED" }
            ));
        }
        if let Some(t) = &self.trend {
            out.push_str(&format!(
                "trend: first={} last={} max={} rising={} falling={} final>first={}\n",
                t.first, t.last, t.max, t.rising_steps, t.falling_steps, t.final_exceeds_first
            ));
        }
        if let Some(n) = &self.note {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

fn trend(rows: &[DescentRow]) -> Option<Trend> {
    let first = rows.first()?.exact_exponent;
    let last = rows.last()?.exact_exponent;
    let pairs = rows.windows(2).map(|w| (w[0].exact_exponent, w[1].exact_exponent));
    Some(Trend {
        first,
        last,
        max: rows.iter().map(|r| r.exact_exponent).max().unwrap_or(0),
        rising_steps: pairs.clone().filter(|(a, b)| b > a).count(),
        falling_steps: pairs.filter(|(a, b)| b < a).count(),
        final_exceeds_first: last > first,
    })
}

fn descent_row(p: u64, m: u32, d: u32, schedule: Schedule) -> Result<DescentRow> {
    let dd = d as u64;
    let q = q_level(dd, p, m);
    let n = schedule.n(dd);
    let (matrix, moduli) = q_d_matrix(p, d, m)?;
    let pres = CokernelPresentation::new(&matrix, &moduli, p)?;
    let max_exponent = pres.group().max_exponent();
    let exact_exponent = match pres.max_order_summand() {
        None => 0,
        Some(i) => {
            let scale = factorial(dd) / factorial(q) * prime_power(p, n as u32);
            let c: Vec<BigInt> = pres.generator(i).iter().map(|x| x * &scale).collect();
            pres.order_exponent(&c)?
        }
    };
    let r = lower_bound_rational_part(p, m, dd, n);
    let bound_nonnegative = rational_ge_log(&r, p, dd);
    let bound_satisfied = !bound_nonnegative || rational_le_log(&(r.clone() - BigRational::from_integer(exact_exponent.into())), p, dd);
    Ok(DescentRow {
        d: dd,
        q,
        n,
        max_exponent,
        vp_quotient: valuation_factorial(dd, p) - valuation_factorial(q, p),
        exact_exponent,
        lower_bound: r.to_f64().unwrap_or(f64::NAN) - log_p(dd, p),
        bound_nonnegative,
        bound_satisfied,
    })
}

/// Order exponents of `(d!/q!) p^{n_d} c_d` for a maximal-order class `c_d`
/// of each degree `d = 1..=d_max`, tabulated against the lower bound.
pub fn level_descent_diagnostic(p: u64, m: u32, d_max: u32, schedule: Schedule) -> Result<LevelDiagnostic> {
    use rayon::prelude::*;
    arith::ensure_prime(p)?;
    let rows = (1..=d_max).into_par_iter().map(|d| descent_row(p, m, d, schedule)).collect::<Result<Vec<_>>>()?;
    let (trend, note) = if p == 2 {
        (None, Some("bound slope is negative for p = 2; reported only".to_string()))
    } else {
        (trend(&rows), None)
    };
    Ok(LevelDiagnostic { p, m, schedule, rows, trend, note })
}
