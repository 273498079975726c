use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::coeffs::CoefficientTable;
use super::sections::{Chart, OperatorSection, Term, TensorSection};
use crate::error::{Error, Result};

/// An operator in a single chart with possibly negative powers and rational
/// coefficients, keyed by `(power, order)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentOperator {
    pub chart: Chart,
    terms: BTreeMap<(i64, u32), BigRational>,
}

impl LaurentOperator {
    pub fn zero(chart: Chart) -> Self {
        LaurentOperator { chart, terms: BTreeMap::new() }
    }

    pub fn add(&mut self, power: i64, order: u32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((power, order)).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(power, order));
        }
    }

    pub fn add_all(&mut self, other: &LaurentOperator, scale: &BigRational) {
        assert_eq!(self.chart, other.chart);
        for (&(i, k), c) in &other.terms {
            self.add(i, k, c * scale);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, power: i64, order: u32) -> BigRational {
        self.terms.get(&(power, order)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_power(&self) -> Option<i64> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// True when no negative power survives aggregation.
    pub fn is_regular(&self) -> bool {
        self.min_power().is_none_or(|i| i >= 0)
    }

    /// Integral polynomial form: per order, the coefficient list indexed by
    /// power. Negative powers or residual denominators are errors.
    pub fn into_polynomials(self) -> Result<BTreeMap<u32, Vec<BigInt>>> {
        let mut out: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
        for ((i, k), c) in self.terms {
            if i < 0 {
                return Err(Error::NotGlobal(format!("power {i} of order {k} in chart {}", self.chart)));
            }
            if !c.is_integer() {
                return Err(Error::IntegralityViolation(format!("residual denominator in coefficient {c}")));
            }
            let poly = out.entry(k).or_default();
            let i = i as usize;
            if poly.len() <= i {
                poly.resize(i + 1, BigInt::zero());
            }
            poly[i] = c.to_integer();
        }
        Ok(out)
    }
}

/// Rewrites `z^i ∂_z^<k>` in the opposite chart `w = 1/z`:
/// `(-1)^k Σ_{t=1}^{k} a^{(m)}_{k,t} w^{k+t-i} ∂_w^<t>` for `k >= 1`, and
/// `w^{-i}` for `k = 0`.
pub fn transform_term(term: Term, p: u64, m: u32) -> Result<LaurentOperator> {
    let table = CoefficientTable::new(term.order as u64, p, m)?;
    Ok(transform_with(&table, term))
}

pub(crate) fn transform_with(table: &CoefficientTable, term: Term) -> LaurentOperator {
    let mut out = LaurentOperator::zero(term.chart.opposite());
    let i = term.power as i64;
    let k = term.order;
    if k == 0 {
        out.add(-i, 0, BigRational::from_integer(1.into()));
        return out;
    }
    for t in 1..=k {
        let mut c = table.get(k as u64, t as u64).clone();
        if k % 2 == 1 {
            c = -c;
        }
        out.add(k as i64 + t as i64 - i, t, BigRational::from_integer(c));
    }
    out
}

/// Expresses a Laurent operator in the opposite chart.
pub fn transform_laurent(op: &LaurentOperator, table: &CoefficientTable) -> LaurentOperator {
    let mut out = LaurentOperator::zero(op.chart.opposite());
    for (&(i, k), c) in op.terms() {
        let image = if i >= 0 {
            transform_with(table, Term::new(op.chart, i as u32, k))
        } else {
            // z^{-n} = w^{n}: shift the image of the power-0 term
            let base = transform_with(table, Term::new(op.chart, 0, k));
            let mut shifted = LaurentOperator::zero(base.chart);
            for (&(j, t), v) in base.terms() {
                shifted.add(j - i, t, v.clone());
            }
            shifted
        };
        out.add_all(&image, c);
    }
    out
}

/// The whole operator written in one chart.
pub fn in_chart(op: &OperatorSection, chart: Chart) -> Result<LaurentOperator> {
    let table = CoefficientTable::new(op.d as u64, op.p, op.m)?;
    Ok(in_chart_with(op, chart, &table))
}

pub(crate) fn in_chart_with(op: &OperatorSection, chart: Chart, table: &CoefficientTable) -> LaurentOperator {
    let mut out = LaurentOperator::zero(chart);
    for (term, c) in op.terms() {
        let c = BigRational::from_integer(c.clone());
        if term.chart == chart {
            out.add(term.power as i64, term.order, c);
        } else {
            out.add_all(&transform_with(table, *term), &c);
        }
    }
    out
}

/// Regular in both charts after aggregating all terms.
pub fn is_global_section(op: &OperatorSection) -> bool {
    let Ok(table) = CoefficientTable::new(op.d as u64, op.p, op.m) else {
        return false;
    };
    [Chart::X, Chart::Y].iter().all(|&c| in_chart_with(op, c, &table).is_regular())
}

/// Reads a tensor section as an operator of order exactly d.
pub fn tensor_to_operator(delta: &TensorSection) -> OperatorSection {
    let terms = delta
        .a
        .iter()
        .enumerate()
        .map(|(s, c)| (Term::new(Chart::Y, s as u32, delta.d), c.clone()))
        .chain(delta.b.iter().enumerate().map(|(s, c)| (Term::new(Chart::X, s as u32, delta.d), c.clone())));
    OperatorSection::from_terms(delta.p, delta.m, delta.d, terms).expect("orders equal the bound")
}

/// Order-d part of an operator as a tensor section.
pub fn symbol(op: &OperatorSection) -> Result<TensorSection> {
    let d = op.d;
    let mut out = TensorSection::zero(op.p, op.m, d);
    for (t, c) in op.terms() {
        if t.order != d {
            continue;
        }
        match t.chart {
            Chart::Y if t.power < d => out.a[t.power as usize] = c.clone(),
            Chart::X if t.power <= d => out.b[t.power as usize] = c.clone(),
            _ => {
                return Err(Error::MalformedSection(format!(
                    "order-{d} term {}^{} outside the symbol index range",
                    t.chart, t.power
                )))
            }
        }
    }
    Ok(out)
}
