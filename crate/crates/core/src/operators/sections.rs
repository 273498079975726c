use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two standard affine charts of P^1: `x` around 0, `y = 1/x`
/// around infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    X,
    Y,
}

impl Chart {
    pub fn opposite(self) -> Chart {
        match self {
            Chart::X => Chart::Y,
            Chart::Y => Chart::X,
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::X => "x",
            Chart::Y => "y",
        })
    }
}

/// A monomial `z^power ∂_z^<order>` in chart `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub chart: Chart,
    pub power: u32,
    pub order: u32,
}

impl Term {
    pub fn new(chart: Chart, power: u32, order: u32) -> Self {
        Term { chart, power, order }
    }
}

/// A global section of `T^{⊗d}`: `Σ A_s y^s ∂_y^{⊗d} + Σ B_s x^s ∂_x^{⊗d}`
/// with `s < d` for A and `s <= d` for B. At level m the coefficients refer
/// to the divided-power basis, which keeps them integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorSection {
    pub p: u64,
    pub m: u32,
    pub d: u32,
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
}

impl TensorSection {
    pub fn new(p: u64, m: u32, d: u32, a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self> {
        if a.len() != d as usize {
            return Err(Error::Dimension { expected: d as usize, found: a.len() });
        }
        if b.len() != d as usize + 1 {
            return Err(Error::Dimension { expected: d as usize + 1, found: b.len() });
        }
        Ok(TensorSection { p, m, d, a, b })
    }

    pub fn zero(p: u64, m: u32, d: u32) -> Self {
        TensorSection { p, m, d, a: vec![BigInt::zero(); d as usize], b: vec![BigInt::zero(); d as usize + 1] }
    }

    /// Rank of `H^0(T^{⊗d})`, i.e. `2d + 1`.
    pub fn rank(d: u32) -> usize {
        2 * d as usize + 1
    }

    /// Standard coordinates `(A_0..A_{d-1}, B_0..B_d)`.
    pub fn coordinates(&self) -> Vec<BigInt> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    pub fn from_coordinates(p: u64, m: u32, d: u32, coords: &[BigInt]) -> Result<Self> {
        if coords.len() != Self::rank(d) {
            return Err(Error::Dimension { expected: Self::rank(d), found: coords.len() });
        }
        let (a, b) = coords.split_at(d as usize);
        TensorSection::new(p, m, d, a.to_vec(), b.to_vec())
    }

    /// The i-th standard basis vector, in the coordinate order above.
    pub fn basis_vector(p: u64, m: u32, d: u32, i: usize) -> Self {
        let mut c = vec![BigInt::zero(); Self::rank(d)];
        c[i] = BigInt::from(1);
        Self::from_coordinates(p, m, d, &c).expect("shape")
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        TensorSection {
            a: self.a.iter().map(|x| x * k).collect(),
            b: self.b.iter().map(|x| x * k).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(Zero::is_zero)
    }
}

/// A global differential operator of order `<= d`, as chart-tagged monomials
/// `z^i ∂_z^<k>` with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSection {
    pub p: u64,
    pub m: u32,
    pub d: u32,
    terms: BTreeMap<Term, BigInt>,
}

impl OperatorSection {
    pub fn zero(p: u64, m: u32, d: u32) -> Self {
        OperatorSection { p, m, d, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(p: u64, m: u32, d: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Term, BigInt)>,
    {
        let mut op = Self::zero(p, m, d);
        for (t, c) in terms {
            op.add_term(t, c)?;
        }
        Ok(op)
    }

    pub fn add_term(&mut self, term: Term, coeff: BigInt) -> Result<()> {
        if term.order > self.d {
            return Err(Error::OutOfRange {
                what: "operator order",
                detail: format!("order {} exceeds degree bound {}", term.order, self.d),
            });
        }
        if coeff.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(term).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&term);
        }
        Ok(())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &Term) -> BigInt {
        self.terms.get(term).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of two operators; the degree bound is the larger one.
    pub fn plus(&self, other: &OperatorSection) -> OperatorSection {
        let mut out = self.clone();
        out.d = out.d.max(other.d);
        for (t, c) in other.terms() {
            out.add_term(*t, c.clone()).expect("order within bound");
        }
        out
    }

    pub fn scaled(&self, k: &BigInt) -> OperatorSection {
        let mut out = OperatorSection::zero(self.p, self.m, self.d);
        for (t, c) in self.terms() {
            out.add_term(*t, c * k).expect("order within bound");
        }
        out
    }

    pub fn minus(&self, other: &OperatorSection) -> OperatorSection {
        self.plus(&other.scaled(&BigInt::from(-1)))
    }

    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(|t| t.order).max()
    }
}

// Wire formats: coefficients travel as decimal strings.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermWire {
    chart: Chart,
    power: u32,
    order: u32,
    coefficient: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorWire {
    p: u64,
    m: u32,
    d: u32,
    terms: Vec<TermWire>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorWire {
    p: u64,
    m: u32,
    d: u32,
    a: Vec<String>,
    b: Vec<String>,
}

fn parse_int<E: serde::de::Error>(s: &str) -> std::result::Result<BigInt, E> {
    BigInt::from_str(s.trim()).map_err(|_| E::custom(format!("invalid integer {s:?}")))
}

impl Serialize for OperatorSection {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorWire {
            p: self.p,
            m: self.m,
            d: self.d,
            terms: self
                .terms()
                .map(|(t, c)| TermWire { chart: t.chart, power: t.power, order: t.order, coefficient: c.to_string() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for OperatorSection {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = OperatorWire::deserialize(de)?;
        let mut op = OperatorSection::zero(w.p, w.m, w.d);
        for t in w.terms {
            op.add_term(Term::new(t.chart, t.power, t.order), parse_int(&t.coefficient)?)
                .map_err(D::Error::custom)?;
        }
        Ok(op)
    }
}

impl Serialize for TensorSection {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TensorWire {
            p: self.p,
            m: self.m,
            d: self.d,
            a: self.a.iter().map(ToString::to_string).collect(),
            b: self.b.iter().map(ToString::to_string).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TensorSection {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = TensorWire::deserialize(de)?;
        let a = w.a.iter().map(|s| parse_int(s)).collect::<std::result::Result<Vec<_>, D::Error>>()?;
        let b = w.b.iter().map(|s| parse_int(s)).collect::<std::result::Result<Vec<_>, D::Error>>()?;
        TensorSection::new(w.p, w.m, w.d, a, b).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zeros() {
        let mut op = OperatorSection::zero(3, 0, 2);
        let t = Term::new(Chart::X, 1, 2);
        op.add_term(t, BigInt::from(4)).unwrap();
        op.add_term(t, BigInt::from(-4)).unwrap();
        assert!(op.is_empty());
        assert!(op.add_term(Term::new(Chart::Y, 0, 3), BigInt::from(1)).is_err());
    }

    #[test]
    fn operator_json_roundtrip() {
        let op = OperatorSection::from_terms(
            5,
            1,
            3,
            [
                (Term::new(Chart::Y, 2, 3), BigInt::from(-125)),
                (Term::new(Chart::X, 0, 1), "123456789012345678901234567890".parse().unwrap()),
            ],
        )
        .unwrap();
        let s = serde_json::to_string(&op).unwrap();
        assert!(s.contains("\"coefficient\":\"-125\""));
        let back: OperatorSection = serde_json::from_str(&s).unwrap();
        assert_eq!(back, op);
    }

    #[test]
    fn tensor_json_rejects_bad_lengths() {
        let bad = r#"{"p":2,"m":0,"d":2,"a":["1"],"b":["0","0","0"]}"#;
        assert!(serde_json::from_str::<TensorSection>(bad).is_err());
        let good = r#"{"p":2,"m":0,"d":2,"a":["1","0"],"b":["0","0","4"]}"#;
        let t: TensorSection = serde_json::from_str(good).unwrap();
        assert_eq!(t.b[2], BigInt::from(4));
    }
}
