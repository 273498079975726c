//! Local data: the image of a global section in the skyscraper quotient
//! `Q_{<=d} = ⊕_a ⊕_{k=1}^{d} ⊕_{i<k} Z/p^{k-i} · x_a^i ∂^k`, one block per
//! point `a ∈ {0, 1, ..., p-1, ∞}`.
//!
//! Coordinates are ordered by point (finite points ascending, then ∞), then
//! by order k ascending, then by power i ascending.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, binomial, prime_power};
use crate::error::{Error, Result};
use crate::linalg::{IntegerMatrix, ModuliVector};
use crate::operators::{in_chart_with, is_global_section, Chart, CoefficientTable, OperatorSection, TensorSection};

/// An `F_p`-rational point of P^1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Finite(u64),
    Infinity,
}

impl Point {
    pub fn all(p: u64) -> impl Iterator<Item = Point> {
        (0..p).map(Point::Finite).chain(std::iter::once(Point::Infinity))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(a) => write!(f, "{a}"),
            Point::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            return Ok(Point::Infinity);
        }
        s.parse().map(Point::Finite).map_err(serde::de::Error::custom)
    }
}

/// Integer lifts `ξ_a ≡ a (mod p)` of the finite points; ∞ always uses the
/// chart coordinate y.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointLift {
    p: u64,
    lifts: Vec<BigInt>,
}

impl PointLift {
    /// `ξ_a = a`.
    pub fn canonical(p: u64) -> Self {
        PointLift { p, lifts: (0..p).map(BigInt::from).collect() }
    }

    pub fn new(p: u64, lifts: Vec<BigInt>) -> Result<Self> {
        if lifts.len() != p as usize {
            return Err(Error::Dimension { expected: p as usize, found: lifts.len() });
        }
        let pb = BigInt::from(p);
        for (a, xi) in lifts.iter().enumerate() {
            if arith::reduce(xi, &pb) != BigInt::from(a) {
                return Err(Error::OutOfRange { what: "point lift", detail: format!("ξ_{a} = {xi} is not ≡ {a} mod {p}") });
            }
        }
        Ok(PointLift { p, lifts })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn lift(&self, a: u64) -> &BigInt {
        &self.lifts[a as usize]
    }
}

/// `(point, k, i)` for each coordinate of the orders `k_min..=k_max`.
pub fn coordinate_layout(p: u64, k_min: u32, k_max: u32) -> Vec<(Point, u32, u32)> {
    let mut out = Vec::new();
    for pt in Point::all(p) {
        for k in k_min..=k_max {
            for i in 0..k {
                out.push((pt, k, i));
            }
        }
    }
    out
}

/// Modulus exponents `k - i` in layout order.
pub fn layout_moduli(p: u64, k_min: u32, k_max: u32) -> ModuliVector {
    ModuliVector::new(coordinate_layout(p, k_min, k_max).iter().map(|&(_, k, i)| k - i).collect())
        .expect("k > i")
}

/// Number of coordinates of `Q_{<=d}`: `(p+1) d (d+1) / 2`.
pub fn q_le_d_size(p: u64, d: u32) -> usize {
    (p as usize + 1) * (d as usize) * (d as usize + 1) / 2
}

/// Residues of a section in the orders `k_min..=k_max`, each reduced into
/// `[0, p^{k-i})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDataVector {
    pub p: u64,
    pub m: u32,
    pub k_min: u32,
    pub k_max: u32,
    residues: Vec<BigInt>,
}

impl LocalDataVector {
    fn from_raw(p: u64, m: u32, k_min: u32, k_max: u32, raw: Vec<BigInt>) -> Self {
        let layout = coordinate_layout(p, k_min, k_max);
        debug_assert_eq!(layout.len(), raw.len());
        let residues = raw
            .iter()
            .zip(&layout)
            .map(|(x, &(_, k, i))| arith::reduce(x, &prime_power(p, k - i)))
            .collect();
        LocalDataVector { p, m, k_min, k_max, residues }
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }

    pub fn layout(&self) -> Vec<(Point, u32, u32)> {
        coordinate_layout(self.p, self.k_min, self.k_max)
    }

    pub fn get(&self, point: Point, k: u32, i: u32) -> Option<&BigInt> {
        self.layout().iter().position(|&c| c == (point, k, i)).map(|j| &self.residues[j])
    }

    /// The sub-vector for orders `k_min..=k_max` (must lie within range).
    pub fn slice(&self, k_min: u32, k_max: u32) -> LocalDataVector {
        assert!(self.k_min <= k_min && k_max <= self.k_max);
        let residues = self
            .layout()
            .iter()
            .zip(&self.residues)
            .filter(|((_, k, _), _)| (k_min..=k_max).contains(k))
            .map(|(_, r)| r.clone())
            .collect();
        LocalDataVector { p: self.p, m: self.m, k_min, k_max, residues }
    }

    /// Componentwise sum, reduced.
    pub fn plus(&self, other: &LocalDataVector) -> LocalDataVector {
        assert_eq!((self.p, self.k_min, self.k_max), (other.p, other.k_min, other.k_max));
        let raw = self.residues.iter().zip(&other.residues).map(|(a, b)| a + b).collect();
        LocalDataVector::from_raw(self.p, self.m, self.k_min, self.k_max, raw)
    }

    /// Coordinates with a nonzero residue.
    pub fn nonzero_coordinates(&self) -> Vec<((Point, u32, u32), BigInt)> {
        self.layout().into_iter().zip(self.residues.iter().cloned()).filter(|(_, r)| !r.is_zero()).collect()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryWire {
    point: Point,
    k: u32,
    i: u32,
    modulus_exponent: u32,
    residue: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LocalDataWire {
    p: u64,
    m: u32,
    min_order: u32,
    max_order: u32,
    entries: Vec<EntryWire>,
}

impl Serialize for LocalDataVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LocalDataWire {
            p: self.p,
            m: self.m,
            min_order: self.k_min,
            max_order: self.k_max,
            entries: self
                .layout()
                .into_iter()
                .zip(&self.residues)
                .map(|((point, k, i), r)| EntryWire { point, k, i, modulus_exponent: k - i, residue: r.to_string() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalDataVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = LocalDataWire::deserialize(d)?;
        let layout = coordinate_layout(w.p, w.min_order, w.max_order);
        if layout.len() != w.entries.len() {
            return Err(D::Error::custom(format!("expected {} entries, found {}", layout.len(), w.entries.len())));
        }
        let mut raw = Vec::with_capacity(layout.len());
        for (e, c) in w.entries.iter().zip(&layout) {
            if (e.point, e.k, e.i) != *c {
                return Err(D::Error::custom(format!("entry ({}, {}, {}) out of canonical order", e.point, e.k, e.i)));
            }
            raw.push(e.residue.parse::<BigInt>().map_err(D::Error::custom)?);
        }
        Ok(LocalDataVector::from_raw(w.p, w.m, w.min_order, w.max_order, raw))
    }
}

/// Coefficients of `x_a^i`, `i < count`, of `f(x_a + ξ)`.
fn shifted_low_coefficients(poly: &[BigInt], xi: &BigInt, count: u32) -> Vec<BigInt> {
    (0..count as u64)
        .map(|i| {
            poly.iter()
                .enumerate()
                .skip(i as usize)
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| c * binomial(j as u64, i) * num_traits::pow(xi.clone(), j - i as usize))
                .sum()
        })
        .collect()
}

fn low_coefficients(poly: &[BigInt], count: u32) -> Vec<BigInt> {
    (0..count as usize).map(|i| poly.get(i).cloned().unwrap_or_default()).collect()
}

/// Degree-d local data of a tensor section, read off directly from the two
/// chart polynomials `Q(y) = Σ A_s y^s + (-1)^d Σ B_s y^{2d-s}` at ∞ and
/// `P(x) = Σ B_s x^s + (-1)^d Σ A_s x^{2d-s}` at the finite points.
pub fn local_data_tensor(delta: &TensorSection, lifts: &PointLift) -> LocalDataVector {
    let d = delta.d as usize;
    let sign = if d.is_multiple_of(2) { BigInt::from(1) } else { BigInt::from(-1) };
    let mut p_x = vec![BigInt::zero(); 2 * d + 1];
    let mut q_y = vec![BigInt::zero(); 2 * d + 1];
    for (s, b) in delta.b.iter().enumerate() {
        p_x[s] += b;
        q_y[2 * d - s] += &sign * b;
    }
    for (s, a) in delta.a.iter().enumerate() {
        q_y[s] += a;
        p_x[2 * d - s] += &sign * a;
    }
    let mut raw = Vec::with_capacity((delta.p as usize + 1) * d);
    for pt in Point::all(delta.p) {
        match pt {
            Point::Finite(a) => raw.extend(shifted_low_coefficients(&p_x, lifts.lift(a), delta.d)),
            Point::Infinity => raw.extend(low_coefficients(&q_y, delta.d)),
        }
    }
    LocalDataVector::from_raw(delta.p, delta.m, delta.d, delta.d, raw)
}

/// Local data in all orders `1..=d` of a global operator.
pub fn local_data_operator(op: &OperatorSection, lifts: &PointLift) -> Result<LocalDataVector> {
    let table = CoefficientTable::new(op.d as u64, op.p, op.m)?;
    local_data_operator_with(op, lifts, &table)
}

pub(crate) fn local_data_operator_with(
    op: &OperatorSection,
    lifts: &PointLift,
    table: &CoefficientTable,
) -> Result<LocalDataVector> {
    if !is_global_section(op) {
        return Err(Error::NotGlobal("operator has poles after changing charts".into()));
    }
    let x_polys = in_chart_with(op, Chart::X, table).into_polynomials()?;
    let y_polys = in_chart_with(op, Chart::Y, table).into_polynomials()?;
    let empty = Vec::new();
    let mut raw = Vec::with_capacity(q_le_d_size(op.p, op.d));
    for pt in Point::all(op.p) {
        for k in 1..=op.d {
            match pt {
                Point::Finite(a) => {
                    let poly = x_polys.get(&k).unwrap_or(&empty);
                    raw.extend(shifted_low_coefficients(poly, lifts.lift(a), k));
                }
                Point::Infinity => raw.extend(low_coefficients(y_polys.get(&k).unwrap_or(&empty), k)),
            }
        }
    }
    Ok(LocalDataVector::from_raw(op.p, op.m, 1, op.d, raw))
}

/// Matrix of `local_data_tensor` on the standard basis `(A_0..A_{d-1},
/// B_0..B_d)`, with the modulus exponents `d - i` of its rows.
pub fn q_d_matrix(p: u64, d: u32, m: u32) -> Result<(IntegerMatrix, ModuliVector)> {
    q_d_matrix_with_lifts(p, d, m, &PointLift::canonical(p))
}

pub fn q_d_matrix_with_lifts(p: u64, d: u32, m: u32, lifts: &PointLift) -> Result<(IntegerMatrix, ModuliVector)> {
    arith::ensure_prime(p)?;
    if d == 0 {
        return Err(Error::OutOfRange { what: "degree", detail: "d must be >= 1".into() });
    }
    let columns: Vec<Vec<BigInt>> = (0..TensorSection::rank(d))
        .map(|j| local_data_tensor(&TensorSection::basis_vector(p, m, d, j), lifts).residues)
        .collect();
    let matrix = IntegerMatrix::from_columns((p as usize + 1) * d as usize, &columns)?;
    Ok((matrix, layout_moduli(p, d, d)))
}

/// Matrix of `local_data_operator` (orders `1..=d`) on a list of operators.
pub fn q_le_d_matrix(ops: &[OperatorSection], p: u64, m: u32, d: u32, lifts: &PointLift) -> Result<(IntegerMatrix, ModuliVector)> {
    let table = CoefficientTable::new(d as u64, p, m)?;
    let columns = ops
        .iter()
        .map(|op| {
            let mut op = op.clone();
            op.d = d;
            local_data_operator_with(&op, lifts, &table).map(|v| v.residues)
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = IntegerMatrix::from_columns(q_le_d_size(p, d), &columns)?;
    Ok((matrix, layout_moduli(p, 1, d)))
}
