use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::report::{h1_filtered, h1_tensor};
use crate::arith::{self, valuation};
use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, kernel_lattice_basis, smith_with, AbelianPGroup, CokernelPresentation, IntegerMatrix, Transforms};
use crate::local_data::{q_d_matrix, q_le_d_matrix, PointLift};
use crate::operators::{in_chart, Chart, OperatorSection, Term};

/// `e = ⌊(p-1)(d+1)/(p+1)⌋`.
pub fn exponent_lower_bound(p: u64, d: u32) -> u32 {
    ((p - 1) * (d as u64 + 1) / (p + 1)) as u32
}

/// `dim H⁰(P¹, O(2d - i(p+1)))`.
pub fn graded_piece_dim(p: u64, d: u32, i: u32) -> u64 {
    let n = 2 * d as i64 - i as i64 * (p as i64 + 1);
    (n + 1).max(0) as u64
}

/// `{1} ∪ {x^s ∂_x^k : s <= k} ∪ {y^s ∂_y^k : s < k}` for `k = 1..=d`:
/// `(d+1)²` global operators whose order-k symbols span the degree-k
/// tensor sections.
pub fn global_operator_basis(p: u64, m: u32, d: u32) -> Vec<OperatorSection> {
    let one = |t: Term| OperatorSection::from_terms(p, m, d, [(t, BigInt::one())]).expect("order within bound");
    let mut out = vec![one(Term::new(Chart::X, 0, 0))];
    for k in 1..=d {
        out.extend((0..=k).map(|s| one(Term::new(Chart::X, s, k))));
        out.extend((0..k).map(|s| one(Term::new(Chart::Y, s, k))));
    }
    out
}

/// Rank of the operators' coefficient vectors in the x-chart.
fn x_chart_rank(ops: &[OperatorSection]) -> Result<usize> {
    let mut polys = Vec::with_capacity(ops.len());
    let mut keys = BTreeMap::new();
    for op in ops {
        let by_order = in_chart(op, Chart::X)?.into_polynomials()?;
        for (&k, poly) in &by_order {
            for i in 0..poly.len() {
                let next = keys.len();
                keys.entry((k, i)).or_insert(next);
            }
        }
        polys.push(by_order);
    }
    let mut matrix = IntegerMatrix::zeros(keys.len(), ops.len());
    for (j, by_order) in polys.iter().enumerate() {
        for (&k, poly) in by_order {
            for (i, c) in poly.iter().enumerate() {
                matrix[(keys[&(k, i)], j)] = c.clone();
            }
        }
    }
    Ok(smith_with(&matrix, Transforms::NONE).rank())
}

/// Outcome of comparing the direct cokernel of the order-≤d operator map
/// with the degree-wise sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingCheck {
    pub direct: AbelianPGroup,
    pub filtered: AbelianPGroup,
    pub basis_size: usize,
}

impl SplittingCheck {
    pub fn holds(&self) -> bool {
        self.direct == self.filtered
    }
}

/// Cokernel of `H⁰(D_{≤d}) → Q_{≤d}` built from [`global_operator_basis`],
/// against the sum of the tensor cohomology groups.
pub fn verify_splitting(p: u64, d: u32) -> Result<SplittingCheck> {
    verify_splitting_at_level(p, d, 0)
}

pub fn verify_splitting_at_level(p: u64, d: u32, m: u32) -> Result<SplittingCheck> {
    arith::ensure_prime(p)?;
    let basis = global_operator_basis(p, m, d);
    let rank = x_chart_rank(&basis)?;
    if rank != basis.len() {
        return Err(Error::RankDeficiency { expected: basis.len(), found: rank });
    }
    let (matrix, moduli) = q_le_d_matrix(&basis, p, m, d, &PointLift::canonical(p))?;
    let direct = cokernel_invariants(&matrix, &moduli, p)?;
    let filtered = h1_filtered(p, d, m)?.total_group();
    Ok(SplittingCheck { direct, filtered, basis_size: basis.len() })
}

/// Index bookkeeping for the kernel lattice of the degree-d map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCheck {
    pub index_exponent: u64,
    pub graded_exponent: u64,
    pub h1_exponent_sum: u64,
    pub target_exponent: u64,
}

impl LatticeCheck {
    pub fn holds(&self) -> bool {
        self.index_exponent == self.graded_exponent && self.index_exponent + self.h1_exponent_sum == self.target_exponent
    }
}

/// `v_p[Z^{2d+1} : ker] = d(2d+1) - Σ_i dim H⁰(O(2d - i(p+1)))`, and that
/// index plus the order exponent of `H¹` fills `Q_d`.
pub fn lattice_order_check(p: u64, d: u32) -> Result<LatticeCheck> {
    let (matrix, moduli) = q_d_matrix(p, d, 0)?;
    let basis = kernel_lattice_basis(&matrix, &moduli, p)?;
    let det = IntegerMatrix::from_columns(matrix.cols(), &basis)?.determinant()?;
    let index_exponent = valuation(&det, p)
        .filter(|&v| arith::prime_power(p, v) == num_traits::Signed::abs(&det))
        .ok_or_else(|| Error::MixedPrime { p, value: det.to_string() })? as u64;
    let dd = d as u64;
    let graded: u64 = (1..=d).map(|i| graded_piece_dim(p, d, i)).sum();
    Ok(LatticeCheck {
        index_exponent,
        graded_exponent: dd * (2 * dd + 1) - graded,
        h1_exponent_sum: h1_tensor(p, d, 0)?.order_exponent(),
        target_exponent: (p + 1) * dd * (dd + 1) / 2,
    })
}

/// Invariant-factor count of the degree-d group against the mod-p rank of
/// the local data map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandCheck {
    pub count: usize,
    pub rank_mod_p: usize,
    pub expected: usize,
    pub full_rank: bool,
}

impl SummandCheck {
    pub fn holds(&self) -> bool {
        self.count == self.expected
    }
}

/// `#factors = (p+1)d - rank(M mod p)`, which is `(p-1)d - 1` at full rank.
pub fn summand_count_check(p: u64, d: u32) -> Result<SummandCheck> {
    let (matrix, moduli) = q_d_matrix(p, d, 0)?;
    let pres = CokernelPresentation::new(&matrix, &moduli, p)?;
    let rows = (p as usize + 1) * d as usize;
    let rank = pres.rank_mod_p();
    let count = pres.group().rank();
    let full_rank = rank == 2 * d as usize + 1;
    if full_rank {
        debug_assert_eq!(rows - rank, (p as usize - 1) * d as usize - 1);
    }
    Ok(SummandCheck { count, rank_mod_p: rank, expected: rows - rank, full_rank })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_and_dims() {
        assert_eq!(exponent_lower_bound(3, 3), 2);
        assert_eq!(exponent_lower_bound(7, 3), 3);
        assert_eq!(exponent_lower_bound(2, 1), 0);
        assert_eq!(graded_piece_dim(3, 2, 1), 1);
        assert_eq!(graded_piece_dim(3, 2, 2), 0);
        assert_eq!(graded_piece_dim(2, 3, 1), 4);
    }

    #[test]
    fn basis_size() {
        for d in 1..5 {
            assert_eq!(global_operator_basis(3, 0, d).len(), (d as usize + 1).pow(2));
        }
    }

    #[test]
    fn splitting_small() {
        let c = verify_splitting(2, 1).unwrap();
        assert!(c.holds() && c.direct.is_trivial());
        let c = verify_splitting(2, 3).unwrap();
        assert!(c.holds());
        assert_eq!(c.direct, AbelianPGroup::new(2, vec![1, 1, 1]).unwrap());
        let c = verify_splitting(3, 4).unwrap();
        assert!(c.holds());
        assert_eq!(c.direct, AbelianPGroup::from_multiplicities(3, &[(1, 12), (2, 4)]).unwrap());
    }

    #[test]
    fn lattice_examples() {
        for (p, idx, h1, total) in [(2, 3, 0, 3), (3, 3, 1, 4), (5, 3, 3, 6)] {
            let c = lattice_order_check(p, 1).unwrap();
            assert_eq!((c.index_exponent, c.h1_exponent_sum, c.target_exponent), (idx, h1, total));
            assert!(c.holds());
        }
    }

    #[test]
    fn summand_examples() {
        assert_eq!(summand_count_check(3, 1).unwrap().count, 1);
        assert_eq!(summand_count_check(5, 3).unwrap().count, 11);
        let c = summand_count_check(2, 1).unwrap();
        assert_eq!(c.count, 0);
        assert!(c.holds());
    }
}
