//! Cokernels of integer maps into `Z/p^{m_1} + ... + Z/p^{m_r}`.
//!
//! Everything here goes through the Smith form of the augmented matrix
//! `[M | diag(p^{m_j})]`, which has full row rank, so every invariant factor
//! is a nonzero power of p.

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{AbelianPGroup, ModuliVector};
use super::matrix::IntegerMatrix;
use super::snf::{smith_with, SmithForm, Transforms};
use crate::arith::{self, prime_power};
use crate::error::{Error, Result};

/// Smith data for `(⊕_j Z/p^{m_j}) / image(M)`.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    p: u64,
    source_cols: usize,
    moduli: ModuliVector,
    smith: SmithForm,
    exponents: Vec<u32>,
}

fn augmented(m: &IntegerMatrix, moduli: &ModuliVector, p: u64) -> Result<IntegerMatrix> {
    arith::ensure_prime(p)?;
    if m.rows() != moduli.len() {
        return Err(Error::Dimension { expected: moduli.len(), found: m.rows() });
    }
    m.hstack(&IntegerMatrix::diagonal(&moduli.moduli(p)))
}

impl CokernelPresentation {
    pub fn new(m: &IntegerMatrix, moduli: &ModuliVector, p: u64) -> Result<Self> {
        Self::with_transforms(m, moduli, p, Transforms::ALL)
    }

    fn with_transforms(m: &IntegerMatrix, moduli: &ModuliVector, p: u64, want: Transforms) -> Result<Self> {
        let a = augmented(m, moduli, p)?;
        let smith = smith_with(&a, want);
        let r = moduli.len();
        if smith.rank() != r {
            return Err(Error::RankDeficiency { expected: r, found: smith.rank() });
        }
        let exponents = smith
            .invariant_factors()
            .iter()
            .map(|f| {
                let v = arith::valuation(f, p).expect("nonzero factor");
                if prime_power(p, v) != *f {
                    Err(Error::MixedPrime { p, value: f.to_string() })
                } else {
                    Ok(v)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CokernelPresentation { p, source_cols: m.cols(), moduli: moduli.clone(), smith, exponents })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn group(&self) -> AbelianPGroup {
        AbelianPGroup::new(self.p, self.exponents.iter().copied().filter(|&n| n > 0).collect())
            .expect("valid exponents")
    }

    /// Per-row exponents of the diagonalized presentation (zeros included).
    pub fn row_exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Number of unit invariant factors, i.e. the rank of `M` mod p.
    pub fn rank_mod_p(&self) -> usize {
        self.exponents.iter().filter(|&&n| n == 0).count()
    }

    /// Least j with `p^j * c` in the image, for a target vector `c`.
    pub fn order_exponent(&self, c: &[BigInt]) -> Result<u32> {
        let u = self.smith.left.as_ref().expect("left transform tracked");
        let uc = u.mul_vec(c)?;
        Ok(uc
            .iter()
            .zip(&self.exponents)
            .map(|(x, &n)| if n == 0 { 0 } else { n - arith::valuation_capped(x, self.p, n) })
            .max()
            .unwrap_or(0))
    }

    /// A target vector whose class generates the i-th diagonal summand
    /// (of order `p^{row_exponents()[i]}`), reduced into the moduli box.
    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        let ui = self.smith.left_inverse.as_ref().expect("left inverse tracked");
        let moduli = self.moduli.moduli(self.p);
        ui.column(i).iter().zip(&moduli).map(|(x, m)| arith::reduce(x, m)).collect()
    }

    /// Index of a diagonal summand of maximal order, if the group is nontrivial.
    pub fn max_order_summand(&self) -> Option<usize> {
        let best = self.exponents.iter().copied().max().filter(|&n| n > 0)?;
        self.exponents.iter().position(|&n| n == best)
    }

    /// Basis of `{v : M v ≡ 0 mod p^{m_j}}`; always `cols` vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let v = self.smith.right.as_ref().expect("right transform tracked");
        let r = self.moduli.len();
        (r..r + self.source_cols)
            .map(|j| (0..self.source_cols).map(|i| v[(i, j)].clone()).collect())
            .collect()
    }

    /// Some `v` with `M v ≡ target` componentwise modulo `p^{m_j}`.
    pub fn solve(&self, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        let u = self.smith.left.as_ref().expect("left transform tracked");
        let v = self.smith.right.as_ref().expect("right transform tracked");
        let ut = u.mul_vec(target)?;
        let factors = self.smith.invariant_factors();
        let mut y = vec![BigInt::zero(); v.rows()];
        for (i, (x, f)) in ut.iter().zip(&factors).enumerate() {
            let (q, rem) = num_integer::Integer::div_rem(x, f);
            if !rem.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
        let x = v.mul_vec(&y)?;
        Ok(Some(x[..self.source_cols].to_vec()))
    }
}

/// Invariant factors of `(⊕_j Z/p^{m_j}) / image(M)`, units dropped.
pub fn cokernel_invariants(m: &IntegerMatrix, moduli: &ModuliVector, p: u64) -> Result<AbelianPGroup> {
    Ok(CokernelPresentation::with_transforms(m, moduli, p, Transforms::NONE)?.group())
}

/// Basis of the full-rank lattice `{v ∈ Z^cols : M v ≡ 0 mod p^{m_j}}`.
pub fn kernel_lattice_basis(m: &IntegerMatrix, moduli: &ModuliVector, p: u64) -> Result<Vec<Vec<BigInt>>> {
    let pres = CokernelPresentation::with_transforms(
        m,
        moduli,
        p,
        Transforms { left: false, left_inverse: false, right: true },
    )?;
    Ok(pres.kernel_basis())
}

/// Least j >= 0 such that `p^j c` lies in `image(M)` plus the moduli lattice.
pub fn element_order_in_cokernel(m: &IntegerMatrix, moduli: &ModuliVector, p: u64, c: &[BigInt]) -> Result<u32> {
    if c.len() != moduli.len() {
        return Err(Error::Dimension { expected: moduli.len(), found: c.len() });
    }
    let pres = CokernelPresentation::with_transforms(
        m,
        moduli,
        p,
        Transforms { left: true, left_inverse: false, right: false },
    )?;
    pres.order_exponent(c)
}

/// `A / <a>` for an element given in the coordinates of `A`'s cyclic factors
/// (ascending exponent order).
pub fn quotient_by_cyclic(group: &AbelianPGroup, a: &[BigInt]) -> Result<AbelianPGroup> {
    let r = group.rank();
    if a.len() != r {
        return Err(Error::Dimension { expected: r, found: a.len() });
    }
    if r == 0 {
        return Ok(group.clone());
    }
    let col = IntegerMatrix::from_columns(r, &[a.to_vec()])?;
    let moduli = ModuliVector::new(group.exponents().to_vec())?;
    cokernel_invariants(&col, &moduli, group.p())
}

/// Does `quotient` surject onto `Z/p^{n_1} + ... + Z/p^{n_{r-1}}` (the
/// original factors with one largest factor removed)? For finite abelian
/// p-groups this is componentwise domination of descending exponent lists.
pub fn dominates_all_but_largest(original: &AbelianPGroup, quotient: &AbelianPGroup) -> bool {
    let mut target: Vec<u32> = original.exponents().iter().rev().copied().collect();
    if !target.is_empty() {
        target.remove(0);
    }
    let have = quotient.descending_padded(target.len());
    have.iter().zip(&target).all(|(h, t)| h >= t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn zero_map_gives_whole_target() {
        let m = IntegerMatrix::zeros(1, 1);
        let g = cokernel_invariants(&m, &ModuliVector::new(vec![2]).unwrap(), 3).unwrap();
        assert_eq!(g.exponents(), &[2]);
    }

    #[test]
    fn surjective_map_gives_trivial_group() {
        let m = IntegerMatrix::from_rows(&[vec![1]]);
        let g = cokernel_invariants(&m, &ModuliVector::new(vec![2]).unwrap(), 3).unwrap();
        assert!(g.is_trivial());
    }

    #[test]
    fn dimension_errors() {
        let m = IntegerMatrix::zeros(2, 1);
        let mv = ModuliVector::new(vec![1]).unwrap();
        assert!(matches!(cokernel_invariants(&m, &mv, 2), Err(Error::Dimension { .. })));
        assert!(matches!(cokernel_invariants(&IntegerMatrix::zeros(1, 1), &mv, 4), Err(Error::NotPrime(4))));
        let g = AbelianPGroup::new(2, vec![1, 2]).unwrap();
        assert!(quotient_by_cyclic(&g, &big(&[1])).is_err());
    }

    #[test]
    fn kernel_examples() {
        let mv = ModuliVector::new(vec![1]).unwrap();
        let basis = kernel_lattice_basis(&IntegerMatrix::from_rows(&[vec![1]]), &mv, 2).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0][0].magnitude(), &num_bigint::BigUint::from(2u8));

        let basis = kernel_lattice_basis(&IntegerMatrix::zeros(1, 2), &mv, 2).unwrap();
        let lattice = IntegerMatrix::from_columns(2, &basis).unwrap();
        assert!(lattice.is_unimodular());
    }

    #[test]
    fn element_orders() {
        let m = IntegerMatrix::zeros(1, 1);
        let mv = ModuliVector::new(vec![3]).unwrap();
        assert_eq!(element_order_in_cokernel(&m, &mv, 5, &big(&[0])).unwrap(), 0);
        assert_eq!(element_order_in_cokernel(&m, &mv, 5, &big(&[1])).unwrap(), 3);
        assert_eq!(element_order_in_cokernel(&m, &mv, 5, &big(&[25])).unwrap(), 1);
    }

    #[test]
    fn cyclic_quotients() {
        let g = AbelianPGroup::new(3, vec![1]).unwrap();
        assert!(quotient_by_cyclic(&g, &big(&[1])).unwrap().is_trivial());
        let g = AbelianPGroup::new(3, vec![1, 1]).unwrap();
        assert_eq!(quotient_by_cyclic(&g, &big(&[0, 0])).unwrap(), g);
    }

    #[test]
    fn solve_roundtrip() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2], vec![0, 3], vec![4, 1]]);
        let mv = ModuliVector::new(vec![2, 1, 3]).unwrap();
        let pres = CokernelPresentation::new(&m, &mv, 3).unwrap();
        let x = big(&[5, -7]);
        let t = m.mul_vec(&x).unwrap();
        let sol = pres.solve(&t).unwrap().expect("in image");
        let back = m.mul_vec(&sol).unwrap();
        for ((a, b), md) in back.iter().zip(&t).zip(mv.moduli(3)) {
            assert!(arith::reduce(&(a - b), &md).is_zero());
        }
    }
}
