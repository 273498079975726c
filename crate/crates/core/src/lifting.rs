//! Lifting tensor sections with vanishing local data to full operators with
//! vanishing local data in every order.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::global_operator_basis;
use crate::error::{Error, Result};
use crate::linalg::{CokernelPresentation, IntegerMatrix};
use crate::local_data::{local_data_operator_with, local_data_tensor, q_d_matrix, q_le_d_matrix, LocalDataVector, PointLift};
use crate::operators::{coeff_a, symbol, tensor_to_operator, Chart, CoefficientTable, OperatorSection, Term, TensorSection};

/// Precomputed data for lifting degree-d sections at a fixed `(p, m, d)`.
pub struct LiftSolver {
    p: u64,
    m: u32,
    d: u32,
    lifts: PointLift,
    table: CoefficientTable,
    corrections: Vec<OperatorSection>,
    system: CokernelPresentation,
    kernel: Vec<Vec<BigInt>>,
}

impl LiftSolver {
    pub fn new(p: u64, d: u32, m: u32) -> Result<Self> {
        let (top, top_moduli) = q_d_matrix(p, d, m)?;
        let kernel = CokernelPresentation::new(&top, &top_moduli, p)?.kernel_basis();
        let lifts = PointLift::canonical(p);
        let corrections = global_operator_basis(p, m, d - 1);
        let (matrix, moduli) = q_le_d_matrix(&corrections, p, m, d, &lifts)?;
        Ok(LiftSolver {
            p,
            m,
            d,
            table: CoefficientTable::new(d as u64, p, m)?,
            system: CokernelPresentation::new(&matrix, &moduli, p)?,
            lifts,
            corrections,
            kernel,
        })
    }

    /// Basis of the degree-d sections with vanishing local data.
    pub fn kernel_basis(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    /// A random integer combination of the kernel basis with coefficients in
    /// `[-p², p²]`.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> TensorSection {
        let bound = (self.p * self.p) as i64;
        let mut coords = vec![BigInt::zero(); TensorSection::rank(self.d)];
        for v in &self.kernel {
            let c = BigInt::from(rng.gen_range(-bound..=bound));
            for (x, y) in coords.iter_mut().zip(v) {
                *x += &c * y;
            }
        }
        TensorSection::from_coordinates(self.p, self.m, self.d, &coords).expect("kernel vectors have rank 2d+1")
    }

    /// `count` samples from a ChaCha stream seeded with `seed`.
    pub fn samples(&self, seed: u64, count: usize) -> Vec<TensorSection> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }

    fn ensure_kernel(&self, delta: &TensorSection) -> Result<()> {
        if (delta.p, delta.m, delta.d) != (self.p, self.m, self.d) {
            return Err(Error::OutOfRange {
                what: "section",
                detail: format!("expected (p, m, d) = ({}, {}, {})", self.p, self.m, self.d),
            });
        }
        let count = local_data_tensor(delta, &self.lifts).nonzero_coordinates().len();
        if count > 0 {
            return Err(Error::NonvanishingLocalData { count });
        }
        Ok(())
    }

    pub fn local_data(&self, op: &OperatorSection) -> Result<LocalDataVector> {
        local_data_operator_with(op, &self.lifts, &self.table)
    }

    /// Checks symbol and vanishing of all local data.
    pub fn check(&self, delta: &TensorSection, lift: &OperatorSection) -> Result<()> {
        if symbol(lift)? != *delta {
            return Err(Error::NoLift("symbol of the lift differs from the input".into()));
        }
        let count = self.local_data(lift)?.nonzero_coordinates().len();
        if count > 0 {
            return Err(Error::NoLift(format!("lift has {count} nonvanishing local coordinate(s)")));
        }
        Ok(())
    }

    /// Solves for a correction of order `< d` cancelling all local data of
    /// `δ` read as an operator.
    pub fn lift_by_solve(&self, delta: &TensorSection) -> Result<OperatorSection> {
        self.ensure_kernel(delta)?;
        let mut lift = tensor_to_operator(delta);
        let target: Vec<BigInt> = self.local_data(&lift)?.residues().iter().map(|x| -x).collect();
        let coeffs = self
            .system
            .solve(&target)?
            .ok_or_else(|| Error::NoLift("no correction of lower order cancels the local data".into()))?;
        for (c, op) in coeffs.iter().zip(&self.corrections) {
            if c.is_zero() {
                continue;
            }
            for (t, x) in op.terms() {
                lift.add_term(*t, c * x)?;
            }
        }
        self.check(delta, &lift)?;
        Ok(lift)
    }

    /// The explicit correction schedule: for `j = 1..d`, add
    /// `c_j Σ_{j<s<d} A_s y^{s-j} ∂_y^{d-j}`. Level 0 only.
    ///
    /// `mu[e]` is the coefficient of `x^{d+e-s}∂_x^e` (per unit `A_s`) left
    /// over in the x-chart after the steps so far.
    pub fn lift_by_schedule(&self, delta: &TensorSection) -> Result<OperatorSection> {
        if self.m != 0 {
            return Err(Error::OutOfRange { what: "level", detail: "the schedule is implemented at level 0".into() });
        }
        self.ensure_kernel(delta)?;
        let d = self.d as u64;
        let sign = |k: u64| if k.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        let mut mu: Vec<BigInt> = (0..d).map(|e| if e == 0 { BigInt::zero() } else { sign(d) * coeff_a(d, e).expect("e <= d") }).collect();
        let mut lift = tensor_to_operator(delta);
        for j in 1..d {
            let k = d - j;
            let c = -sign(k) * &mu[k as usize];
            for s in (j + 1)..d {
                let a = &delta.a[s as usize];
                if !a.is_zero() {
                    lift.add_term(Term::new(Chart::Y, (s - j) as u32, k as u32), &c * a)?;
                }
            }
            for e in 1..k {
                let delta_mu = sign(k) * &c * coeff_a(k, e).expect("e <= k");
                mu[e as usize] += delta_mu;
            }
            let data = self.local_data(&lift)?;
            if !data.slice(k as u32, k as u32).is_zero() {
                return Err(Error::ScheduleFailure { step: j as u32, order: k as u32 });
            }
        }
        self.check(delta, &lift).map_err(|_| Error::ScheduleFailure { step: self.d, order: 0 })?;
        Ok(lift)
    }
}

/// A deterministic sample from the kernel of the degree-d local data map.
pub fn sample_kernel_section(p: u64, d: u32, seed: u64) -> Result<TensorSection> {
    Ok(LiftSolver::new(p, d, 0)?.samples(seed, 1).remove(0))
}

pub fn lift_by_solve(delta: &TensorSection) -> Result<OperatorSection> {
    LiftSolver::new(delta.p, delta.d, delta.m)?.lift_by_solve(delta)
}

pub fn lift_by_schedule(delta: &TensorSection) -> Result<OperatorSection> {
    LiftSolver::new(delta.p, delta.d, delta.m)?.lift_by_schedule(delta)
}

/// Matrix whose columns are the kernel basis of the degree-d map.
pub fn kernel_matrix(solver: &LiftSolver) -> IntegerMatrix {
    IntegerMatrix::from_columns(TensorSection::rank(solver.d), solver.kernel_basis()).expect("uniform length")
}
