//! Smith normal form over the integers.
//!
//! Pivots are chosen with minimal absolute value among the nonzero entries of
//! the active submatrix. The input matrices here are narrow but tall and their
//! entries are prime powers, so limiting coefficient growth matters more than
//! the asymptotic operation count.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

/// Which transforms to accumulate alongside the diagonal.
#[derive(Clone, Copy, Debug, Default)]
pub struct Transforms {
    pub left: bool,
    pub left_inverse: bool,
    pub right: bool,
}

impl Transforms {
    pub const ALL: Transforms = Transforms { left: true, left_inverse: true, right: true };
    pub const NONE: Transforms = Transforms { left: false, left_inverse: false, right: false };
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ... `, all nonnegative.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: IntegerMatrix,
    pub left: Option<IntegerMatrix>,
    pub left_inverse: Option<IntegerMatrix>,
    pub right: Option<IntegerMatrix>,
    rank: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The first `min(rows, cols)` diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Computes `(D, U, V)` with `U * M * V = D`.
pub fn smith_normal_form(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith_with(m, Transforms { left: true, left_inverse: false, right: true });
    (s.diagonal, s.left.unwrap(), s.right.unwrap())
}

pub fn smith_with(m: &IntegerMatrix, want: Transforms) -> SmithForm {
    let mut w = Work::new(m, want);
    w.run();
    w.finish()
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
    rows: usize,
    cols: usize,
    rank: usize,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as u8)).collect())
        .collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, r: usize, c: usize) -> IntegerMatrix {
    IntegerMatrix::from_entries(r, c, rows.into_iter().flatten().collect()).expect("shape")
}

impl Work {
    fn new(m: &IntegerMatrix, want: Transforms) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        Work {
            a: m.to_rows(),
            u: want.left.then(|| identity_rows(rows)),
            u_inv: want.left_inverse.then(|| identity_rows(rows)),
            v: want.right.then(|| identity_rows(cols)),
            rows,
            cols,
            rank: 0,
        }
    }

    // row_i += q * row_j
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt, from_col: usize) {
        let (ri, rj) = two_mut(&mut self.a, i, j);
        for c in from_col..ri.len() {
            if !rj[c].is_zero() {
                ri[c] += q * &rj[c];
            }
        }
        if let Some(u) = self.u.as_mut() {
            let (ui, uj) = two_mut(u, i, j);
            for (x, y) in ui.iter_mut().zip(uj.iter()) {
                if !y.is_zero() {
                    *x += q * y;
                }
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // right-multiply by the inverse elementary matrix: col_j -= q * col_i
            for row in ui.iter_mut() {
                if !row[i].is_zero() {
                    let t = q * &row[i];
                    row[j] -= t;
                }
            }
        }
    }

    // col_i += q * col_j
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt, from_row: usize) {
        for row in self.a[from_row..].iter_mut() {
            if !row[j].is_zero() {
                let t = q * &row[j];
                row[i] += t;
            }
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let t = q * &row[j];
                    row[i] += t;
                }
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = self.u.as_mut() {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(ui) = self.u_inv.as_mut() {
            for row in ui.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bi, bj)) => x.magnitude() < self.a[bi][bj].magnitude(),
                };
                if better {
                    best = Some((i, j));
                    if x.magnitude() == &num_bigint::BigUint::from(1u8) {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        for t in 0..n {
            loop {
                let Some((pi, pj)) = self.min_pivot(t) else {
                    self.rank = t;
                    return;
                };
                self.swap_rows(t, pi);
                self.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[i][t] / &self.a[t][t]);
                    self.add_row(i, t, &q, t);
                    if !self.a[i][t].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = -(&self.a[t][j] / &self.a[t][t]);
                    self.add_col(j, t, &q, t);
                    if !self.a[t][j].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                let pivot = self.a[t][t].clone();
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::from(1), t),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
        }
        self.rank = (0..n).take_while(|&i| !self.a[i][i].is_zero()).count();
    }

    fn finish(self) -> SmithForm {
        let (r, c) = (self.rows, self.cols);
        SmithForm {
            diagonal: to_matrix(self.a, r, c),
            left: self.u.map(|u| to_matrix(u, r, r)),
            left_inverse: self.u_inv.map(|u| to_matrix(u, r, r)),
            right: self.v.map(|v| to_matrix(v, c, c)),
            rank: self.rank,
        }
    }
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (lo, hi) = v.split_at_mut(j);
        (&mut lo[i], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(i);
        (&mut hi[0], &lo[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_with(m, Transforms::ALL);
        let u = s.left.as_ref().unwrap();
        let v = s.right.as_ref().unwrap();
        let ui = s.left_inverse.as_ref().unwrap();
        assert_eq!(u.mul(m).unwrap().mul(v).unwrap(), s.diagonal);
        assert_eq!(u.mul(ui).unwrap(), IntegerMatrix::identity(m.rows()));
        assert!(s.diagonal.is_diagonal());
        assert!(u.is_unimodular() && v.is_unimodular());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_is_fixed() {
        let (d, u, v) = smith_normal_form(&IntegerMatrix::identity(2));
        assert_eq!(d, IntegerMatrix::identity(2));
        assert_eq!(u, IntegerMatrix::identity(2));
        assert_eq!(v, IntegerMatrix::identity(2));
    }

    #[test]
    fn two_by_two_example() {
        let m = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = check(&m);
        assert_eq!(s.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_matrix() {
        let (d, _, _) = smith_normal_form(&IntegerMatrix::zeros(1, 1));
        assert_eq!(d, IntegerMatrix::zeros(1, 1));
        let s = check(&IntegerMatrix::zeros(3, 2));
        assert_eq!(s.rank(), 0);
    }

    #[test]
    fn rectangular_with_rank_deficiency() {
        let m = IntegerMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6], vec![0, 3, 9], vec![1, 5, 12]]);
        let s = check(&m);
        assert_eq!(s.rank(), 2);
        assert!(s.invariant_factors()[0].is_one());
    }
}
