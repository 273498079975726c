use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::exponent_lower_bound;
use crate::error::{Error, Result};
use crate::linalg::{cokernel_invariants, AbelianPGroup};
use crate::local_data::q_d_matrix;

/// `H¹` of the pushed-forward `T^{⊗d}`: the cokernel of the degree-d local
/// data map on global tensor sections.
pub fn h1_tensor(p: u64, d: u32, m: u32) -> Result<AbelianPGroup> {
    let (matrix, moduli) = q_d_matrix(p, d, m)?;
    cokernel_invariants(&matrix, &moduli, p)
}

/// One degree of an [`H1Report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeEntry {
    pub d: u32,
    pub exponents: Vec<u32>,
    pub exponent_bound: u32,
    pub bound_satisfied: bool,
    pub bound_attained: bool,
}

impl DegreeEntry {
    pub fn group(&self, p: u64) -> Result<AbelianPGroup> {
        AbelianPGroup::new(p, self.exponents.clone())
    }
}

/// `H¹` of the order-≤d operator sheaf, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Report {
    pub p: u64,
    pub d: u32,
    pub m: u32,
    pub degrees: Vec<DegreeEntry>,
    pub total: Vec<u32>,
}

impl H1Report {
    pub fn from_groups(p: u64, m: u32, groups: Vec<AbelianPGroup>) -> Self {
        let mut total = AbelianPGroup::trivial(p);
        let degrees = groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                total = total.direct_sum(g);
                let d = i as u32 + 1;
                let e = exponent_lower_bound(p, d);
                DegreeEntry {
                    d,
                    exponents: g.exponents().to_vec(),
                    exponent_bound: e,
                    bound_satisfied: g.max_exponent() >= e,
                    bound_attained: g.max_exponent() == e,
                }
            })
            .collect();
        H1Report { p, d: groups.len() as u32, m, degrees, total: total.exponents().to_vec() }
    }

    pub fn total_group(&self) -> AbelianPGroup {
        AbelianPGroup::new(self.p, self.total.clone()).expect("report holds valid exponents")
    }

    pub fn all_bounds_satisfied(&self) -> bool {
        self.degrees.iter().all(|e| e.bound_satisfied)
    }

    /// Checks the total against the per-degree groups.
    pub fn validate(&self) -> Result<()> {
        let mut total = AbelianPGroup::trivial(self.p);
        for e in &self.degrees {
            total = total.direct_sum(&e.group(self.p)?);
        }
        if total.exponents() != self.total.as_slice() || self.degrees.len() != self.d as usize {
            return Err(Error::MalformedSection("report total is not the sum of its degrees".into()));
        }
        Ok(())
    }

    pub fn to_text(&self, per_degree: bool) -> String {
        let mut out = String::new();
        if per_degree {
            for e in &self.degrees {
                let g = e.group(self.p).expect("valid exponents");
                let _ = writeln!(out, "d={}: {}", e.d, g.to_table_text());
            }
        }
        out.push_str(&self.total_group().to_table_text());
        out.push('\n');
        out
    }

    /// Rows `p,d,exponent,multiplicity`; with `per_degree`, one block per d'
    /// keyed by d', otherwise the total keyed by d.
    pub fn to_csv(&self, per_degree: bool) -> String {
        let mut out = String::from("p,d,exponent,multiplicity\n");
        let blocks: Vec<(u32, AbelianPGroup)> = if per_degree {
            self.degrees.iter().map(|e| (e.d, e.group(self.p).expect("valid exponents"))).collect()
        } else {
            vec![(self.d, self.total_group())]
        };
        for (d, g) in blocks {
            for (n, c) in g.multiplicities() {
                let _ = writeln!(out, "{},{},{},{}", self.p, d, n, c);
            }
        }
        out
    }
}

/// Per-degree groups for `d' = 1..=d`, computed in parallel and merged in
/// ascending order.
pub fn h1_filtered(p: u64, d: u32, m: u32) -> Result<H1Report> {
    crate::arith::ensure_prime(p)?;
    if d == 0 {
        return Err(Error::OutOfRange { what: "degree", detail: "d must be >= 1".into() });
    }
    let groups = (1..=d).into_par_iter().map(|k| h1_tensor(p, k, m)).collect::<Result<Vec<_>>>()?;
    Ok(H1Report::from_groups(p, m, groups))
}
