//! Exact integer linear algebra: Smith normal form, cokernels with
//! prime-power moduli, kernel lattices and element orders.

mod cokernel;
mod group;
mod matrix;
mod snf;

pub use cokernel::{
    cokernel_invariants, dominates_all_but_largest, element_order_in_cokernel, kernel_lattice_basis,
    quotient_by_cyclic, CokernelPresentation,
};
pub use group::{AbelianPGroup, ModuliVector};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, smith_with, SmithForm, Transforms};
