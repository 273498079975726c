//! First cohomology of the pushed-forward tensor and operator sheaves.

mod checks;
mod descent;
mod report;

pub use checks::{
    exponent_lower_bound, global_operator_basis, graded_piece_dim, lattice_order_check, summand_count_check,
    verify_splitting, verify_splitting_at_level, LatticeCheck, SplittingCheck, SummandCheck,
};
pub use descent::{
    level_descent_diagnostic, lower_bound_rational_part, vp_factorial_quotient, DescentRow, FactorialQuotient,
    LevelDiagnostic, Schedule, Trend,
};
pub use report::{h1_filtered, h1_tensor, DegreeEntry, H1Report};
