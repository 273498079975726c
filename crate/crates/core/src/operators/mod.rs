//! Two-chart calculus for sections of `T^{⊗d}` and differential operators
//! on P^1, at level 0 and at divided-power level m.

pub mod coeffs;
mod laurent;
mod sections;

pub use coeffs::{coeff_a, coeff_a_level, involution_sum, q_level, CoefficientTable};
pub use laurent::{
    in_chart, is_global_section, symbol, tensor_to_operator, transform_laurent, transform_term, LaurentOperator,
};
pub(crate) use laurent::in_chart_with;
pub use sections::{Chart, OperatorSection, Term, TensorSection};
