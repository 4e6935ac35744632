//! Hypercontractive coefficients, exact inequality checks, extremal
//! families and the width-conjecture explorer.

mod checks;
mod coefficients;
pub(crate) mod families;
mod scan;

pub use checks::{
    check_classical_42, check_corollary, check_corollary_with, check_theorem_2r,
    check_theorem_2r_refined, check_theorem_2r_refined_with, check_theorem_2r_with,
    check_theorem_42, check_theorem_42_with, BoundKind, BoundReport, BoundValue,
    FLOAT_TIGHT_TOLERANCE,
};
pub use coefficients::{
    bell, bell_upper, coeff_classical, coeff_width_2r, coeff_width_2r_refined, coeff_width_42,
    coeff_width_qp, factorial, good_vector_bound, Width2rCoefficient, Width42Coefficient,
    WidthQpCoefficient,
};
pub use families::{
    example_affine, example_full, example_linear, random_function, sample_function,
    CoefficientRange, Family,
};
pub use scan::{conjecture_scan, ConjectureScanRow};
