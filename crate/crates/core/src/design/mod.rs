//! Reduced-order design equations for the first gap.
//!
//! Each equation is a constant plus a few fitted Sobol' functions of the
//! transformed coordinates `log10(E2/E1)`, `log10(rho2/rho1)`, `log10(h2/h1)`
//! and `nu1`. Values are cyclic dimensionless frequencies `omega_hat / 2 pi`;
//! [`to_hertz`] converts them for a dimensional cell. The coefficients live in
//! `data/design_equations.json`, embedded at build time.

mod accuracy;
mod equations;
mod surrogate;

pub use accuracy::{
    scaled_l2_error, scaled_l2_from_values, truncation_curve, truncation_curve_with, DeltaReport,
    DesignModel, TruncationCurve,
};
pub use equations::{
    design_table, eval_design_equation, scan_denominators, to_hertz, Coordinate, DenominatorRoot,
    DesignEquation, DesignPrediction, DesignTable, FittedTerm, Monomial, TermForm,
};
pub use surrogate::{fit_polynomial_surrogate, total_degree_basis, SurrogateFit};
