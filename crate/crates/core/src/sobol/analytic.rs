//! Three-variable polynomial test model with a closed-form Sobol' decomposition.
//!
//! `F(x1, x2, x3) = x1^2 + x2^4 + x1 x2 + x2 x3^4` with each `x_k = 8 y_k - 4`
//! uniform on `[-4, 4]`.

use serde::Serialize;

use super::Model;
use crate::error::{Error, Result};

/// `E[x^4]` for `x` uniform on `[-4, 4]`.
const FOURTH_MOMENT: f64 = 51.2;
/// `E[x^2]` for `x` uniform on `[-4, 4]`.
const SECOND_MOMENT: f64 = 16.0 / 3.0;

/// Unit-cube coordinate to model coordinate.
pub fn to_x(y: f64) -> f64 {
    8.0 * y - 4.0
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PolyModel;

impl PolyModel {
    /// Evaluates on the native `[-4, 4]^3` coordinates.
    pub fn eval_x(x: [f64; 3]) -> f64 {
        let [x1, x2, x3] = x;
        x1 * x1 + x2.powi(4) + x1 * x2 + x2 * x3.powi(4)
    }
}

impl Model for PolyModel {
    fn n_dims(&self) -> usize {
        3
    }

    fn eval(&self, y: &[f64]) -> Result<f64> {
        match y {
            [a, b, c] => Ok(Self::eval_x([to_x(*a), to_x(*b), to_x(*c)])),
            _ => Err(Error::DimensionMismatch {
                expected: 3,
                actual: y.len(),
            }),
        }
    }

    fn id(&self) -> String {
        "poly".to_string()
    }
}

pub fn analytic_poly_model() -> PolyModel {
    PolyModel
}

/// Members of the closed-form decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolyTerm {
    F1,
    F2,
    F3,
    F12,
    F13,
    F23,
    F123,
}

impl PolyTerm {
    pub const ALL: [PolyTerm; 7] = [
        PolyTerm::F1,
        PolyTerm::F2,
        PolyTerm::F3,
        PolyTerm::F12,
        PolyTerm::F13,
        PolyTerm::F23,
        PolyTerm::F123,
    ];

    /// Zero-based axes the term depends on.
    pub fn axes(self) -> &'static [usize] {
        match self {
            PolyTerm::F1 => &[0],
            PolyTerm::F2 => &[1],
            PolyTerm::F3 => &[2],
            PolyTerm::F12 => &[0, 1],
            PolyTerm::F13 => &[0, 2],
            PolyTerm::F23 => &[1, 2],
            PolyTerm::F123 => &[0, 1, 2],
        }
    }

    /// Evaluates the term at model coordinates `x` in `[-4, 4]^3`; coordinates
    /// the term does not depend on are ignored.
    pub fn eval(self, x: [f64; 3]) -> f64 {
        let [x1, x2, x3] = x;
        match self {
            PolyTerm::F1 => x1 * x1 - SECOND_MOMENT,
            PolyTerm::F2 => x2.powi(4) + FOURTH_MOMENT * x2 - FOURTH_MOMENT,
            PolyTerm::F12 => x1 * x2,
            PolyTerm::F23 => x2 * x3.powi(4) - FOURTH_MOMENT * x2,
            PolyTerm::F3 | PolyTerm::F13 | PolyTerm::F123 => 0.0,
        }
    }

    /// Published index value.
    pub fn published_index(self) -> f64 {
        match self {
            PolyTerm::F1 => 0.0005,
            PolyTerm::F2 => 0.4281,
            PolyTerm::F12 => 0.0007,
            PolyTerm::F23 => 0.5708,
            PolyTerm::F3 | PolyTerm::F13 | PolyTerm::F123 => 0.0,
        }
    }
}

/// Closed-form reference values for [`PolyModel`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PolyReference {
    /// Published (rounded) mean.
    pub f0: f64,
    /// Exact mean, `16/3 + 51.2`.
    pub f0_exact: f64,
}

impl PolyReference {
    pub fn index(&self, term: PolyTerm) -> f64 {
        term.published_index()
    }

    pub fn indices(&self) -> Vec<(PolyTerm, f64)> {
        PolyTerm::ALL.iter().map(|&t| (t, t.published_index())).collect()
    }

    pub fn function(&self, term: PolyTerm, x: [f64; 3]) -> f64 {
        term.eval(x)
    }
}

pub fn analytic_poly_reference() -> PolyReference {
    PolyReference {
        f0: 56.533,
        f0_exact: SECOND_MOMENT + FOURTH_MOMENT,
    }
}
