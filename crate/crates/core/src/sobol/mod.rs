//! Variance-based (Sobol') sensitivity analysis on the unit hypercube.
//!
//! Models are pure functions of a point in `[0, 1]^n`. Partial variances are
//! estimated with the freeze-and-resample scheme: for each row of the original
//! design the model is re-evaluated with some coordinates kept and the rest
//! taken from the complementary design. Raw estimates are kept even when they
//! come out negative; [`SobolResult::clamped`] gives a presentation copy.

mod analytic;
mod estimators;
mod functions;

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use analytic::{analytic_poly_model, analytic_poly_reference, PolyModel, PolyReference, PolyTerm};
pub use estimators::{
    estimate_f0, first_order_variance, second_order_variance, sobol_indices, sobol_indices_with,
    total_variance, Orders,
};
pub use functions::{
    estimate_sobol_function_1d, estimate_sobol_function_2d, FunctionOptions,
    SobolFunctionEstimate, DEFAULT_GRID_POINTS, DEFAULT_INNER_SAMPLES,
};

/// A deterministic scalar function of a point in `[0, 1]^n_dims`.
pub trait Model: Sync {
    fn n_dims(&self) -> usize;

    fn eval(&self, y: &[f64]) -> Result<f64>;

    /// Identifier written into reports.
    fn id(&self) -> String {
        "custom".to_string()
    }
}

/// Wraps a closure as a [`Model`].
pub struct FnModel<F> {
    id: String,
    n_dims: usize,
    f: F,
}

impl<F> FnModel<F>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    pub fn new(id: impl Into<String>, n_dims: usize, f: F) -> Self {
        Self {
            id: id.into(),
            n_dims,
            f,
        }
    }
}

impl<F> Model for FnModel<F>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    fn n_dims(&self) -> usize {
        self.n_dims
    }

    fn eval(&self, y: &[f64]) -> Result<f64> {
        (self.f)(y)
    }

    fn id(&self) -> String {
        self.id.clone()
    }
}

impl<M: Model + ?Sized> Model for &M {
    fn n_dims(&self) -> usize {
        (**self).n_dims()
    }

    fn eval(&self, y: &[f64]) -> Result<f64> {
        (**self).eval(y)
    }

    fn id(&self) -> String {
        (**self).id()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FirstOrderIndex {
    pub i: usize,
    pub variance: f64,
    pub index: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondOrderIndex {
    pub i: usize,
    pub j: usize,
    pub variance: f64,
    pub index: f64,
}

/// Mean, total variance and first/second-order partial variances with their
/// indices. Second-order entries are the strict upper triangle, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolResult {
    pub model: String,
    pub n_dims: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub f0: f64,
    pub total_variance: f64,
    pub first_order: Vec<FirstOrderIndex>,
    pub second_order: Vec<SecondOrderIndex>,
    /// `1 - sum(S_i) - sum(S_ij)`: higher-order interactions plus Monte Carlo noise.
    pub higher_order_residual: f64,
}

impl SobolResult {
    pub fn s(&self, i: usize) -> f64 {
        self.first_order[i].index
    }

    pub fn s2(&self, i: usize, j: usize) -> Option<f64> {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.second_order
            .iter()
            .find(|e| e.i == i && e.j == j)
            .map(|e| e.index)
    }

    /// Copy with negative variances and indices clamped to zero, for summary
    /// tables. The residual is recomputed from the clamped indices.
    pub fn clamped(&self) -> SobolResult {
        let mut out = self.clone();
        for e in &mut out.first_order {
            e.variance = e.variance.max(0.0);
            e.index = e.index.max(0.0);
        }
        for e in &mut out.second_order {
            e.variance = e.variance.max(0.0);
            e.index = e.index.max(0.0);
        }
        out.higher_order_residual = 1.0
            - out.first_order.iter().map(|e| e.index).sum::<f64>()
            - out.second_order.iter().map(|e| e.index).sum::<f64>();
        out
    }

    /// All indices, largest first, labelled by their axes.
    pub fn ranked(&self) -> Vec<(Vec<usize>, f64)> {
        let mut all: Vec<(Vec<usize>, f64)> = self
            .first_order
            .iter()
            .map(|e| (vec![e.i], e.index))
            .chain(self.second_order.iter().map(|e| (vec![e.i, e.j], e.index)))
            .collect();
        all.sort_by(|a, b| b.1.total_cmp(&a.1));
        all
    }
}
