use serde::{Deserialize, Serialize};

use super::equations::DesignEquation;
use crate::error::{Error, Result};
use crate::exec::{ordered_mean, ordered_sum, Execution};
use crate::phononic::{FrequencyUnit, ObjectiveKind, PhononicObjective};
use crate::sampling::{ParameterSpace, SampleSet};
use crate::sobol::Model;

/// A design equation, optionally truncated, as a model on the unit cube of
/// a parameter space.
#[derive(Debug, Clone)]
pub struct DesignModel {
    pub equation: &'static DesignEquation,
    pub space: ParameterSpace,
    pub n_terms: usize,
}

impl DesignModel {
    /// Full published equation over the canonical space.
    pub fn new(kind: ObjectiveKind) -> Self {
        let equation = DesignEquation::published(kind);
        Self::truncated(kind, equation.terms.len())
    }

    pub fn truncated(kind: ObjectiveKind, n_terms: usize) -> Self {
        Self {
            equation: DesignEquation::published(kind),
            space: ParameterSpace::phononic(),
            n_terms,
        }
    }
}

impl Model for DesignModel {
    fn n_dims(&self) -> usize {
        5
    }

    fn eval(&self, y: &[f64]) -> Result<f64> {
        let params = self.space.map_to_space(y)?;
        Ok(self.equation.eval_truncated(&params, self.n_terms))
    }

    fn id(&self) -> String {
        format!("design-{}", self.equation.kind)
    }
}

fn eval_rows<M: Model + ?Sized>(model: &M, samples: &SampleSet, exec: Execution) -> Result<Vec<f64>> {
    if model.n_dims() != samples.n_dims {
        return Err(Error::DimensionMismatch {
            expected: samples.n_dims,
            actual: model.n_dims(),
        });
    }
    exec.map(samples.n_samples, |m| {
        model.eval(samples.original.row(m)).map_err(|e| Error::Model {
            index: m,
            source: Box::new(e),
        })
    })
}

/// `delta` from paired exact and predicted values. The variance is taken
/// about the sample mean, which is the same estimate as `mean(F^2) - f0^2`
/// without the cancellation.
pub fn scaled_l2_from_values(exact: &[f64], predicted: &[f64]) -> Result<f64> {
    if exact.len() != predicted.len() {
        return Err(Error::DimensionMismatch {
            expected: exact.len(),
            actual: predicted.len(),
        });
    }
    if exact.is_empty() {
        return Err(Error::InvalidArgument("no samples".into()));
    }
    let n = exact.len() as f64;
    let f0 = ordered_mean(exact);
    let variance = ordered_sum(exact.iter().map(|f| (f - f0) * (f - f0))) / n;
    if variance.is_nan() || variance <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mse = ordered_sum(exact.iter().zip(predicted).map(|(e, p)| (e - p) * (e - p))) / n;
    Ok(mse / variance)
}

/// Scaled L2 error of `surrogate` against `exact` over the original design.
pub fn scaled_l2_error<E, S>(exact: &E, surrogate: &S, samples: &SampleSet) -> Result<f64>
where
    E: Model + ?Sized,
    S: Model + ?Sized,
{
    let exec = Execution::default();
    let e = eval_rows(exact, samples, exec)?;
    let s = eval_rows(surrogate, samples, exec)?;
    scaled_l2_from_values(&e, &s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationCurve {
    pub kind: ObjectiveKind,
    pub n_samples: usize,
    pub seed: u64,
    /// `delta_by_k[k]` keeps `f0` and the first `k` terms.
    pub delta_by_k: Vec<f64>,
}

impl TruncationCurve {
    /// Error of the full equation.
    pub fn delta(&self) -> f64 {
        *self.delta_by_k.last().expect("curve has at least k = 0")
    }

    pub fn report(&self) -> DeltaReport {
        DeltaReport {
            kind: self.kind,
            n: self.n_samples,
            seed: self.seed,
            delta: self.delta(),
            delta_by_k: self.delta_by_k.clone(),
        }
    }
}

/// Serialized form of a design-equation error run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub struct DeltaReport {
    pub kind: ObjectiveKind,
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub delta: f64,
    pub delta_by_k: Vec<f64>,
}

pub fn truncation_curve(kind: ObjectiveKind, samples: &SampleSet) -> Result<TruncationCurve> {
    truncation_curve_with(kind, samples, Execution::default())
}

/// Adds the published terms one at a time and records `delta` after each,
/// against the solver in the same cyclic units as the equations. The solver
/// runs once per sample.
pub fn truncation_curve_with(kind: ObjectiveKind, samples: &SampleSet, exec: Execution) -> Result<TruncationCurve> {
    let exact_model = PhononicObjective::new(kind, FrequencyUnit::Cyclic);
    let exact = eval_rows(&exact_model, samples, exec)?;
    let eq = DesignEquation::published(kind);
    let space = ParameterSpace::phononic();
    let params: Vec<Vec<f64>> = samples
        .original
        .rows()
        .map(|row| space.map_to_space(row))
        .collect::<Result<_>>()?;
    let delta_by_k = (0..=eq.terms.len())
        .map(|k| {
            let predicted: Vec<f64> = params.iter().map(|p| eq.eval_truncated(p, k)).collect();
            scaled_l2_from_values(&exact, &predicted)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(TruncationCurve {
        kind,
        n_samples: samples.n_samples,
        seed: samples.seed,
        delta_by_k,
    })
}
