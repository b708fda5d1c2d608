//! Grid estimates of first- and second-order Sobol' functions.
//!
//! On each grid node the conditional mean of the model is taken over one LHS
//! design of the remaining coordinates (the same design for every node), and
//! the lower-order terms are removed using means over the same evaluations.

use serde::{Deserialize, Serialize};

use super::Model;
use crate::error::{Error, Result};
use crate::exec::{ordered_mean, ordered_sum, Execution};
use crate::sampling::{auxiliary_rng, lhs_matrix};

pub const DEFAULT_GRID_POINTS: usize = 64;
pub const DEFAULT_INNER_SAMPLES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FunctionOptions {
    pub grid_points: usize,
    pub inner_samples: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for FunctionOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            inner_samples: DEFAULT_INNER_SAMPLES,
            seed: 0,
            execution: Execution::default(),
        }
    }
}

impl FunctionOptions {
    pub fn new(grid_points: usize, inner_samples: usize, seed: u64) -> Self {
        Self {
            grid_points,
            inner_samples,
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid_points < 2 || self.inner_samples < 2 {
            return Err(Error::InvalidArgument(format!(
                "need grid_points >= 2 and inner_samples >= 2, got {} and {}",
                self.grid_points, self.inner_samples
            )));
        }
        Ok(())
    }
}

/// Estimated `F_i` on a 1D grid or `F_ij` on a 2D tensor grid.
///
/// For two axes `values` is row-major with the first axis slowest:
/// `values[a * grid[1].len() + b]` belongs to `(grid[0][a], grid[1][b])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolFunctionEstimate {
    pub axes: Vec<usize>,
    pub grid: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    pub inner_samples: usize,
    pub seed: u64,
    /// Mean of the model over the same evaluations.
    pub f0: f64,
}

impl SobolFunctionEstimate {
    pub fn value_2d(&self, a: usize, b: usize) -> f64 {
        self.values[a * self.grid[1].len() + b]
    }

    /// Grid nodes paired with their values, in storage order.
    pub fn nodes(&self) -> Vec<(Vec<f64>, f64)> {
        match self.grid.as_slice() {
            [g] => g.iter().zip(&self.values).map(|(&x, &v)| (vec![x], v)).collect(),
            [g0, g1] => g0
                .iter()
                .flat_map(|&x| g1.iter().map(move |&y| vec![x, y]))
                .zip(&self.values)
                .map(|(p, &v)| (p, v))
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Cell-centred grid `(k + 1/2) / n`.
fn midpoint_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| (k as f64 + 0.5) / n as f64).collect()
}

/// Conditional means of `model` with `axes` pinned to every node of the grid.
fn conditional_means<M: Model + ?Sized>(
    model: &M,
    axes: &[usize],
    grid: &[f64],
    opts: &FunctionOptions,
) -> Result<Vec<f64>> {
    let n = model.n_dims();
    for &a in axes {
        if a >= n {
            return Err(Error::InvalidArgument(format!(
                "dimension index {a} out of range for {n} dimensions"
            )));
        }
    }
    let free: Vec<usize> = (0..n).filter(|k| !axes.contains(k)).collect();
    let inner = lhs_matrix(free.len(), opts.inner_samples, &mut auxiliary_rng(opts.seed, 0));
    let g = grid.len();
    let n_nodes = g.pow(axes.len() as u32);
    let n_inner = opts.inner_samples;

    let evals = opts.execution.map(n_nodes * n_inner, |flat| {
        let (node, s) = (flat / n_inner, flat % n_inner);
        let mut point = vec![0.0; n];
        let mut rest = node;
        for &a in axes.iter().rev() {
            point[a] = grid[rest % g];
            rest /= g;
        }
        for (c, &k) in free.iter().enumerate() {
            point[k] = inner.get(s, c);
        }
        model.eval(&point).map_err(|e| Error::Model {
            index: flat,
            source: Box::new(e),
        })
    })?;
    Ok(evals.chunks_exact(n_inner).map(ordered_mean).collect())
}

/// Estimates the first-order Sobol' function `F_i` on a regular grid.
pub fn estimate_sobol_function_1d<M: Model + ?Sized>(
    model: &M,
    i: usize,
    opts: &FunctionOptions,
) -> Result<SobolFunctionEstimate> {
    opts.validate()?;
    let grid = midpoint_grid(opts.grid_points);
    let means = conditional_means(model, &[i], &grid, opts)?;
    let f0 = ordered_mean(&means);
    Ok(SobolFunctionEstimate {
        axes: vec![i],
        values: means.iter().map(|m| m - f0).collect(),
        grid: vec![grid],
        inner_samples: opts.inner_samples,
        seed: opts.seed,
        f0,
    })
}

/// Estimates the second-order Sobol' function `F_ij` on a tensor grid.
pub fn estimate_sobol_function_2d<M: Model + ?Sized>(
    model: &M,
    i: usize,
    j: usize,
    opts: &FunctionOptions,
) -> Result<SobolFunctionEstimate> {
    opts.validate()?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "second-order function needs two distinct axes, got ({i}, {j})"
        )));
    }
    let grid = midpoint_grid(opts.grid_points);
    let g = grid.len();
    let means = conditional_means(model, &[i, j], &grid, opts)?;

    let f0 = ordered_mean(&means);
    let row: Vec<f64> = means.chunks_exact(g).map(|r| ordered_mean(r) - f0).collect();
    let col: Vec<f64> = (0..g)
        .map(|b| ordered_sum((0..g).map(|a| means[a * g + b])) / g as f64 - f0)
        .collect();
    let values = (0..g * g)
        .map(|k| means[k] - row[k / g] - col[k % g] - f0)
        .collect();

    Ok(SobolFunctionEstimate {
        axes: vec![i, j],
        grid: vec![grid.clone(), grid],
        values,
        inner_samples: opts.inner_samples,
        seed: opts.seed,
        f0,
    })
}
