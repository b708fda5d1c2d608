use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares polynomial coefficients, one per requested monomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurrogateFit {
    pub powers: Vec<Vec<u32>>,
    pub coefficients: Vec<f64>,
    /// Euclidean norm of `A c - y`.
    pub residual_norm: f64,
}

impl SurrogateFit {
    pub fn predict(&self, x: &[f64]) -> f64 {
        self.powers
            .iter()
            .zip(&self.coefficients)
            .map(|(p, c)| c * monomial(x, p))
            .sum()
    }
}

fn monomial(x: &[f64], powers: &[u32]) -> f64 {
    x.iter().zip(powers).map(|(v, &p)| v.powi(p as i32)).product()
}

/// All monomials in `n_vars` variables of total degree `<= degree`, lowest
/// degree first.
pub fn total_degree_basis(n_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=degree {
        let mut cur = vec![0u32; n_vars];
        push_with_total(&mut out, &mut cur, 0, d);
    }
    out
}

fn push_with_total(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, axis: usize, left: u32) {
    if axis + 1 == cur.len() {
        cur[axis] = left;
        out.push(cur.clone());
        return;
    }
    for p in (0..=left).rev() {
        cur[axis] = p;
        push_with_total(out, cur, axis + 1, left - p);
    }
}

/// Fits `y ~ sum_j c_j prod_k x_k^{p_jk}` by SVD least squares. Each row of
/// `inputs` is one sample; `powers[j]` lists the exponent of every input
/// column in monomial `j`.
pub fn fit_polynomial_surrogate(inputs: &[Vec<f64>], responses: &[f64], powers: &[Vec<u32>]) -> Result<SurrogateFit> {
    let n = inputs.len();
    let p = powers.len();
    if responses.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: responses.len(),
        });
    }
    if p == 0 || n <= p {
        return Err(Error::InvalidArgument(format!(
            "need more samples ({n}) than coefficients ({p}) and at least one coefficient"
        )));
    }
    let width = powers[0].len();
    if let Some(bad) = powers.iter().find(|q| q.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            actual: bad.len(),
        });
    }
    if let Some(bad) = inputs.iter().find(|r| r.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            actual: bad.len(),
        });
    }

    let a = DMatrix::from_fn(n, p, |i, j| monomial(&inputs[i], &powers[j]));
    let y = DVector::from_column_slice(responses);
    let svd = a.clone().svd(true, true);
    let s_max = svd.singular_values.max();
    let tol = s_max * f64::EPSILON * n.max(p) as f64;
    let rank = svd.rank(tol);
    if rank < p {
        return Err(Error::RankDeficient { rank, columns: p });
    }
    let c = svd
        .solve(&y, tol)
        .map_err(|e| Error::InvalidArgument(format!("least squares: {e}")))?;
    let residual_norm = (&a * &c - &y).norm();
    Ok(SurrogateFit {
        powers: powers.to_vec(),
        coefficients: c.iter().copied().collect(),
        residual_norm,
    })
}
