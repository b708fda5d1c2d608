use super::{FirstOrderIndex, Model, SecondOrderIndex, SobolResult};
use crate::error::{Error, Result};
use crate::exec::{ordered_mean, ordered_sum, Execution};
use crate::sampling::SampleSet;

/// Which index orders [`sobol_indices`] estimates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orders {
    First,
    FirstAndSecond,
}

fn check_dims<M: Model + ?Sized>(model: &M, samples: &SampleSet) -> Result<()> {
    if model.n_dims() != samples.n_dims {
        return Err(Error::DimensionMismatch {
            expected: model.n_dims(),
            actual: samples.n_dims,
        });
    }
    Ok(())
}

fn check_axis(i: usize, n_dims: usize) -> Result<()> {
    if i >= n_dims {
        return Err(Error::InvalidArgument(format!(
            "dimension index {i} out of range for {n_dims} dimensions"
        )));
    }
    Ok(())
}

fn wrap(index: usize) -> impl FnOnce(Error) -> Error {
    move |e| Error::Model {
        index,
        source: Box::new(e),
    }
}

/// Point built from row `m` of the original design on the axes in `keep` and
/// from the complementary design everywhere else.
fn hybrid_point(samples: &SampleSet, m: usize, keep: &[usize], out: &mut Vec<f64>) {
    out.clear();
    out.extend((0..samples.n_dims).map(|k| {
        if keep.contains(&k) {
            samples.original.get(m, k)
        } else {
            samples.complementary.get(m, k)
        }
    }));
}

fn eval_original<M: Model + ?Sized>(model: &M, samples: &SampleSet, exec: Execution) -> Result<Vec<f64>> {
    exec.map(samples.n_samples, |m| {
        model.eval(samples.original.row(m)).map_err(wrap(m))
    })
}

fn eval_hybrid<M: Model + ?Sized>(
    model: &M,
    samples: &SampleSet,
    keep: &[usize],
    exec: Execution,
) -> Result<Vec<f64>> {
    exec.map(samples.n_samples, |m| {
        let mut point = Vec::with_capacity(samples.n_dims);
        hybrid_point(samples, m, keep, &mut point);
        model.eval(&point).map_err(wrap(m))
    })
}

fn mean_of_products(a: &[f64], b: &[f64]) -> f64 {
    ordered_sum(a.iter().zip(b).map(|(x, y)| x * y)) / a.len() as f64
}

fn variance_from(base: &[f64], f0: f64) -> f64 {
    let raw = mean_of_products(base, base) - f0 * f0;
    raw.max(0.0)
}

/// Monte Carlo mean of the model over the original design.
pub fn estimate_f0<M: Model + ?Sized>(model: &M, samples: &SampleSet) -> Result<f64> {
    check_dims(model, samples)?;
    let base = eval_original(model, samples, Execution::default())?;
    Ok(ordered_mean(&base))
}

/// Monte Carlo total variance, clamped at zero against cancellation.
pub fn total_variance<M: Model + ?Sized>(model: &M, samples: &SampleSet) -> Result<f64> {
    check_dims(model, samples)?;
    let base = eval_original(model, samples, Execution::default())?;
    Ok(variance_from(&base, ordered_mean(&base)))
}

/// Raw first-order partial variance `D_i` (may be negative).
pub fn first_order_variance<M: Model + ?Sized>(model: &M, samples: &SampleSet, i: usize) -> Result<f64> {
    check_dims(model, samples)?;
    check_axis(i, samples.n_dims)?;
    let exec = Execution::default();
    let base = eval_original(model, samples, exec)?;
    let f0 = ordered_mean(&base);
    let frozen = eval_hybrid(model, samples, &[i], exec)?;
    Ok(mean_of_products(&base, &frozen) - f0 * f0)
}

/// Raw second-order partial variance `D_ij` (may be negative).
pub fn second_order_variance<M: Model + ?Sized>(
    model: &M,
    samples: &SampleSet,
    i: usize,
    j: usize,
) -> Result<f64> {
    check_dims(model, samples)?;
    check_axis(i, samples.n_dims)?;
    check_axis(j, samples.n_dims)?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "second-order variance needs two distinct axes, got ({i}, {j})"
        )));
    }
    let exec = Execution::default();
    let base = eval_original(model, samples, exec)?;
    let f0 = ordered_mean(&base);
    let fi = eval_hybrid(model, samples, &[i], exec)?;
    let fj = eval_hybrid(model, samples, &[j], exec)?;
    let fij = eval_hybrid(model, samples, &[i, j], exec)?;
    let di = mean_of_products(&base, &fi) - f0 * f0;
    let dj = mean_of_products(&base, &fj) - f0 * f0;
    Ok(mean_of_products(&base, &fij) - di - dj - f0 * f0)
}

/// Estimates all first-order (and optionally second-order) indices using the
/// default execution backend.
pub fn sobol_indices<M: Model + ?Sized>(model: &M, samples: &SampleSet, orders: Orders) -> Result<SobolResult> {
    sobol_indices_with(model, samples, orders, Execution::default())
}

/// Same as [`sobol_indices`] with an explicit backend. All `N * (1 + n + n(n-1)/2)`
/// model calls go out as one batch; the result does not depend on `exec`.
pub fn sobol_indices_with<M: Model + ?Sized>(
    model: &M,
    samples: &SampleSet,
    orders: Orders,
    exec: Execution,
) -> Result<SobolResult> {
    check_dims(model, samples)?;
    let n = samples.n_dims;
    let n_rows = samples.n_samples;

    // Variant 0 is the plain original row; then one per axis, then one per pair.
    let mut variants: Vec<Vec<usize>> = vec![(0..n).collect()];
    variants.extend((0..n).map(|i| vec![i]));
    let pairs: Vec<(usize, usize)> = match orders {
        Orders::First => Vec::new(),
        Orders::FirstAndSecond => (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect(),
    };
    variants.extend(pairs.iter().map(|&(i, j)| vec![i, j]));

    let values = exec.map(variants.len() * n_rows, |flat| {
        let (v, m) = (flat / n_rows, flat % n_rows);
        let mut point = Vec::with_capacity(n);
        hybrid_point(samples, m, &variants[v], &mut point);
        model.eval(&point).map_err(wrap(m))
    })?;
    let column = |v: usize| &values[v * n_rows..(v + 1) * n_rows];

    let base = column(0);
    let f0 = ordered_mean(base);
    let total = variance_from(base, f0);
    if total <= 0.0 {
        return Err(Error::ZeroVariance);
    }

    let d_first: Vec<f64> = (0..n)
        .map(|i| mean_of_products(base, column(1 + i)) - f0 * f0)
        .collect();
    let first_order: Vec<FirstOrderIndex> = d_first
        .iter()
        .enumerate()
        .map(|(i, &variance)| FirstOrderIndex {
            i,
            variance,
            index: variance / total,
        })
        .collect();

    let second_order: Vec<SecondOrderIndex> = pairs
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let variance =
                mean_of_products(base, column(1 + n + p)) - d_first[i] - d_first[j] - f0 * f0;
            SecondOrderIndex {
                i,
                j,
                variance,
                index: variance / total,
            }
        })
        .collect();

    let higher_order_residual = 1.0
        - ordered_sum(first_order.iter().map(|e| e.index))
        - ordered_sum(second_order.iter().map(|e| e.index));

    Ok(SobolResult {
        model: model.id(),
        n_dims: n,
        n_samples: n_rows,
        seed: samples.seed,
        f0,
        total_variance: total,
        first_order,
        second_order,
        higher_order_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::lhs_sample;
    use crate::sobol::{analytic_poly_model, FnModel};

    fn linear() -> FnModel<impl Fn(&[f64]) -> Result<f64> + Sync> {
        FnModel::new("y1", 1, |y: &[f64]| Ok(y[0]))
    }

    #[test]
    fn constant_model() {
        let m = FnModel::new("c", 3, |_: &[f64]| Ok(2.5));
        let s = lhs_sample(3, 200, 1).unwrap();
        assert_eq!(estimate_f0(&m, &s).unwrap(), 2.5);
        assert_eq!(total_variance(&m, &s).unwrap(), 0.0);
        assert_eq!(sobol_indices(&m, &s, Orders::First), Err(Error::ZeroVariance));
    }

    #[test]
    fn identity_moments() {
        let s = lhs_sample(1, 2000, 3).unwrap();
        assert!((estimate_f0(&linear(), &s).unwrap() - 0.5).abs() < 0.02);
        assert!((total_variance(&linear(), &s).unwrap() - 1.0 / 12.0).abs() < 0.005);
    }

    #[test]
    fn single_variable_model_is_fully_first_order() {
        let m = FnModel::new("y1", 3, |y: &[f64]| Ok(y[0]));
        let s = lhs_sample(3, 2000, 11).unwrap();
        let d = total_variance(&m, &s).unwrap();
        let d1 = first_order_variance(&m, &s, 0).unwrap();
        assert!((d1 / d - 1.0).abs() < 0.05, "S1 = {}", d1 / d);
    }

    #[test]
    fn additive_model_has_no_interaction() {
        let m = FnModel::new("y1+y2", 2, |y: &[f64]| Ok(y[0] + y[1]));
        let s = lhs_sample(2, 2000, 5).unwrap();
        let d = total_variance(&m, &s).unwrap();
        let d12 = second_order_variance(&m, &s, 0, 1).unwrap();
        assert!((d12 / d).abs() < 0.05);
    }

    #[test]
    fn argument_errors() {
        let m = analytic_poly_model();
        let s = lhs_sample(3, 10, 1).unwrap();
        assert!(matches!(first_order_variance(&m, &s, 3), Err(Error::InvalidArgument(_))));
        assert!(matches!(second_order_variance(&m, &s, 1, 1), Err(Error::InvalidArgument(_))));
        let wrong = lhs_sample(2, 10, 1).unwrap();
        assert!(matches!(estimate_f0(&m, &wrong), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn failure_reports_sample_index() {
        let s = lhs_sample(2, 50, 9).unwrap();
        let bad_row = 17;
        let trigger = s.original.get(bad_row, 0);
        let m = FnModel::new("fails", 2, move |y: &[f64]| {
            if y[0] == trigger {
                Err(Error::InvalidArgument("boom".into()))
            } else {
                Ok(y[0])
            }
        });
        match sobol_indices(&m, &s, Orders::FirstAndSecond) {
            Err(Error::Model { index, source }) => {
                assert_eq!(index, bad_row);
                assert_eq!(*source, Error::InvalidArgument("boom".into()));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn batch_and_single_estimators_agree() {
        let m = analytic_poly_model();
        let s = lhs_sample(3, 500, 21).unwrap();
        let r = sobol_indices(&m, &s, Orders::FirstAndSecond).unwrap();
        assert_eq!(r.f0, estimate_f0(&m, &s).unwrap());
        assert_eq!(r.total_variance, total_variance(&m, &s).unwrap());
        for i in 0..3 {
            assert_eq!(r.first_order[i].variance, first_order_variance(&m, &s, i).unwrap());
        }
        assert_eq!(r.second_order.len(), 3);
        for e in &r.second_order {
            assert_eq!(e.variance, second_order_variance(&m, &s, e.i, e.j).unwrap());
            assert_eq!(e.index, e.variance / r.total_variance);
        }
    }

    #[test]
    fn result_is_independent_of_backend() {
        let m = analytic_poly_model();
        let s = lhs_sample(3, 700, 4).unwrap();
        let a = sobol_indices_with(&m, &s, Orders::FirstAndSecond, Execution::Sequential).unwrap();
        let b = sobol_indices_with(&m, &s, Orders::FirstAndSecond, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn first_order_only_skips_pairs() {
        let m = analytic_poly_model();
        let s = lhs_sample(3, 300, 4).unwrap();
        let r = sobol_indices(&m, &s, Orders::First).unwrap();
        assert!(r.second_order.is_empty());
        let sum: f64 = r.first_order.iter().map(|e| e.index).sum();
        assert!((r.higher_order_residual - (1.0 - sum)).abs() < 1e-15);
    }
}
