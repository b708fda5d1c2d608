use serde::Serialize;

use phonon_sobol::phononic::{FrequencyUnit, PhononicObjective};
use phonon_sobol::report::{write_indices_csv, write_sobol_function_csv, SobolReport};
use phonon_sobol::sampling::{ParameterSpace, SampleSet};
use phonon_sobol::sobol::{
    analytic_poly_model, analytic_poly_reference, estimate_sobol_function_1d, estimate_sobol_function_2d,
    sobol_indices_with, FunctionOptions, Model, Orders, PolyTerm, SobolFunctionEstimate, SobolResult,
};

use super::{parse_kinds, Context};
use crate::args::SobolArgs;
use crate::failure::{CmdResult, Failure};
use crate::output::read_json;

const MIN_SAMPLES: usize = 100;

#[derive(Serialize)]
struct IndexComparison {
    term: PolyTerm,
    axes: Vec<usize>,
    published: f64,
    estimated: f64,
}

#[derive(Serialize)]
struct FunctionComparison {
    axes: Vec<usize>,
    r_squared: f64,
}

#[derive(Serialize)]
struct PolyComparison {
    seed: u64,
    n_samples: usize,
    f0_exact: f64,
    f0_estimated: f64,
    indices: Vec<IndexComparison>,
    functions: Vec<FunctionComparison>,
}

/// `"2"` or `"2:3"` (1-based) to 0-based axes.
fn parse_axes(spec: &str, n_dims: usize) -> CmdResult<Vec<usize>> {
    let axes: Vec<usize> = spec
        .split(':')
        .map(|a| a.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::config(format!("bad function spec {spec:?}; use e.g. 2 or 2:3")))?;
    let ok = matches!(axes.len(), 1 | 2)
        && axes.iter().all(|&a| (1..=n_dims).contains(&a))
        && !(axes.len() == 2 && axes[0] == axes[1]);
    if !ok {
        return Err(Failure::config(format!("bad function spec {spec:?} for {n_dims} parameters")));
    }
    Ok(axes.into_iter().map(|a| a - 1).collect())
}

fn study<M: Model>(
    model: &M,
    names: &[String],
    args: &SobolArgs,
    ctx: &mut Context,
) -> CmdResult<(SobolResult, Vec<SobolFunctionEstimate>)> {
    let id = model.id();
    let samples = SampleSet::generate(model.n_dims(), args.samples, ctx.seed)?;
    let orders = if args.first_only {
        Orders::First
    } else {
        Orders::FirstAndSecond
    };
    log::info!("sobol study {id}: N = {}, seed = {}", args.samples, ctx.seed);
    let result = sobol_indices_with(model, &samples, orders, ctx.exec)?;
    ctx.out.json(&format!("sobol_{id}"), &SobolReport::new(result.clone(), names.to_vec()))?;
    ctx.out.table(&format!("sobol_{id}_indices"), &result, |w| write_indices_csv(w, &result, names))?;

    let opts = FunctionOptions {
        grid_points: args.grid,
        inner_samples: args.inner,
        seed: ctx.seed,
        execution: ctx.exec,
    };
    let mut functions = Vec::new();
    for spec in &args.functions {
        let axes = parse_axes(spec, model.n_dims())?;
        let est = match axes[..] {
            [i] => estimate_sobol_function_1d(model, i, &opts)?,
            [i, j] => estimate_sobol_function_2d(model, i, j, &opts)?,
            _ => unreachable!(),
        };
        let label: String = axes.iter().map(|a| (a + 1).to_string()).collect();
        ctx.out.table(&format!("sobol_{id}_F{label}"), &est, |w| write_sobol_function_csv(w, &est, names))?;
        functions.push(est);
    }

    println!("{id}: total variance {:.6e}", result.total_variance);
    for (axes, s) in result.ranked() {
        let label: Vec<&str> = axes.iter().map(|&a| names[a].as_str()).collect();
        println!("  S[{}] = {s:.4}", label.join(", "));
    }
    Ok((result, functions))
}

fn r_squared(estimated: &[f64], exact: &[f64]) -> f64 {
    let mean = exact.iter().sum::<f64>() / exact.len() as f64;
    let ss_tot: f64 = exact.iter().map(|v| (v - mean).powi(2)).sum();
    let ss_res: f64 = estimated.iter().zip(exact).map(|(a, b)| (a - b).powi(2)).sum();
    1.0 - ss_res / ss_tot
}

fn poly_comparison(result: &SobolResult, functions: &[SobolFunctionEstimate], seed: u64) -> PolyComparison {
    let reference = analytic_poly_reference();
    let estimated = |axes: &[usize]| match axes {
        [i] => result.s(*i),
        [i, j] => result.s2(*i, *j).unwrap_or(f64::NAN),
        _ => result.higher_order_residual,
    };
    let indices = PolyTerm::ALL
        .iter()
        .map(|&t| IndexComparison {
            term: t,
            axes: t.axes().to_vec(),
            published: reference.index(t),
            estimated: estimated(t.axes()),
        })
        .collect();
    let functions = functions
        .iter()
        .filter_map(|est| {
            let term = PolyTerm::ALL.into_iter().find(|t| t.axes() == est.axes.as_slice())?;
            let exact: Vec<f64> = est
                .nodes()
                .iter()
                .map(|(node, _)| {
                    let mut x = [0.0; 3];
                    for (&a, &u) in est.axes.iter().zip(node) {
                        x[a] = 8.0 * u - 4.0;
                    }
                    reference.function(term, x)
                })
                .collect();
            Some(FunctionComparison {
                axes: est.axes.clone(),
                r_squared: r_squared(&est.values, &exact),
            })
        })
        .collect();
    PolyComparison {
        seed,
        n_samples: result.n_samples,
        f0_exact: reference.f0_exact,
        f0_estimated: result.f0,
        indices,
        functions,
    }
}

pub fn run(args: &SobolArgs, ctx: &mut Context) -> CmdResult<()> {
    if args.samples < MIN_SAMPLES {
        return Err(Failure::config(format!("need at least {MIN_SAMPLES} samples, got {}", args.samples)));
    }
    if args.target.eq_ignore_ascii_case("poly") {
        if args.space.is_some() {
            return Err(Failure::config("--space applies to the phononic objectives only"));
        }
        let names: Vec<String> = (1..=3).map(|i| format!("x{i}")).collect();
        let (result, functions) = study(&analytic_poly_model(), &names, args, ctx)?;
        let cmp = poly_comparison(&result, &functions, ctx.seed);
        return ctx.out.json("sobol_poly_comparison", &cmp);
    }
    let kinds = parse_kinds(&args.target)?;
    let space = match &args.space {
        Some(path) => read_json::<ParameterSpace>(path, "parameter space")?,
        None => ParameterSpace::phononic(),
    };
    for kind in kinds {
        let model = PhononicObjective::with_space(space.clone(), kind, FrequencyUnit::Cyclic)?;
        study(&model, &space.names(), args, ctx)?;
    }
    Ok(())
}
