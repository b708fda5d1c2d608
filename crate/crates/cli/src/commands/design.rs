use serde::Serialize;
use std::f64::consts::TAU;
use std::io::Write;

use phonon_sobol::design::{eval_design_equation, truncation_curve_with, DeltaReport};
use phonon_sobol::phononic::ObjectiveKind;
use phonon_sobol::report::fmt_f64;
use phonon_sobol::sampling::SampleSet;

use super::{parse_kinds, Context};
use crate::args::{DesignArgs, DesignMode};
use crate::failure::{CmdResult, Failure};

#[derive(Serialize)]
struct Prediction {
    kind: ObjectiveKind,
    params: Vec<f64>,
    /// Cyclic `omega_hat / 2 pi`, the unit of the published equations.
    value: f64,
    omega_hat: f64,
    extrapolated: bool,
}

#[derive(Serialize)]
struct EvalReport {
    seed: u64,
    predictions: Vec<Prediction>,
}

fn write_curve_csv(w: &mut dyn Write, r: &DeltaReport) -> std::io::Result<()> {
    writeln!(w, "kind,N,seed,k,delta")?;
    for (k, d) in r.delta_by_k.iter().enumerate() {
        writeln!(w, "{},{},{},{k},{}", r.kind, r.n, r.seed, fmt_f64(*d))?;
    }
    Ok(())
}

pub fn run(args: &DesignArgs, ctx: &mut Context) -> CmdResult<()> {
    let kinds = parse_kinds(&args.kind)?;
    match args.mode {
        DesignMode::Eval => {
            if args.params.is_empty() {
                return Err(Failure::config("eval mode needs at least one --params point"));
            }
            if !args.params.len().is_multiple_of(5) {
                return Err(Failure::config("each --params point needs exactly 5 values"));
            }
            let mut predictions = Vec::new();
            for point in args.params.chunks(5) {
                for &kind in &kinds {
                    let p = eval_design_equation(kind, point)?;
                    println!("{kind} {point:?}: {:.6} (omega_hat/2pi){}", p.value, if p.extrapolated { " extrapolated" } else { "" });
                    predictions.push(Prediction {
                        kind,
                        params: point.to_vec(),
                        value: p.value,
                        omega_hat: p.value * TAU,
                        extrapolated: p.extrapolated,
                    });
                }
            }
            ctx.out.json(
                "design_eval",
                &EvalReport {
                    seed: ctx.seed,
                    predictions,
                },
            )
        }
        DesignMode::Error | DesignMode::Truncation => {
            if args.samples < 2 {
                return Err(Failure::config("need at least 2 samples"));
            }
            let samples = SampleSet::generate(5, args.samples, ctx.seed)?;
            for kind in kinds {
                let report = truncation_curve_with(kind, &samples, ctx.exec)?.report();
                println!("{kind}: delta = {:.6} by k = {:?}", report.delta, report.delta_by_k);
                if args.mode == DesignMode::Error {
                    ctx.out.json(&format!("design_error_{kind}"), &report)?;
                } else {
                    ctx.out.json(&format!("design_truncation_{kind}"), &report)?;
                    if ctx.out.format == crate::args::Format::Csv {
                        ctx.out.table(&format!("design_truncation_{kind}"), &report, |w| write_curve_csv(w, &report))?;
                    }
                }
            }
            Ok(())
        }
    }
}
