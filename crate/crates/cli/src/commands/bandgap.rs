use serde::Serialize;
use std::f64::consts::TAU;

use phonon_sobol::phononic::{first_band_gap, BandGap, GapOptions, Polarization, UnitCell};

use super::{load_cell, polarizations, Context};
use crate::args::BandgapArgs;
use crate::failure::{CmdResult, Failure};

#[derive(Serialize)]
struct Entry {
    polarization: Polarization,
    /// Radial `omega_hat`.
    gap: Option<BandGap>,
    /// Cyclic `omega_hat / 2 pi`.
    gap_cyclic: Option<BandGap>,
}

#[derive(Serialize)]
struct Summary<'a> {
    seed: u64,
    cell: &'a UnitCell,
    gaps: Vec<Entry>,
}

pub fn run(args: &BandgapArgs, ctx: &mut Context) -> CmdResult<()> {
    let cell = load_cell(&args.source)?;
    let mut gaps = Vec::new();
    let mut missing = Vec::new();
    for pol in polarizations(args.polarization) {
        let gap = first_band_gap(&cell, pol, &GapOptions::default());
        match gap {
            Some(g) => println!(
                "{}: start {:.10} end {:.10} width {:.10} (omega_hat)",
                pol.label(),
                g.start,
                g.end,
                g.width
            ),
            None => {
                println!("{}: no gap", pol.label());
                missing.push(pol.label());
            }
        }
        gaps.push(Entry {
            polarization: pol,
            gap,
            gap_cyclic: gap.map(|g| BandGap {
                start: g.start / TAU,
                end: g.end / TAU,
                width: g.width / TAU,
            }),
        });
    }
    ctx.out.json(
        "bandgap",
        &Summary {
            seed: ctx.seed,
            cell: &cell,
            gaps,
        },
    )?;
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numerical(format!(
            "no band gap below the search cap for polarization {}",
            missing.join(", ")
        )))
    }
}
