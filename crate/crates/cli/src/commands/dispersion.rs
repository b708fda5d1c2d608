use serde::Serialize;

use phonon_sobol::phononic::{dispersion_curve, first_band_gap, GapOptions, UnitCell};
use phonon_sobol::report::{write_dispersion_csv, GapSummary};

use super::{load_cell, polarizations, Context};
use crate::args::DispersionArgs;
use crate::failure::CmdResult;

#[derive(Serialize)]
struct Summary<'a> {
    seed: u64,
    cell: &'a UnitCell,
    omega_max: f64,
    points: usize,
    gaps: Vec<GapSummary>,
}

pub fn run(args: &DispersionArgs, ctx: &mut Context) -> CmdResult<()> {
    let cell = load_cell(&args.source)?;
    let mut gaps = Vec::new();
    for pol in polarizations(args.polarization) {
        let curve = dispersion_curve(&cell, args.omega_max, args.points, pol)?;
        ctx.out
            .table(&format!("dispersion_{}", pol.label()), &curve, |w| write_dispersion_csv(w, &curve))?;
        gaps.push(GapSummary {
            polarization: pol,
            gap: first_band_gap(&cell, pol, &GapOptions::default()),
        });
    }
    ctx.out.json(
        "bandgaps",
        &Summary {
            seed: ctx.seed,
            cell: &cell,
            omega_max: args.omega_max,
            points: args.points,
            gaps,
        },
    )
}
