use phonon_sobol::phononic::{ObjectiveKind, Polarization, UnitCell};
use phonon_sobol::Execution;

use crate::args::{CellSource, PolarizationArg};
use crate::failure::{CmdResult, Failure};
use crate::output::{read_json, Output};

pub mod bandgap;
pub mod design;
pub mod dispersion;
pub mod sobol;

/// State shared by every command.
pub struct Context {
    pub seed: u64,
    pub exec: Execution,
    pub out: Output,
}

pub fn load_cell(source: &CellSource) -> CmdResult<UnitCell> {
    match (&source.cell, &source.params) {
        (Some(path), None) => read_json(path, "cell"),
        (None, Some(p)) => Ok(UnitCell::from_params(p)?),
        _ => Err(Failure::config("give exactly one of --cell or --params")),
    }
}

pub fn polarizations(arg: PolarizationArg) -> Vec<Polarization> {
    match arg {
        PolarizationArg::S => vec![Polarization::S],
        PolarizationArg::P => vec![Polarization::P],
        PolarizationArg::Both => Polarization::BOTH.to_vec(),
    }
}

/// `all` or a single objective kind.
pub fn parse_kinds(s: &str) -> CmdResult<Vec<ObjectiveKind>> {
    if s.eq_ignore_ascii_case("all") {
        return Ok(ObjectiveKind::ALL.to_vec());
    }
    s.parse::<ObjectiveKind>()
        .map(|k| vec![k])
        .map_err(|_| Failure::config(format!("unknown objective {s:?}; expected SS, WS, SP, WP or all")))
}
