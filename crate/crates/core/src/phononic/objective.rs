use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use super::{first_band_gap, BandGap, GapOptions, Polarization, UnitCell};
use crate::error::{Error, Result};
use crate::sampling::ParameterSpace;
use crate::sobol::Model;

/// Start or width of the first gap, for S or P waves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ObjectiveKind {
    SS,
    WS,
    SP,
    WP,
}

impl ObjectiveKind {
    pub const ALL: [ObjectiveKind; 4] = [
        ObjectiveKind::SS,
        ObjectiveKind::WS,
        ObjectiveKind::SP,
        ObjectiveKind::WP,
    ];

    pub fn polarization(self) -> Polarization {
        match self {
            ObjectiveKind::SS | ObjectiveKind::WS => Polarization::S,
            ObjectiveKind::SP | ObjectiveKind::WP => Polarization::P,
        }
    }

    pub fn is_width(self) -> bool {
        matches!(self, ObjectiveKind::WS | ObjectiveKind::WP)
    }

    pub fn pick(self, gap: &BandGap) -> f64 {
        if self.is_width() {
            gap.width
        } else {
            gap.start
        }
    }
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveKind::SS => "SS",
            ObjectiveKind::WS => "WS",
            ObjectiveKind::SP => "SP",
            ObjectiveKind::WP => "WP",
        })
    }
}

impl FromStr for ObjectiveKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "SS" => Ok(ObjectiveKind::SS),
            "WS" => Ok(ObjectiveKind::WS),
            "SP" => Ok(ObjectiveKind::SP),
            "WP" => Ok(ObjectiveKind::WP),
            _ => Err(Error::InvalidArgument(format!("unknown objective kind {s:?}"))),
        }
    }
}

/// First gap of the two-layer cell at `(E2/E1, rho2/rho1, h2/h1, nu1, nu2)`.
pub fn band_gap_at(params: &[f64], pol: Polarization) -> Result<BandGap> {
    let cell = UnitCell::from_params(params)?;
    first_band_gap(&cell, pol, &GapOptions::default()).ok_or_else(|| Error::NoGap {
        params: params.to_vec(),
    })
}

/// Objective value in radial dimensionless frequency.
pub fn objective(params: &[f64], kind: ObjectiveKind) -> Result<f64> {
    band_gap_at(params, kind.polarization()).map(|g| kind.pick(&g))
}

/// Frequency convention of a reported value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrequencyUnit {
    /// `omega_hat`, radians per unit of `T*`.
    Radial,
    /// `omega_hat / 2 pi`, cycles per unit of `T*`.
    Cyclic,
}

impl FrequencyUnit {
    pub fn from_radial(self, omega_hat: f64) -> f64 {
        match self {
            FrequencyUnit::Radial => omega_hat,
            FrequencyUnit::Cyclic => omega_hat / TAU,
        }
    }
}

/// Objective composed with the unit-cube mapping of a parameter space, ready
/// for the sensitivity engine.
#[derive(Debug, Clone)]
pub struct PhononicObjective {
    pub space: ParameterSpace,
    pub kind: ObjectiveKind,
    pub unit: FrequencyUnit,
}

impl PhononicObjective {
    pub fn new(kind: ObjectiveKind, unit: FrequencyUnit) -> Self {
        Self {
            space: ParameterSpace::phononic(),
            kind,
            unit,
        }
    }

    pub fn with_space(space: ParameterSpace, kind: ObjectiveKind, unit: FrequencyUnit) -> Result<Self> {
        if space.n_dims() != 5 {
            return Err(Error::DimensionMismatch {
                expected: 5,
                actual: space.n_dims(),
            });
        }
        Ok(Self { space, kind, unit })
    }

    /// Evaluates at a physical point.
    pub fn eval_params(&self, params: &[f64]) -> Result<f64> {
        objective(params, self.kind).map(|w| self.unit.from_radial(w))
    }
}

impl Model for PhononicObjective {
    fn n_dims(&self) -> usize {
        5
    }

    fn eval(&self, y: &[f64]) -> Result<f64> {
        let params = self.space.map_to_space(y)?;
        self.eval_params(&params)
    }

    fn id(&self) -> String {
        self.kind.to_string()
    }
}
