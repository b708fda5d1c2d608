//! Dimensionless transfer-matrix solver for 1D layered phononic crystals.
//!
//! All quantities are scaled by the first layer and the unit-cell thickness:
//! lengths by the total thickness `h`, densities by `rho_1`, moduli by `E_1`
//! and time by `T* = h sqrt(rho_1 / E_1)`. Frequencies are radial (`omega_hat`)
//! unless stated otherwise.

mod bands;
mod cell;
mod objective;
mod transfer;

pub use bands::{
    dispersion_curve, first_band_gap, BandGap, DispersionPoint, GapOptions, DEFAULT_EDGE_TOL,
    DEFAULT_OMEGA_STEP_FACTOR, PASSBAND_SLACK,
};
pub use cell::{reference_time, DimensionalLayer, Layer, UnitCell};
pub use objective::{
    objective, band_gap_at, FrequencyUnit, ObjectiveKind, PhononicObjective,
};
pub use transfer::{
    cell_transfer_matrix, displacement_stress_basis, half_trace, lame_from_e_nu,
    layer_transfer_matrix, two_layer_half_trace, wave_speed, Polarization,
};

/// Largest Poisson's ratio in the design space.
pub const NU_MAX: f64 = 0.463;

/// Real 2x2 transfer matrix.
pub type Matrix2 = nalgebra::Matrix2<f64>;
