use serde::{Deserialize, Serialize};

use super::NU_MAX;
use crate::error::{Error, Result};

/// One homogeneous isotropic layer in dimensionless form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    /// Thickness as a fraction of the unit cell.
    #[serde(rename = "h")]
    pub h_hat: f64,
    /// Density relative to layer 1.
    #[serde(rename = "rho")]
    pub rho_hat: f64,
    /// Young's modulus relative to layer 1.
    #[serde(rename = "e")]
    pub e_hat: f64,
    pub nu: f64,
}

impl Layer {
    pub fn new(h_hat: f64, rho_hat: f64, e_hat: f64, nu: f64) -> Result<Self> {
        let layer = Self {
            h_hat,
            rho_hat,
            e_hat,
            nu,
        };
        layer.validate()?;
        Ok(layer)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        for (name, v) in [("h", self.h_hat), ("rho", self.rho_hat), ("e", self.e_hat)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidLayer(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if self.nu >= 0.5 {
            return Err(Error::SingularMaterial { nu: self.nu });
        }
        if self.nu.is_nan() || self.nu < 0.0 {
            return Err(Error::InvalidLayer(format!("Poisson's ratio must be >= 0, got {}", self.nu)));
        }
        if self.nu > NU_MAX {
            log::warn!("Poisson's ratio {} exceeds the design cap {NU_MAX}", self.nu);
        }
        Ok(())
    }
}

/// Layer in physical units, for building a cell from measured properties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionalLayer {
    pub thickness: f64,
    pub density: f64,
    pub youngs_modulus: f64,
    pub poisson: f64,
}

/// Ordered stack of layers forming one period. Layer 1 is the reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCell")]
pub struct UnitCell {
    layers: Vec<Layer>,
}

#[derive(Deserialize)]
struct RawCell {
    layers: Vec<Layer>,
}

impl TryFrom<RawCell> for UnitCell {
    type Error = Error;

    fn try_from(raw: RawCell) -> Result<Self> {
        UnitCell::new(raw.layers)
    }
}

impl UnitCell {
    /// Builds a cell, rescaling thicknesses to sum to one and densities and
    /// moduli so that layer 1 has `rho = e = 1`.
    pub fn new(layers: Vec<Layer>) -> Result<Self> {
        let first = *layers
            .first()
            .ok_or_else(|| Error::InvalidLayer("unit cell has no layers".into()))?;
        for l in &layers {
            l.validate()?;
        }
        let total_h: f64 = layers.iter().map(|l| l.h_hat).sum();
        let layers = layers
            .into_iter()
            .map(|l| Layer {
                h_hat: l.h_hat / total_h,
                rho_hat: l.rho_hat / first.rho_hat,
                e_hat: l.e_hat / first.e_hat,
                nu: l.nu,
            })
            .collect();
        Ok(Self { layers })
    }

    /// Two-layer cell from the five design ratios.
    pub fn two_layer(e2_e1: f64, rho2_rho1: f64, h2_h1: f64, nu1: f64, nu2: f64) -> Result<Self> {
        Self::new(vec![
            Layer::new(1.0, 1.0, 1.0, nu1)?,
            Layer::new(h2_h1, rho2_rho1, e2_e1, nu2)?,
        ])
    }

    /// Two-layer cell from a `(E2/E1, rho2/rho1, h2/h1, nu1, nu2)` vector.
    pub fn from_params(params: &[f64]) -> Result<Self> {
        match *params {
            [e, rho, h, nu1, nu2] => Self::two_layer(e, rho, h, nu1, nu2),
            _ => Err(Error::DimensionMismatch {
                expected: 5,
                actual: params.len(),
            }),
        }
    }

    /// Nondimensionalizes physical layers against layer 1 and the total thickness.
    pub fn from_dimensional(layers: &[DimensionalLayer]) -> Result<Self> {
        let first = layers
            .first()
            .ok_or_else(|| Error::InvalidLayer("unit cell has no layers".into()))?;
        let total_h: f64 = layers.iter().map(|l| l.thickness).sum();
        let scaled = layers
            .iter()
            .map(|l| {
                Layer::new(
                    l.thickness / total_h,
                    l.density / first.density,
                    l.youngs_modulus / first.youngs_modulus,
                    l.poisson,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { layers: scaled })
    }

    /// Single homogeneous material split into `n` equal layers.
    pub fn homogeneous(n: usize, nu: f64) -> Result<Self> {
        Self::new(vec![Layer::new(1.0, 1.0, 1.0, nu)?; n.max(1)])
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
}

/// Reference time `T* = h sqrt(rho_1 / E_1)`. Divide a dimensionless cyclic
/// frequency by this to get Hz.
pub fn reference_time(total_thickness: f64, rho1: f64, e1: f64) -> f64 {
    total_thickness * (rho1 / e1).sqrt()
}
