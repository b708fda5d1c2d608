use serde::{Deserialize, Serialize};

use super::{Layer, Matrix2, UnitCell};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarization {
    /// Transverse wave; stiffness is the shear modulus.
    S,
    /// Longitudinal wave; stiffness is the P-wave modulus `lambda + 2 mu`.
    P,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::S, Polarization::P];

    pub fn label(self) -> &'static str {
        match self {
            Polarization::S => "S",
            Polarization::P => "P",
        }
    }
}

/// Lame parameters `(lambda, mu)` from Young's modulus and Poisson's ratio.
pub fn lame_from_e_nu(e_hat: f64, nu: f64) -> Result<(f64, f64)> {
    if nu >= 0.5 {
        return Err(Error::SingularMaterial { nu });
    }
    if e_hat.is_nan() || e_hat <= 0.0 || nu.is_nan() || nu < 0.0 {
        return Err(Error::InvalidLayer(format!("need e > 0 and 0 <= nu < 0.5, got e = {e_hat}, nu = {nu}")));
    }
    let mu = e_hat / (2.0 * (1.0 + nu));
    let lambda = e_hat * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    Ok((lambda, mu))
}

/// Stiffness entering the stress row for the given polarization.
fn modulus(layer: &Layer, pol: Polarization) -> f64 {
    // Layers are validated on construction, so nu < 0.5 here.
    let mu = layer.e_hat / (2.0 * (1.0 + layer.nu));
    match pol {
        Polarization::S => mu,
        Polarization::P => {
            let lambda = layer.e_hat * layer.nu / ((1.0 + layer.nu) * (1.0 - 2.0 * layer.nu));
            lambda + 2.0 * mu
        }
    }
}

pub fn wave_speed(layer: &Layer, pol: Polarization) -> f64 {
    (modulus(layer, pol) / layer.rho_hat).sqrt()
}

fn check_omega(omega_hat: f64) -> Result<()> {
    if omega_hat > 0.0 && omega_hat.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("omega_hat must be positive, got {omega_hat}")))
    }
}

/// Matrix mapping the amplitudes `(A, B)` of `u = A sin(wz/C) + B cos(wz/C)`
/// to displacement and stress at height `z` inside the layer.
pub fn displacement_stress_basis(layer: &Layer, z: f64, omega_hat: f64, pol: Polarization) -> Matrix2 {
    let c = wave_speed(layer, pol);
    let k = modulus(layer, pol) * omega_hat / c;
    let (s, co) = (omega_hat * z / c).sin_cos();
    Matrix2::new(s, co, k * co, -k * s)
}

/// Transfer matrix across one layer, bottom to top.
pub fn layer_transfer_matrix(layer: &Layer, omega_hat: f64, pol: Polarization) -> Result<Matrix2> {
    check_omega(omega_hat)?;
    Ok(layer_matrix_unchecked(layer, omega_hat, pol))
}

#[inline]
fn layer_matrix_unchecked(layer: &Layer, omega_hat: f64, pol: Polarization) -> Matrix2 {
    let c = wave_speed(layer, pol);
    let k = modulus(layer, pol) * omega_hat / c;
    let (s, co) = (omega_hat * layer.h_hat / c).sin_cos();
    Matrix2::new(co, s / k, -k * s, co)
}

/// Ordered product `T_N ... T_1` over the cell.
pub fn cell_transfer_matrix(cell: &UnitCell, omega_hat: f64, pol: Polarization) -> Result<Matrix2> {
    check_omega(omega_hat)?;
    Ok(cell_matrix_unchecked(cell, omega_hat, pol))
}

#[inline]
pub(crate) fn cell_matrix_unchecked(cell: &UnitCell, omega_hat: f64, pol: Polarization) -> Matrix2 {
    cell.layers()
        .iter()
        .fold(Matrix2::identity(), |acc, l| layer_matrix_unchecked(l, omega_hat, pol) * acc)
}

/// Half the trace of the cell transfer matrix, i.e. `cos(k h)` on the
/// dispersion branches.
pub fn half_trace(cell: &UnitCell, omega_hat: f64, pol: Polarization) -> Result<f64> {
    check_omega(omega_hat)?;
    Ok(half_trace_unchecked(cell, omega_hat, pol))
}

#[inline]
pub(crate) fn half_trace_unchecked(cell: &UnitCell, omega_hat: f64, pol: Polarization) -> f64 {
    0.5 * cell_matrix_unchecked(cell, omega_hat, pol).trace()
}

/// Closed-form two-layer dispersion right-hand side.
pub fn two_layer_half_trace(
    e2_e1: f64,
    rho2_rho1: f64,
    h2_h1: f64,
    nu1: f64,
    nu2: f64,
    omega_hat: f64,
    pol: Polarization,
) -> Result<f64> {
    for (name, v) in [("E2/E1", e2_e1), ("rho2/rho1", rho2_rho1), ("h2/h1", h2_h1)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    let h1 = 1.0 / (1.0 + h2_h1);
    let h2 = h2_h1 / (1.0 + h2_h1);
    let l1 = Layer::new(h1, 1.0, 1.0, nu1)?;
    let l2 = Layer::new(h2, rho2_rho1, e2_e1, nu2)?;
    let (c1, c2) = (wave_speed(&l1, pol), wave_speed(&l2, pol));
    let z = (l1.rho_hat * c1) / (l2.rho_hat * c2);
    let (a, b) = (omega_hat * h1 / c1, omega_hat * h2 / c2);
    Ok(a.cos() * b.cos() - 0.5 * (z + 1.0 / z) * a.sin() * b.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn layer_strategy() -> impl Strategy<Value = Layer> {
        (0.01f64..1.0, 0.0f64..3.0, 0.0f64..4.0, 0.0f64..0.463)
            .prop_map(|(h, lr, le, nu)| Layer::new(h, 10f64.powf(lr), 10f64.powf(le), nu).unwrap())
    }

    fn pol_strategy() -> impl Strategy<Value = Polarization> {
        prop_oneof![Just(Polarization::S), Just(Polarization::P)]
    }

    #[test]
    fn lame_values() {
        assert_eq!(lame_from_e_nu(1.0, 0.0).unwrap(), (0.0, 0.5));
        let (l, m) = lame_from_e_nu(1.0, 0.2).unwrap();
        assert_abs_diff_eq!(l, 0.2778, epsilon = 5e-5);
        assert_abs_diff_eq!(m, 0.4167, epsilon = 5e-5);
        let (_, m) = lame_from_e_nu(1000.0, 0.463).unwrap();
        assert_abs_diff_eq!(m, 341.76, epsilon = 5e-3);
        assert_eq!(lame_from_e_nu(1.0, 0.5), Err(Error::SingularMaterial { nu: 0.5 }));
    }

    #[test]
    fn reference_speeds() {
        let reference = Layer::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(wave_speed(&reference, Polarization::S), 0.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(wave_speed(&reference, Polarization::P), 1.0, epsilon = 1e-15);
        let stiff = Layer::new(1.0, 2.0, 1000.0, 0.2).unwrap();
        assert_abs_diff_eq!(wave_speed(&stiff, Polarization::P), 23.57, epsilon = 5e-3);
    }

    #[test]
    fn half_period_layer_has_trace_minus_two() {
        let layer = Layer::new(0.5, 3.0, 7.0, 0.25).unwrap();
        for pol in Polarization::BOTH {
            let omega = PI * wave_speed(&layer, pol) / layer.h_hat;
            let t = layer_transfer_matrix(&layer, omega, pol).unwrap();
            assert_abs_diff_eq!(t.trace(), -2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn nonpositive_frequency_rejected() {
        let layer = Layer::new(1.0, 1.0, 1.0, 0.0).unwrap();
        assert!(layer_transfer_matrix(&layer, 0.0, Polarization::S).is_err());
        let cell = UnitCell::homogeneous(2, 0.1).unwrap();
        assert!(half_trace(&cell, -1.0, Polarization::P).is_err());
    }

    #[test]
    fn single_layer_cell_matches_layer() {
        let layer = Layer::new(1.0, 1.0, 1.0, 0.3).unwrap();
        let cell = UnitCell::new(vec![layer]).unwrap();
        for pol in Polarization::BOTH {
            assert_eq!(
                cell_transfer_matrix(&cell, 2.3, pol).unwrap(),
                layer_transfer_matrix(&layer, 2.3, pol).unwrap()
            );
        }
    }

    #[test]
    fn split_layer_composes() {
        let whole = UnitCell::homogeneous(1, 0.2).unwrap();
        let split = UnitCell::homogeneous(2, 0.2).unwrap();
        for pol in Polarization::BOTH {
            for omega in [0.1, 1.0, 5.5, 17.0] {
                let a = cell_transfer_matrix(&whole, omega, pol).unwrap();
                let b = cell_transfer_matrix(&split, omega, pol).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn low_frequency_limit() {
        let cell = UnitCell::two_layer(1000.0, 2.0, 2.0, 0.2, 0.2).unwrap();
        for pol in Polarization::BOTH {
            assert_abs_diff_eq!(half_trace(&cell, 1e-4, pol).unwrap(), 1.0, epsilon = 1e-6);
            let g3 = 1.0 - half_trace(&cell, 1e-3, pol).unwrap();
            let g4 = 1.0 - half_trace(&cell, 1e-4, pol).unwrap();
            assert!(g4 > 0.0);
            assert!((g3 / g4 - 100.0).abs() < 1.0, "ratio {}", g3 / g4);
        }
    }

    #[test]
    fn equal_layers_give_plain_cosine() {
        for omega in [0.3, 2.0, 9.1] {
            let v = two_layer_half_trace(1.0, 1.0, 1.7, 0.2, 0.2, omega, Polarization::S).unwrap();
            let c = wave_speed(&Layer::new(1.0, 1.0, 1.0, 0.2).unwrap(), Polarization::S);
            assert_abs_diff_eq!(v, (omega / c).cos(), epsilon = 1e-12);
        }
    }

    proptest! {
        #[test]
        fn layer_matrix_is_basis_product(layer in layer_strategy(), omega in 1e-3f64..50.0, pol in pol_strategy()) {
            let direct = layer_transfer_matrix(&layer, omega, pol).unwrap();
            let top = displacement_stress_basis(&layer, layer.h_hat, omega, pol);
            let bottom = displacement_stress_basis(&layer, 0.0, omega, pol);
            let via_basis = top * bottom.try_inverse().unwrap();
            for (a, b) in direct.iter().zip(via_basis.iter()) {
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()), "{direct} vs {via_basis}");
            }
        }

        #[test]
        fn layer_matrix_is_unimodular(layer in layer_strategy(), omega in 1e-3f64..200.0, pol in pol_strategy()) {
            let t = layer_transfer_matrix(&layer, omega, pol).unwrap();
            prop_assert!((t.determinant() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn closed_form_matches_product(
            le in 0.0f64..4.0, lr in 0.0f64..3.0, lh in -0.96f64..0.96,
            nu1 in 0.0f64..0.463, nu2 in 0.0f64..0.463, omega in 1e-3f64..30.0, pol in pol_strategy()
        ) {
            let (e, r, h) = (10f64.powf(le), 10f64.powf(lr), 10f64.powf(lh));
            let cell = UnitCell::two_layer(e, r, h, nu1, nu2).unwrap();
            let product = half_trace(&cell, omega, pol).unwrap();
            let closed = two_layer_half_trace(e, r, h, nu1, nu2, omega, pol).unwrap();
            prop_assert!((product - closed).abs() < 1e-10 * (1.0 + closed.abs()));
        }

        #[test]
        fn impedance_swap_symmetry(r in 0.1f64..100.0, omega in 0.01f64..10.0) {
            // Same speed in both layers, impedance ratio z and 1/z.
            let a = two_layer_half_trace(r, r, 1.0, 0.2, 0.2, omega, Polarization::S).unwrap();
            let b = two_layer_half_trace(1.0 / r, 1.0 / r, 1.0, 0.2, 0.2, omega, Polarization::S).unwrap();
            prop_assert!((a - b).abs() < 1e-10);
        }
    }
}
