//! Dispersion sampling and first-gap extraction.
//!
//! A frequency lies in a gap when `|trace(T)/2| > 1`. The first gap is found
//! by a forward scan whose step is tied to the total transit time of the cell,
//! followed by bisection on both edges. Inside a gap the half-trace keeps its
//! sign; a sign flip between two gap samples means a passband narrower than
//! the scan step sits between them, and the gap ends at the first crossing.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::transfer::half_trace_unchecked;
use super::{wave_speed, Polarization, UnitCell};
use crate::error::{Error, Result};

pub const DEFAULT_OMEGA_STEP_FACTOR: f64 = 200.0;
pub const DEFAULT_EDGE_TOL: f64 = 1e-9;
/// Default scan cap in units of `pi / tau`.
const DEFAULT_CAP_BRANCHES: f64 = 8.0;
/// Once a gap has opened, its far edge is searched up to this multiple of the cap.
const END_SEARCH_FACTOR: f64 = 4.0;
const MAX_BISECTIONS: usize = 200;
/// Rounding slack on `|half_trace| <= 1`. Products of layer matrices can land
/// an ulp or two outside `[-1, 1]` at a band edge that is only touched.
pub const PASSBAND_SLACK: f64 = 1e-12;

fn in_gap(half_trace: f64) -> bool {
    half_trace.abs() > 1.0 + PASSBAND_SLACK
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandGap {
    pub start: f64,
    pub end: f64,
    pub width: f64,
}

impl BandGap {
    fn new(start: f64, end: f64) -> Self {
        Self {
            start,
            end,
            width: end - start,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionPoint {
    pub omega_hat: f64,
    pub half_trace: f64,
    /// Bloch phase `k h` in `[0, pi]`; `None` inside a gap.
    pub k_hat_h: Option<f64>,
    pub in_gap: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapOptions {
    pub omega_step_factor: f64,
    pub edge_tol: f64,
    /// Upper end of the scan; `None` means `8 pi / tau`.
    pub omega_cap: Option<f64>,
}

impl Default for GapOptions {
    fn default() -> Self {
        Self {
            omega_step_factor: DEFAULT_OMEGA_STEP_FACTOR,
            edge_tol: DEFAULT_EDGE_TOL,
            omega_cap: None,
        }
    }
}

/// Total transit time `sum(h_n / C_n)` through the cell.
pub(crate) fn transit_time(cell: &UnitCell, pol: Polarization) -> f64 {
    cell.layers().iter().map(|l| l.h_hat / wave_speed(l, pol)).sum()
}

/// Samples the dispersion relation on `omega_k = omega_max (k + 1) / n_points`.
pub fn dispersion_curve(
    cell: &UnitCell,
    omega_max: f64,
    n_points: usize,
    pol: Polarization,
) -> Result<Vec<DispersionPoint>> {
    if !(omega_max > 0.0 && omega_max.is_finite()) || n_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need omega_max > 0 and n_points >= 2, got {omega_max} and {n_points}"
        )));
    }
    Ok((0..n_points)
        .map(|k| {
            let omega_hat = omega_max * (k + 1) as f64 / n_points as f64;
            let ht = half_trace_unchecked(cell, omega_hat, pol);
            let in_gap = in_gap(ht);
            DispersionPoint {
                omega_hat,
                half_trace: ht,
                k_hat_h: (!in_gap).then(|| ht.clamp(-1.0, 1.0).acos()),
                in_gap,
            }
        })
        .collect())
}

/// Bisects `[lo, hi]` where `f` changes sign down to `tol`, then keeps halving
/// while `|f|` at the midpoint exceeds `tol`. `f` is never called at `lo`,
/// which may be zero frequency.
fn bisect(mut lo: f64, mut hi: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    let hi_positive = f(hi) > 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let value = f(mid);
        if hi - lo <= tol && value.abs() <= tol {
            return mid;
        }
        if mid <= lo || mid >= hi {
            return mid;
        }
        if (value > 0.0) == hi_positive {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// First frequency band gap above zero, or `None` if none opens below the cap.
pub fn first_band_gap(cell: &UnitCell, pol: Polarization, opts: &GapOptions) -> Option<BandGap> {
    let tau = transit_time(cell, pol);
    let step = PI / (opts.omega_step_factor * tau);
    let cap = opts.omega_cap.unwrap_or(DEFAULT_CAP_BRANCHES * PI / tau);
    let ht = |w: f64| half_trace_unchecked(cell, w, pol);
    let excess = |w: f64| ht(w).abs() - 1.0;

    // Half-trace is exactly 1 at zero frequency.
    let (mut prev_w, mut prev_ht) = (0.0_f64, 1.0_f64);
    let mut start = None;
    let mut k = 1u64;
    loop {
        let w = k as f64 * step;
        k += 1;
        let h = ht(w);
        match start {
            None => {
                if w > cap {
                    return None;
                }
                if in_gap(h) {
                    start = Some(bisect(prev_w, w, opts.edge_tol, excess));
                }
            }
            Some(s) => {
                if !in_gap(h) {
                    return Some(BandGap::new(s, bisect(prev_w, w, opts.edge_tol, excess)));
                }
                if h.signum() != prev_ht.signum() {
                    let side = prev_ht.signum();
                    let end = bisect(prev_w, w, opts.edge_tol, |x| side * ht(x) - 1.0);
                    return Some(BandGap::new(s, end));
                }
                if w > END_SEARCH_FACTOR * cap {
                    log::warn!("gap opened at {s} but did not close below {}", END_SEARCH_FACTOR * cap);
                    return None;
                }
            }
        }
        prev_w = w;
        prev_ht = h;
    }
}
