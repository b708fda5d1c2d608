//! Plot-ready CSV and JSON writers.
//!
//! CSV files use a header row, comma delimiter, `.` decimal separator and LF
//! line endings. Floats are written with 17 significant digits so they parse
//! back to the same bits.

use serde::{Deserialize, Serialize};
use std::io::{self, Write};

use crate::phononic::{BandGap, DispersionPoint, Polarization};
use crate::sampling::RNG_ALGORITHM;
use crate::sobol::{SobolFunctionEstimate, SobolResult};

/// Full-precision float formatting.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

pub fn write_dispersion_csv<W: Write>(mut w: W, points: &[DispersionPoint]) -> io::Result<()> {
    writeln!(w, "omega_hat,half_trace,k_hat_h,in_gap")?;
    for p in points {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f64(p.omega_hat),
            fmt_f64(p.half_trace),
            p.k_hat_h.map(fmt_f64).unwrap_or_default(),
            p.in_gap
        )?;
    }
    Ok(())
}

/// First-gap summary for one polarization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub polarization: Polarization,
    /// `None` when no gap opens below the scan cap.
    pub gap: Option<BandGap>,
}

/// Sobol' indices with the provenance needed to reproduce them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolReport {
    pub rng: String,
    pub parameters: Vec<String>,
    #[serde(flatten)]
    pub result: SobolResult,
}

impl SobolReport {
    pub fn new(result: SobolResult, parameters: Vec<String>) -> Self {
        Self {
            rng: RNG_ALGORITHM.to_string(),
            parameters,
            result,
        }
    }
}

/// One row per index: `model,seed,n_samples,order,i,j,variables,variance,index`.
/// `j` is empty for first-order rows; the residual row has order `residual`.
pub fn write_indices_csv<W: Write>(mut w: W, result: &SobolResult, names: &[String]) -> io::Result<()> {
    let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
    let prefix = format!("{},{},{}", result.model, result.seed, result.n_samples);
    writeln!(w, "model,seed,n_samples,order,i,j,variables,variance,index")?;
    for e in &result.first_order {
        writeln!(
            w,
            "{prefix},1,{},,{},{},{}",
            e.i + 1,
            name(e.i),
            fmt_f64(e.variance),
            fmt_f64(e.index)
        )?;
    }
    for e in &result.second_order {
        writeln!(
            w,
            "{prefix},2,{},{},{}:{},{},{}",
            e.i + 1,
            e.j + 1,
            name(e.i),
            name(e.j),
            fmt_f64(e.variance),
            fmt_f64(e.index)
        )?;
    }
    writeln!(
        w,
        "{prefix},residual,,,,,{}",
        fmt_f64(result.higher_order_residual)
    )?;
    Ok(())
}

/// Grid columns named after the axes, then `value`; the seed is repeated on
/// every row.
pub fn write_sobol_function_csv<W: Write>(
    mut w: W,
    estimate: &SobolFunctionEstimate,
    names: &[String],
) -> io::Result<()> {
    let cols: Vec<String> = estimate
        .axes
        .iter()
        .map(|&a| names.get(a).cloned().unwrap_or_else(|| format!("x{}", a + 1)))
        .collect();
    writeln!(w, "seed,{},value", cols.join(","))?;
    for (node, value) in estimate.nodes() {
        let coords: Vec<String> = node.into_iter().map(fmt_f64).collect();
        writeln!(w, "{},{},{}", estimate.seed, coords.join(","), fmt_f64(value))?;
    }
    Ok(())
}

/// Pretty JSON followed by a newline.
pub fn write_json<W: Write, T: Serialize>(mut w: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::other)?;
    writeln!(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sobol::{FirstOrderIndex, SecondOrderIndex};

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn dispersion_layout() {
        let pts = [
            DispersionPoint {
                omega_hat: 0.5,
                half_trace: 0.25,
                k_hat_h: Some(1.0),
                in_gap: false,
            },
            DispersionPoint {
                omega_hat: 1.0,
                half_trace: -1.5,
                k_hat_h: None,
                in_gap: true,
            },
        ];
        let mut buf = Vec::new();
        write_dispersion_csv(&mut buf, &pts).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.split('\n').collect();
        assert_eq!(lines[0], "omega_hat,half_trace,k_hat_h,in_gap");
        assert!(lines[2].ends_with(",,true"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn indices_layout() {
        let r = SobolResult {
            model: "poly".into(),
            n_dims: 2,
            n_samples: 10,
            seed: 3,
            f0: 1.0,
            total_variance: 2.0,
            first_order: vec![
                FirstOrderIndex { i: 0, variance: 1.0, index: 0.5 },
                FirstOrderIndex { i: 1, variance: 0.5, index: 0.25 },
            ],
            second_order: vec![SecondOrderIndex { i: 0, j: 1, variance: 0.5, index: 0.25 }],
            higher_order_residual: 0.0,
        };
        let mut buf = Vec::new();
        write_indices_csv(&mut buf, &r, &["a".into(), "b".into()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert!(lines[3].starts_with("poly,3,10,2,1,2,a:b,"));
        let json = serde_json::to_value(SobolReport::new(r, vec![])).unwrap();
        assert_eq!(json["seed"], 3);
        assert!(json["rng"].as_str().unwrap().contains("ChaCha8"));
    }
}
