use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::phononic::{FrequencyUnit, ObjectiveKind, NU_MAX};
use crate::sampling::ParameterSpace;

const DATA: &str = include_str!("../../data/design_equations.json");

/// Highest power per coordinate accepted in a polynomial or rational term.
const MAX_DEGREE: usize = 7;

/// Transformed coordinate a fitted term depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coordinate {
    /// `log10(E2/E1)`
    LogE,
    /// `log10(rho2/rho1)`
    LogRho,
    /// `log10(h2/h1)`
    LogH,
    /// `nu1`, untransformed.
    Nu1,
}

impl Coordinate {
    pub const ALL: [Coordinate; 4] = [
        Coordinate::LogE,
        Coordinate::LogRho,
        Coordinate::LogH,
        Coordinate::Nu1,
    ];

    /// Value at a physical point `(E2/E1, rho2/rho1, h2/h1, nu1, nu2)`.
    pub fn of(self, params: &[f64]) -> f64 {
        match self {
            Coordinate::LogE => params[0].log10(),
            Coordinate::LogRho => params[1].log10(),
            Coordinate::LogH => params[2].log10(),
            Coordinate::Nu1 => params[3],
        }
    }

    /// Range of the coordinate over the canonical design space.
    pub fn canonical_range(self) -> (f64, f64) {
        let space = ParameterSpace::phononic();
        let d = &space.dims()[self.param_index()];
        match self {
            Coordinate::Nu1 => (0.0, NU_MAX),
            _ => (d.lower.log10(), d.upper.log10()),
        }
    }

    fn param_index(self) -> usize {
        match self {
            Coordinate::LogE => 0,
            Coordinate::LogRho => 1,
            Coordinate::LogH => 2,
            Coordinate::Nu1 => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub c: f64,
    /// Powers, one per term input.
    pub p: Vec<u32>,
}

/// Dense coefficient grid `grid[i][j]` of `x^i y^j`, evaluated by nested Horner.
#[derive(Debug, Clone, Copy)]
struct Dense {
    grid: [[f64; MAX_DEGREE + 1]; MAX_DEGREE + 1],
    deg_x: usize,
    deg_y: usize,
}

impl Dense {
    fn new(monomials: &[Monomial]) -> Self {
        let mut d = Dense {
            grid: [[0.0; MAX_DEGREE + 1]; MAX_DEGREE + 1],
            deg_x: 0,
            deg_y: 0,
        };
        for m in monomials {
            let i = m.p[0] as usize;
            let j = m.p.get(1).copied().unwrap_or(0) as usize;
            d.grid[i][j] += m.c;
            d.deg_x = d.deg_x.max(i);
            d.deg_y = d.deg_y.max(j);
        }
        d
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        let row = |i: usize| {
            self.grid[i][..=self.deg_y]
                .iter()
                .rev()
                .fold(0.0, |acc, &c| acc * y + c)
        };
        (0..=self.deg_x).rev().fold(0.0, |acc, i| acc * x + row(i))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum TermForm {
    Polynomial {
        monomials: Vec<Monomial>,
    },
    Rational {
        numerator: Vec<Monomial>,
        denominator: Vec<Monomial>,
    },
    /// `a exp(b x) - c exp(d x)`
    ExpDiff { a: f64, b: f64, c: f64, d: f64 },
}

/// One fitted Sobol' function of a design equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FittedTerm {
    pub label: String,
    pub inputs: Vec<Coordinate>,
    #[serde(flatten)]
    pub form: TermForm,
}

impl FittedTerm {
    /// Evaluates at transformed coordinates, one value per input.
    pub fn eval_coords(&self, coords: &[f64]) -> f64 {
        let x = coords[0];
        let y = coords.get(1).copied().unwrap_or(0.0);
        match &self.form {
            TermForm::Polynomial { monomials } => Dense::new(monomials).eval(x, y),
            TermForm::Rational {
                numerator,
                denominator,
            } => Dense::new(numerator).eval(x, y) / Dense::new(denominator).eval(x, y),
            TermForm::ExpDiff { a, b, c, d } => a * (b * x).exp() - c * (d * x).exp(),
        }
    }

    /// Denominator of a rational term at transformed coordinates.
    pub fn denominator_at(&self, coords: &[f64]) -> Option<f64> {
        match &self.form {
            TermForm::Rational { denominator, .. } => Some(
                Dense::new(denominator).eval(coords[0], coords.get(1).copied().unwrap_or(0.0)),
            ),
            _ => None,
        }
    }

    pub fn eval_params(&self, params: &[f64]) -> f64 {
        let coords: Vec<f64> = self.inputs.iter().map(|c| c.of(params)).collect();
        self.eval_coords(&coords)
    }

    /// All coefficients in file order.
    pub fn coefficients(&self) -> Vec<f64> {
        match &self.form {
            TermForm::Polynomial { monomials } => monomials.iter().map(|m| m.c).collect(),
            TermForm::Rational {
                numerator,
                denominator,
            } => numerator.iter().chain(denominator).map(|m| m.c).collect(),
            TermForm::ExpDiff { a, b, c, d } => vec![*a, *b, *c, *d],
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::Data(format!("term {}: {why}", self.label)));
        if !(1..=2).contains(&self.inputs.len()) {
            return bad(format!("{} inputs", self.inputs.len()));
        }
        let lists: Vec<&Vec<Monomial>> = match &self.form {
            TermForm::Polynomial { monomials } => vec![monomials],
            TermForm::Rational {
                numerator,
                denominator,
            } => vec![numerator, denominator],
            TermForm::ExpDiff { .. } => {
                if self.inputs.len() != 1 {
                    return bad("exp_diff takes one input".into());
                }
                vec![]
            }
        };
        for list in lists {
            if list.is_empty() {
                return bad("empty monomial list".into());
            }
            for m in list {
                if m.p.len() != self.inputs.len() {
                    return bad(format!("monomial powers {:?} do not match inputs", m.p));
                }
                if m.p.iter().any(|&p| p as usize > MAX_DEGREE) {
                    return bad(format!("degree above {MAX_DEGREE}"));
                }
            }
            let mut seen: Vec<&[u32]> = list.iter().map(|m| m.p.as_slice()).collect();
            seen.sort();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return bad("repeated monomial".into());
            }
        }
        if self.coefficients().iter().any(|c| !c.is_finite()) {
            return bad("non-finite coefficient".into());
        }
        Ok(())
    }
}

/// Constant plus ordered fitted terms: the reduced objective for one kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignEquation {
    pub kind: ObjectiveKind,
    pub f0: f64,
    /// In decreasing order of importance.
    pub terms: Vec<FittedTerm>,
}

impl DesignEquation {
    /// The published equation for `kind`.
    pub fn published(kind: ObjectiveKind) -> &'static DesignEquation {
        design_table()
            .equations
            .iter()
            .find(|e| e.kind == kind)
            .expect("embedded table covers every kind")
    }

    /// `f0` plus the first `n_terms` fitted terms, without range checks.
    pub fn eval_truncated(&self, params: &[f64], n_terms: usize) -> f64 {
        self.f0
            + self.terms[..n_terms.min(self.terms.len())]
                .iter()
                .map(|t| t.eval_params(params))
                .sum::<f64>()
    }
}

/// The embedded coefficient file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignTable {
    pub version: u32,
    pub frequency_unit: FrequencyUnit,
    pub log_base: u32,
    #[serde(default)]
    pub notes: Vec<String>,
    pub equations: Vec<DesignEquation>,
}

impl DesignTable {
    pub fn parse(json: &str) -> Result<Self> {
        let table: DesignTable =
            serde_json::from_str(json).map_err(|e| Error::Data(format!("design table: {e}")))?;
        if table.log_base != 10 {
            return Err(Error::Data(format!("unsupported log base {}", table.log_base)));
        }
        for kind in ObjectiveKind::ALL {
            if table.equations.iter().filter(|e| e.kind == kind).count() != 1 {
                return Err(Error::Data(format!("need exactly one equation for {kind}")));
            }
        }
        for eq in &table.equations {
            for t in &eq.terms {
                t.validate()?;
            }
        }
        Ok(table)
    }
}

/// Parsed once on first use.
pub fn design_table() -> &'static DesignTable {
    static TABLE: OnceLock<DesignTable> = OnceLock::new();
    TABLE.get_or_init(|| DesignTable::parse(DATA).expect("embedded design table is valid"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignPrediction {
    /// Cyclic dimensionless frequency `omega_hat / 2 pi`.
    pub value: f64,
    /// The point lies outside the canonical design space.
    pub extrapolated: bool,
}

fn check_params(params: &[f64]) -> Result<()> {
    if params.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            actual: params.len(),
        });
    }
    for (index, &value) in params.iter().enumerate() {
        let ok = if index < 3 {
            value > 0.0 && value.is_finite()
        } else {
            value.is_finite()
        };
        if !ok {
            return Err(Error::OutOfRange { index, value });
        }
    }
    Ok(())
}

/// Evaluates the full design equation at `(E2/E1, rho2/rho1, h2/h1, nu1, nu2)`.
/// Points outside the canonical space are still evaluated, with a warning.
pub fn eval_design_equation(kind: ObjectiveKind, params: &[f64]) -> Result<DesignPrediction> {
    check_params(params)?;
    let extrapolated = !ParameterSpace::phononic().contains(params);
    if extrapolated {
        log::warn!("design equation {kind} extrapolated outside the fitted space at {params:?}");
    }
    let eq = DesignEquation::published(kind);
    Ok(DesignPrediction {
        value: eq.eval_truncated(params, eq.terms.len()),
        extrapolated,
    })
}

/// A sign change or near-zero of a rational denominator on the scan grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DenominatorRoot {
    pub kind: ObjectiveKind,
    pub label: String,
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Scans every rational denominator on a `resolution`-point grid per input
/// over the canonical box and reports grid cells where it vanishes or changes
/// sign. Each finding is logged.
pub fn scan_denominators(resolution: usize) -> Vec<DenominatorRoot> {
    let resolution = resolution.max(2);
    let mut found = Vec::new();
    for eq in &design_table().equations {
        for term in &eq.terms {
            if term.denominator_at(&[0.0, 0.0]).is_none() {
                continue;
            }
            let ranges: Vec<(f64, f64)> = term.inputs.iter().map(|c| c.canonical_range()).collect();
            let at = |idx: &[usize]| -> Vec<f64> {
                idx.iter()
                    .zip(&ranges)
                    .map(|(&k, &(lo, hi))| lo + (hi - lo) * k as f64 / (resolution - 1) as f64)
                    .collect()
            };
            let den = |idx: &[usize]| term.denominator_at(&at(idx)).unwrap();
            let n = ranges.len();
            let total = resolution.pow(n as u32);
            for flat in 0..total {
                let idx: Vec<usize> = (0..n).map(|a| flat / resolution.pow(a as u32) % resolution).collect();
                let v = den(&idx);
                let mut hit = v.abs() < 1e-12;
                for a in 0..n {
                    if idx[a] + 1 < resolution {
                        let mut next = idx.clone();
                        next[a] += 1;
                        hit |= v.signum() != den(&next).signum();
                    }
                }
                if hit {
                    let coords = at(&idx);
                    log::warn!(
                        "denominator of {} {} changes sign near {coords:?} (value {v})",
                        eq.kind,
                        term.label
                    );
                    found.push(DenominatorRoot {
                        kind: eq.kind,
                        label: term.label.clone(),
                        coords,
                        value: v,
                    });
                }
            }
        }
    }
    found
}

/// Converts a cyclic dimensionless frequency to Hz for a cell of total
/// thickness `h` (m) whose first layer has density `rho1` (kg/m^3) and
/// Young's modulus `e1` (Pa).
pub fn to_hertz(value_hat: f64, h: f64, rho1: f64, e1: f64) -> Result<f64> {
    for (name, v) in [("h", h), ("rho1", rho1), ("e1", e1)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidArgument(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(value_hat / crate::phononic::reference_time(h, rho1, e1))
}
