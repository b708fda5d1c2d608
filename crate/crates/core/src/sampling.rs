//! Seeded Latin Hypercube designs on the unit hypercube and their mapping to
//! a physical parameter space.
//!
//! A [`SampleSet`] holds two independent LHS matrices: the original design and
//! the complementary design used by the freeze-and-resample estimators. Both
//! come from one ChaCha8 seed on distinct streams, so a single integer
//! reproduces an entire experiment.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Name of the generator recorded in output metadata.
pub const RNG_ALGORITHM: &str = "ChaCha8 (rand_chacha 0.9, seed_from_u64, stream per matrix)";

const ORIGINAL_STREAM: u64 = 0;
const COMPLEMENTARY_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log10,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterDef {
    pub name: String,
    pub lower: f64,
    pub upper: f64,
    pub scale: Scale,
}

impl ParameterDef {
    pub fn new(name: impl Into<String>, lower: f64, upper: f64, scale: Scale) -> Result<Self> {
        let def = Self {
            name: name.into(),
            lower,
            upper,
            scale,
        };
        def.validate()?;
        Ok(def)
    }

    fn validate(&self) -> Result<()> {
        if !(self.lower.is_finite() && self.upper.is_finite()) || self.lower >= self.upper {
            return Err(Error::InvalidArgument(format!(
                "parameter {:?}: need finite lower < upper, got [{}, {}]",
                self.name, self.lower, self.upper
            )));
        }
        if self.scale == Scale::Log10 && self.lower <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "parameter {:?}: log10 scale needs lower > 0, got {}",
                self.name, self.lower
            )));
        }
        Ok(())
    }

    /// Maps a unit coordinate onto this axis. No range check.
    pub fn map(&self, u: f64) -> f64 {
        match self.scale {
            Scale::Linear => self.lower + u * (self.upper - self.lower),
            Scale::Log10 => {
                let (a, b) = (self.lower.log10(), self.upper.log10());
                10f64.powf(a + u * (b - a))
            }
        }
    }

    /// Inverse of [`ParameterDef::map`].
    pub fn unmap(&self, x: f64) -> f64 {
        match self.scale {
            Scale::Linear => rescale_affine(x, self.lower, self.upper),
            Scale::Log10 => rescale_affine(x.log10(), self.lower.log10(), self.upper.log10()),
        }
    }
}

/// Ordered list of independent, uniformly distributed design parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace")]
pub struct ParameterSpace {
    dims: Vec<ParameterDef>,
}

#[derive(Deserialize)]
struct RawSpace {
    dims: Vec<ParameterDef>,
}

impl TryFrom<RawSpace> for ParameterSpace {
    type Error = Error;

    fn try_from(raw: RawSpace) -> Result<Self> {
        ParameterSpace::new(raw.dims)
    }
}

impl ParameterSpace {
    pub fn new(dims: Vec<ParameterDef>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("parameter space has no dimensions".into()));
        }
        for d in &dims {
            d.validate()?;
        }
        Ok(Self { dims })
    }

    /// The two-layer phononic design space: (E2/E1, rho2/rho1, h2/h1, nu1, nu2).
    pub fn phononic() -> Self {
        let nu_max = crate::phononic::NU_MAX;
        Self::new(vec![
            ParameterDef::new("E2/E1", 10.0, 10000.0, Scale::Log10).unwrap(),
            ParameterDef::new("rho2/rho1", 1.0, 1000.0, Scale::Log10).unwrap(),
            ParameterDef::new("h2/h1", 0.11, 9.0, Scale::Log10).unwrap(),
            ParameterDef::new("nu1", 0.0, nu_max, Scale::Linear).unwrap(),
            ParameterDef::new("nu2", 0.0, nu_max, Scale::Linear).unwrap(),
        ])
        .unwrap()
    }

    pub fn dims(&self) -> &[ParameterDef] {
        &self.dims
    }

    pub fn n_dims(&self) -> usize {
        self.dims.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.dims.iter().map(|d| d.name.clone()).collect()
    }

    /// Maps a unit-hypercube point into physical coordinates.
    pub fn map_to_space(&self, u: &[f64]) -> Result<Vec<f64>> {
        if u.len() != self.n_dims() {
            return Err(Error::DimensionMismatch {
                expected: self.n_dims(),
                actual: u.len(),
            });
        }
        u.iter()
            .zip(&self.dims)
            .enumerate()
            .map(|(index, (&value, dim))| {
                if (0.0..=1.0).contains(&value) {
                    Ok(dim.map(value))
                } else {
                    Err(Error::OutOfRange { index, value })
                }
            })
            .collect()
    }

    /// Whether a physical point lies inside the box (inclusive).
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.n_dims()
            && x
                .iter()
                .zip(&self.dims)
                .all(|(&v, d)| v >= d.lower && v <= d.upper)
    }
}

/// Free-function form of [`ParameterSpace::map_to_space`].
pub fn map_to_space(u: &[f64], space: &ParameterSpace) -> Result<Vec<f64>> {
    space.map_to_space(u)
}

/// Affine map of `[a, b]` onto `[0, 1]`. Extrapolates outside the interval.
pub fn rescale_affine(x: f64, a: f64, b: f64) -> f64 {
    (x - a) / (b - a)
}

/// Row-major matrix of unit-hypercube points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitMatrix {
    n_rows: usize,
    n_cols: usize,
    data: Vec<f64>,
}

impl UnitMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.data[m * self.n_cols..(m + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_cols)
    }

    pub fn column(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows().map(move |r| r[k])
    }

    pub fn get(&self, m: usize, k: usize) -> f64 {
        self.data[m * self.n_cols + k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Draws one `n_samples x n_dims` Latin Hypercube design from `rng`.
///
/// Each column is an independent random permutation of the strata with a
/// uniform jitter inside every stratum.
pub fn lhs_matrix<R: Rng + ?Sized>(n_dims: usize, n_samples: usize, rng: &mut R) -> UnitMatrix {
    let n = n_samples as f64;
    let mut data = vec![0.0; n_samples * n_dims];
    let mut strata: Vec<usize> = (0..n_samples).collect();
    for k in 0..n_dims {
        strata.shuffle(rng);
        for (m, &s) in strata.iter().enumerate() {
            let jitter: f64 = rng.random();
            let mut v = (s as f64 + jitter) / n;
            // (s + jitter)/n can round up onto the next stratum edge.
            if (v * n).floor() as usize != s {
                v = s as f64 / n;
            }
            data[m * n_dims + k] = v;
        }
    }
    UnitMatrix {
        n_rows: n_samples,
        n_cols: n_dims,
        data,
    }
}

/// Paired original/complementary LHS designs generated from one seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub n_dims: usize,
    pub n_samples: usize,
    pub original: UnitMatrix,
    pub complementary: UnitMatrix,
    pub seed: u64,
}

impl SampleSet {
    pub fn generate(n_dims: usize, n_samples: usize, seed: u64) -> Result<Self> {
        if n_dims < 1 {
            return Err(Error::InvalidArgument("n_dims must be at least 1".into()));
        }
        if n_samples < 2 {
            return Err(Error::InvalidArgument("n_samples must be at least 2".into()));
        }
        let stream = |id| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(id);
            rng
        };
        Ok(Self {
            n_dims,
            n_samples,
            original: lhs_matrix(n_dims, n_samples, &mut stream(ORIGINAL_STREAM)),
            complementary: lhs_matrix(n_dims, n_samples, &mut stream(COMPLEMENTARY_STREAM)),
            seed,
        })
    }
}

/// Seeded LHS sample pair; see [`SampleSet`].
pub fn lhs_sample(n_dims: usize, n_samples: usize, seed: u64) -> Result<SampleSet> {
    SampleSet::generate(n_dims, n_samples, seed)
}

/// Generator for auxiliary designs (e.g. inner loops of conditional means),
/// kept on streams disjoint from the two matrices of a [`SampleSet`].
pub(crate) fn auxiliary_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(2 + stream);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn assert_stratified(m: &UnitMatrix) {
        let n = m.n_rows();
        for k in 0..m.n_cols() {
            let mut hits = vec![0usize; n];
            for v in m.column(k) {
                assert!((0.0..1.0).contains(&v));
                hits[(v * n as f64).floor() as usize] += 1;
            }
            assert!(hits.iter().all(|&h| h == 1), "column {k} not stratified");
        }
    }

    #[test]
    fn two_samples_split_the_unit_interval() {
        for seed in 0..20 {
            let s = lhs_sample(1, 2, seed).unwrap();
            for m in [&s.original, &s.complementary] {
                let mut v: Vec<f64> = m.column(0).collect();
                v.sort_by(f64::total_cmp);
                assert!(v[0] < 0.5 && v[1] >= 0.5);
            }
        }
    }

    #[test]
    fn same_seed_reproduces_both_matrices() {
        let a = lhs_sample(3, 100, 42).unwrap();
        let b = lhs_sample(3, 100, 42).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.original, a.complementary);
        assert_ne!(a, lhs_sample(3, 100, 43).unwrap());
    }

    #[test]
    fn column_means_near_half() {
        let s = lhs_sample(5, 2000, 7).unwrap();
        for m in [&s.original, &s.complementary] {
            for k in 0..5 {
                let mean = m.column(k).sum::<f64>() / 2000.0;
                assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
            }
        }
    }

    #[test]
    fn rejects_degenerate_sizes() {
        assert!(matches!(lhs_sample(0, 10, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(lhs_sample(2, 1, 1), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn canonical_space_corners() {
        let space = ParameterSpace::phononic();
        let lo = space.map_to_space(&[0.0; 5]).unwrap();
        let hi = space.map_to_space(&[1.0; 5]).unwrap();
        let expect_lo = [10.0, 1.0, 0.11, 0.0, 0.0];
        let expect_hi = [10000.0, 1000.0, 9.0, 0.463, 0.463];
        for k in 0..5 {
            assert_relative_eq!(lo[k], expect_lo[k], max_relative = 1e-12);
            assert_relative_eq!(hi[k], expect_hi[k], max_relative = 1e-12);
        }
        let mid = space.map_to_space(&[0.5, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_relative_eq!(mid[0], 10f64.powf(2.5), max_relative = 1e-12);
        assert_relative_eq!(mid[0], 316.227766, epsilon = 1e-5);
    }

    #[test]
    fn map_rejects_bad_points() {
        let space = ParameterSpace::phononic();
        assert_eq!(
            space.map_to_space(&[0.0, 1.2, 0.0, 0.0, 0.0]),
            Err(Error::OutOfRange {
                index: 1,
                value: 1.2
            })
        );
        assert!(matches!(
            space.map_to_space(&[0.5; 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rescale_affine_endpoints() {
        assert_eq!(rescale_affine(-4.0, -4.0, 4.0), 0.0);
        assert_eq!(rescale_affine(4.0, -4.0, 4.0), 1.0);
        assert_eq!(rescale_affine(0.0, -4.0, 4.0), 0.5);
        assert_eq!(rescale_affine(8.0, -4.0, 4.0), 1.5);
    }

    #[test]
    fn invalid_definitions_rejected() {
        assert!(ParameterDef::new("a", 1.0, 1.0, Scale::Linear).is_err());
        assert!(ParameterDef::new("a", 0.0, 1.0, Scale::Log10).is_err());
        assert!(ParameterSpace::new(vec![]).is_err());
        let json = r#"{"dims":[{"name":"x","lower":2.0,"upper":1.0,"scale":"linear"}]}"#;
        assert!(serde_json::from_str::<ParameterSpace>(json).is_err());
    }

    #[test]
    fn space_json_roundtrip() {
        let space = ParameterSpace::phononic();
        let text = serde_json::to_string(&space).unwrap();
        assert!(text.contains(r#""scale":"log10""#));
        let back: ParameterSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, space);
    }

    proptest! {
        #[test]
        fn lhs_is_stratified(n_dims in 1usize..6, n in 2usize..300, seed in any::<u64>()) {
            let s = lhs_sample(n_dims, n, seed).unwrap();
            assert_stratified(&s.original);
            assert_stratified(&s.complementary);
        }

        #[test]
        fn map_is_monotone(k in 0usize..5, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            prop_assume!((a - b).abs() > 1e-9);
            let space = ParameterSpace::phononic();
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let mut u = [0.3; 5];
            u[k] = lo;
            let x_lo = space.map_to_space(&u).unwrap()[k];
            u[k] = hi;
            let x_hi = space.map_to_space(&u).unwrap()[k];
            prop_assert!(x_lo < x_hi);
        }

        #[test]
        fn linear_axis_round_trips(u in 0.0f64..=1.0) {
            let def = ParameterDef::new("nu", 0.0, 0.463, Scale::Linear).unwrap();
            prop_assert!((rescale_affine(def.map(u), def.lower, def.upper) - u).abs() < 1e-12);
            let log = ParameterDef::new("r", 0.11, 9.0, Scale::Log10).unwrap();
            prop_assert!((log.unmap(log.map(u)) - u).abs() < 1e-12);
        }
    }
}
