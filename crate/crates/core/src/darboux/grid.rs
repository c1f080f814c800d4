use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::DarbouxError;

pub type CMat = DMatrix<Complex64>;

/// Uniform grid `z_k = z0 + k h`, `k = 0..count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub z0: f64,
    pub h: f64,
    pub count: usize,
}

impl Grid {
    pub fn new(z0: f64, h: f64, count: usize) -> Result<Self, DarbouxError> {
        if !(h > 0.0 && h.is_finite() && z0.is_finite()) {
            return Err(DarbouxError::Config(format!("grid step must be positive and finite, got {h}")));
        }
        if count < 2 {
            return Err(DarbouxError::Config(format!("grid needs at least 2 points, got {count}")));
        }
        Ok(Grid { z0, h, count })
    }

    /// Grid covering `[a, b]` with step `h` (the last point is `a + (count−1) h`).
    pub fn spanning(a: f64, b: f64, h: f64) -> Result<Self, DarbouxError> {
        let steps = ((b - a) / h).round() as usize;
        Self::new(a, h, steps + 1)
    }

    pub fn z(&self, k: usize) -> f64 {
        self.z0 + k as f64 * self.h
    }
}

/// A `d×d` complex matrix sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    samples: Vec<CMat>,
}

pub fn is_finite(m: &CMat) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

impl GridFunction {
    pub fn new(grid: Grid, samples: Vec<CMat>) -> Result<Self, DarbouxError> {
        if samples.len() != grid.count {
            return Err(DarbouxError::GridMismatch(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.count
            )));
        }
        let d = samples[0].nrows();
        if d == 0 {
            return Err(DarbouxError::Config("matrix dimension must be at least 1".into()));
        }
        for (k, s) in samples.iter().enumerate() {
            if s.nrows() != d || s.ncols() != d {
                return Err(DarbouxError::GridMismatch(format!("sample {k} is not {d}x{d}")));
            }
            if !is_finite(s) {
                return Err(DarbouxError::Config(format!("sample {k} has non-finite entries")));
            }
        }
        Ok(GridFunction { grid, samples })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> CMat) -> Result<Self, DarbouxError> {
        Self::new(grid, (0..grid.count).map(|k| f(grid.z(k))).collect())
    }

    pub fn constant(grid: Grid, m: CMat) -> Self {
        GridFunction {
            grid,
            samples: vec![m; grid.count],
        }
    }

    pub fn zeros(grid: Grid, d: usize) -> Self {
        Self::constant(grid, CMat::zeros(d, d))
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn dim(&self) -> usize {
        self.samples[0].nrows()
    }

    pub fn count(&self) -> usize {
        self.samples.len()
    }

    pub fn z(&self, k: usize) -> f64 {
        self.grid.z(k)
    }

    pub fn samples(&self) -> &[CMat] {
        &self.samples
    }

    pub fn at(&self, k: usize) -> &CMat {
        &self.samples[k]
    }

    pub fn same_grid(&self, o: &GridFunction) -> bool {
        self.grid == o.grid && self.dim() == o.dim()
    }

    pub fn max_distance(&self, o: &GridFunction) -> f64 {
        self.samples
            .iter()
            .zip(&o.samples)
            .map(|(a, b)| crate::quasidet::max_abs(&(a - b)))
            .fold(0.0, f64::max)
    }

    pub fn max_norm(&self) -> f64 {
        self.samples.iter().map(crate::quasidet::max_abs).fold(0.0, f64::max)
    }

    /// Samples from a pointwise map evaluated in parallel. The first failing
    /// index (in grid order) determines the error, so results do not depend
    /// on scheduling.
    pub(crate) fn par_pointwise(
        grid: Grid,
        f: impl Fn(usize) -> Result<CMat, DarbouxError> + Sync + Send,
    ) -> Result<GridFunction, DarbouxError> {
        let results: Vec<Result<CMat, DarbouxError>> =
            (0..grid.count).into_par_iter().map(f).collect();
        let samples = results.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok(GridFunction { grid, samples })
    }
}

/// `[re, im]` or a bare real number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexSpec {
    Pair([f64; 2]),
    Real(f64),
}

impl ComplexSpec {
    pub fn value(self) -> Complex64 {
        match self {
            ComplexSpec::Pair([re, im]) => Complex64::new(re, im),
            ComplexSpec::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

impl From<Complex64> for ComplexSpec {
    fn from(z: Complex64) -> Self {
        ComplexSpec::Pair([z.re, z.im])
    }
}

pub fn matrix_from_spec(rows: &[Vec<ComplexSpec>], d: usize) -> Result<CMat, DarbouxError> {
    if rows.len() != d || rows.iter().any(|r| r.len() != d) {
        return Err(DarbouxError::Config(format!("expected a {d}x{d} matrix")));
    }
    Ok(CMat::from_fn(d, d, |i, j| rows[i][j].value()))
}

pub fn matrix_to_json(m: &CMat) -> serde_json::Value {
    crate::quasidet::complex_matrix_json(m)
}

/// Frobenius norm.
pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
