use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{frobenius, CMat, GridFunction};
use super::integrate::Eigenpair;
use super::transform::SINGULAR_TOL;
use super::DarbouxError;
use crate::quasidet::invert_matrix;

/// Finite-difference order for first derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FdOrder {
    /// Three-point centered, three-point one-sided at the ends.
    #[serde(rename = "2")]
    Second,
    /// Five-point centered, five-point one-sided near the ends.
    #[default]
    #[serde(rename = "4")]
    Fourth,
}

impl FdOrder {
    pub fn min_points(self) -> usize {
        match self {
            FdOrder::Second => 3,
            FdOrder::Fourth => 5,
        }
    }

    pub fn as_u32(self) -> u32 {
        match self {
            FdOrder::Second => 2,
            FdOrder::Fourth => 4,
        }
    }
}

fn combo(samples: &[CMat], idx: &[usize], w: &[f64], scale: f64) -> CMat {
    let mut acc = CMat::zeros(samples[0].nrows(), samples[0].ncols());
    for (&i, &wi) in idx.iter().zip(w) {
        acc += &samples[i] * Complex64::new(wi * scale, 0.0);
    }
    acc
}

/// First derivative on every grid point.
pub fn derivative(samples: &[CMat], h: f64, order: FdOrder) -> Result<Vec<CMat>, DarbouxError> {
    let n = samples.len();
    if n < order.min_points() {
        return Err(DarbouxError::Config(format!(
            "order-{} differences need at least {} points",
            order.as_u32(),
            order.min_points()
        )));
    }
    let out = (0..n)
        .map(|k| match order {
            FdOrder::Second => {
                let s = 1.0 / (2.0 * h);
                if k == 0 {
                    combo(samples, &[0, 1, 2], &[-3.0, 4.0, -1.0], s)
                } else if k == n - 1 {
                    combo(samples, &[n - 1, n - 2, n - 3], &[3.0, -4.0, 1.0], s)
                } else {
                    combo(samples, &[k + 1, k - 1], &[1.0, -1.0], s)
                }
            }
            FdOrder::Fourth => {
                let s = 1.0 / (12.0 * h);
                let fwd0 = [-25.0, 48.0, -36.0, 16.0, -3.0];
                let fwd1 = [-3.0, -10.0, 18.0, -6.0, 1.0];
                let neg = |w: [f64; 5]| w.map(|x| -x);
                match k {
                    0 => combo(samples, &[0, 1, 2, 3, 4], &fwd0, s),
                    1 => combo(samples, &[0, 1, 2, 3, 4], &fwd1, s),
                    _ if k == n - 1 => combo(samples, &[n - 1, n - 2, n - 3, n - 4, n - 5], &neg(fwd0), s),
                    _ if k == n - 2 => combo(samples, &[n - 1, n - 2, n - 3, n - 4, n - 5], &neg(fwd1), s),
                    _ => combo(samples, &[k - 2, k - 1, k + 1, k + 2], &[1.0, -8.0, 8.0, -1.0], s),
                }
            }
        })
        .collect();
    Ok(out)
}

/// `‖Δ′ − (−4iλΔ + u + [u, Δ] − ΔuΔ)‖_F` per grid point with `Δ = χΦ⁻¹`.
pub fn riccati_residual_numeric(
    pair: &Eigenpair,
    u: &GridFunction,
    order: FdOrder,
) -> Result<Vec<f64>, DarbouxError> {
    if !u.same_grid(&pair.chi) {
        return Err(DarbouxError::GridMismatch("eigenpair and potential grids differ".into()));
    }
    let grid = u.grid();
    let delta = GridFunction::par_pointwise(grid, |k| {
        let phi_inv = invert_matrix(pair.phi.at(k), SINGULAR_TOL).ok_or(
            DarbouxError::SingularEigenfunction {
                index: k,
                z: grid.z(k),
                what: "phi",
            },
        )?;
        Ok(pair.chi.at(k) * phi_inv)
    })?;
    let d_delta = derivative(delta.samples(), grid.h, order)?;
    let m4il = Complex64::new(0.0, -4.0) * pair.lambda;
    Ok((0..grid.count)
        .map(|k| {
            let (dl, uk) = (delta.at(k), u.at(k));
            let rhs = dl * m4il + uk + (uk * dl - dl * uk) - dl * uk * dl;
            frobenius(&(&d_delta[k] - rhs))
        })
        .collect())
}

/// `‖u″ − 2u³ + 4zu − c I‖_F` on interior points (second-order central `u″`).
pub fn qpii_residual_numeric(u: &GridFunction, c: Complex64) -> Result<Vec<f64>, DarbouxError> {
    let n = u.count();
    if n < 5 {
        return Err(DarbouxError::Config("second-difference residual needs at least 5 points".into()));
    }
    let h2 = u.grid().h * u.grid().h;
    let d = u.dim();
    let ci = CMat::identity(d, d) * c;
    Ok((1..n - 1)
        .map(|k| {
            let uk = u.at(k);
            let upp = (u.at(k + 1) - uk * Complex64::new(2.0, 0.0) + u.at(k - 1)) / Complex64::new(h2, 0.0);
            let z = Complex64::new(u.z(k), 0.0);
            let r = upp - uk * uk * uk * Complex64::new(2.0, 0.0) + uk * (z * 4.0) - &ci;
            frobenius(&r)
        })
        .collect())
}
