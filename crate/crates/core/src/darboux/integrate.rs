use num_complex::Complex64;

use super::grid::{is_finite, CMat, GridFunction};
use super::DarbouxError;

/// Solutions `χ, Φ` of the linear system at one spectral value.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub lambda: Complex64,
    pub chi: GridFunction,
    pub phi: GridFunction,
}

impl Eigenpair {
    pub fn new(lambda: Complex64, chi: GridFunction, phi: GridFunction) -> Result<Self, DarbouxError> {
        if !chi.same_grid(&phi) {
            return Err(DarbouxError::GridMismatch("chi and phi live on different grids".into()));
        }
        Ok(Eigenpair { lambda, chi, phi })
    }
}

/// Lagrange interpolation of `u` at `z0 + (k + ½) h` from the (up to) four
/// nearest samples.
fn midpoint_value(u: &GridFunction, k: usize) -> CMat {
    let n = u.count();
    let width = n.min(4);
    let start = k.saturating_sub(1).min(n - width);
    let t = k as f64 + 0.5;
    let mut acc = CMat::zeros(u.dim(), u.dim());
    for a in start..start + width {
        let mut w = 1.0;
        for b in start..start + width {
            if a != b {
                w *= (t - b as f64) / (a as f64 - b as f64);
            }
        }
        acc += u.at(a) * Complex64::new(w, 0.0);
    }
    acc
}

/// `χ′ = (−2iλ + u)χ + uΦ`, `Φ′ = uχ + (2iλ + u)Φ`.
fn rhs(lambda: Complex64, u: &CMat, chi: &CMat, phi: &CMat) -> (CMat, CMat) {
    let two_i_lambda = Complex64::new(0.0, 2.0) * lambda;
    let u_chi = u * chi;
    let u_phi = u * phi;
    (
        chi * (-two_i_lambda) + &u_chi + &u_phi,
        &u_chi + phi * two_i_lambda + u_phi,
    )
}

/// Classical four-stage Runge–Kutta over the grid of `u`.
pub fn integrate_linear_system(
    u: &GridFunction,
    lambda: Complex64,
    init_chi: &CMat,
    init_phi: &CMat,
) -> Result<Eigenpair, DarbouxError> {
    let d = u.dim();
    if init_chi.shape() != (d, d) || init_phi.shape() != (d, d) {
        return Err(DarbouxError::Config(format!("initial conditions must be {d}x{d}")));
    }
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(DarbouxError::Config("spectral value must be finite".into()));
    }
    let grid = u.grid();
    let h = Complex64::new(grid.h, 0.0);
    let half = Complex64::new(0.5, 0.0);
    let mut chis = Vec::with_capacity(grid.count);
    let mut phis = Vec::with_capacity(grid.count);
    let (mut chi, mut phi) = (init_chi.clone(), init_phi.clone());
    chis.push(chi.clone());
    phis.push(phi.clone());
    for k in 0..grid.count - 1 {
        let (u0, um, u1) = (u.at(k), midpoint_value(u, k), u.at(k + 1));
        let (k1c, k1p) = rhs(lambda, u0, &chi, &phi);
        let (k2c, k2p) = rhs(lambda, &um, &(&chi + &k1c * (h * half)), &(&phi + &k1p * (h * half)));
        let (k3c, k3p) = rhs(lambda, &um, &(&chi + &k2c * (h * half)), &(&phi + &k2p * (h * half)));
        let (k4c, k4p) = rhs(lambda, u1, &(&chi + &k3c * h), &(&phi + &k3p * h));
        let sixth = h / Complex64::new(6.0, 0.0);
        let two = Complex64::new(2.0, 0.0);
        chi += (k1c + k2c * two + k3c * two + k4c) * sixth;
        phi += (k1p + k2p * two + k3p * two + k4p) * sixth;
        if !is_finite(&chi) || !is_finite(&phi) {
            return Err(DarbouxError::Divergence { z: grid.z(k + 1) });
        }
        chis.push(chi.clone());
        phis.push(phi.clone());
    }
    Eigenpair::new(lambda, GridFunction::new(grid, chis)?, GridFunction::new(grid, phis)?)
}

/// Exact eigenpair for `u ≡ 0`: `χ = e^{−2iλ(z−z0)} χ0`, `Φ = e^{2iλ(z−z0)} Φ0`.
pub fn vacuum_eigenpair(
    grid: super::Grid,
    lambda: Complex64,
    init_chi: &CMat,
    init_phi: &CMat,
) -> Result<Eigenpair, DarbouxError> {
    let phase = |sign: f64, z: f64| (Complex64::new(0.0, 2.0 * sign) * lambda * (z - grid.z0)).exp();
    Eigenpair::new(
        lambda,
        GridFunction::from_fn(grid, |z| init_chi * phase(-1.0, z))?,
        GridFunction::from_fn(grid, |z| init_phi * phase(1.0, z))?,
    )
}
