use num_complex::Complex64;

use super::grid::{CMat, GridFunction};
use super::integrate::Eigenpair;
use super::DarbouxError;
use crate::quasidet::{invert_matrix, quasideterminant_expand, BlockMatrix, ComplexMatrices, QuasidetError};

/// Relative pivot cutoff for pointwise inversion of eigenfunction samples.
pub const SINGULAR_TOL: f64 = 1e-12;

fn invert_at(m: &CMat, index: usize, z: f64, what: &'static str) -> Result<CMat, DarbouxError> {
    invert_matrix(m, SINGULAR_TOL).ok_or(DarbouxError::SingularEigenfunction { index, z, what })
}

/// `−4λ Θ + Θ u Θ`.
pub fn sandwich(lambda: Complex64, theta: &CMat, u: &CMat) -> CMat {
    theta * (Complex64::new(-4.0, 0.0) * lambda) + theta * u * theta
}

fn check_grid(u: &GridFunction, f: &GridFunction) -> Result<(), DarbouxError> {
    if u.same_grid(f) {
        Ok(())
    } else {
        Err(DarbouxError::GridMismatch("operands live on different grids".into()))
    }
}

/// `Θ = Φ₁ χ₁⁻¹` pointwise.
pub fn theta(pair: &Eigenpair) -> Result<GridFunction, DarbouxError> {
    let grid = pair.chi.grid();
    GridFunction::par_pointwise(grid, |k| {
        let chi_inv = invert_at(pair.chi.at(k), k, grid.z(k), "chi")?;
        Ok(pair.phi.at(k) * chi_inv)
    })
}

/// One-fold transformation `u[1] = −4λΦ₁χ₁⁻¹ + Φ₁χ₁⁻¹ u Φ₁χ₁⁻¹`.
pub fn darboux_once(u: &GridFunction, pair: &Eigenpair) -> Result<GridFunction, DarbouxError> {
    check_grid(u, &pair.chi)?;
    let grid = u.grid();
    GridFunction::par_pointwise(grid, |k| {
        let chi_inv = invert_at(pair.chi.at(k), k, grid.z(k), "chi")?;
        let th = pair.phi.at(k) * chi_inv;
        Ok(sandwich(pair.lambda, &th, u.at(k)))
    })
}

/// `χ[1] = λΦ − λ₁Φ₁χ₁⁻¹χ`, `Φ[1] = λχ − λ₁χ₁Φ₁⁻¹Φ`.
pub fn dress_eigenfunctions(
    chi: &GridFunction,
    phi: &GridFunction,
    lambda: Complex64,
    pair1: &Eigenpair,
) -> Result<(GridFunction, GridFunction), DarbouxError> {
    check_grid(chi, &pair1.chi)?;
    check_grid(phi, &pair1.chi)?;
    let grid = chi.grid();
    let l1 = pair1.lambda;
    let new_chi = GridFunction::par_pointwise(grid, |k| {
        let chi1_inv = invert_at(pair1.chi.at(k), k, grid.z(k), "chi")?;
        Ok(phi.at(k) * lambda - pair1.phi.at(k) * chi1_inv * chi.at(k) * l1)
    })?;
    let new_phi = GridFunction::par_pointwise(grid, |k| {
        let phi1_inv = invert_at(pair1.phi.at(k), k, grid.z(k), "phi")?;
        Ok(chi.at(k) * lambda - pair1.chi.at(k) * phi1_inv * phi.at(k) * l1)
    })?;
    Ok((new_chi, new_phi))
}

fn dress_pair(pair: &Eigenpair, by: &Eigenpair) -> Result<Eigenpair, DarbouxError> {
    let (chi, phi) = dress_eigenfunctions(&pair.chi, &pair.phi, pair.lambda, by)?;
    Eigenpair::new(pair.lambda, chi, phi)
}

/// Seed, eigenpairs and their successive dressings.
///
/// `levels[j][m]` is eigenpair `j + m` dressed by the first `j` pairs, so
/// `levels[j][0]` is the pair consumed by step `j + 1`.
#[derive(Debug, Clone)]
pub struct DressingChain {
    seed: GridFunction,
    levels: Vec<Vec<Eigenpair>>,
}

impl DressingChain {
    pub fn new(seed: GridFunction, pairs: Vec<Eigenpair>) -> Result<Self, DarbouxError> {
        for (k, p) in pairs.iter().enumerate() {
            check_grid(&seed, &p.chi)?;
            if pairs[..k].iter().any(|q| q.lambda == p.lambda) {
                return Err(DarbouxError::DuplicateLambda { index: k });
            }
        }
        Ok(DressingChain {
            seed,
            levels: vec![pairs],
        })
    }

    /// Builds the chain and dresses it deep enough for a `depth`-fold transformation.
    pub fn build(seed: GridFunction, pairs: Vec<Eigenpair>, depth: usize) -> Result<Self, DarbouxError> {
        let mut chain = Self::new(seed, pairs)?;
        while chain.levels.len() < depth {
            chain.advance()?;
        }
        Ok(chain)
    }

    /// Computes the next dressing level from the last one.
    pub fn advance(&mut self) -> Result<(), DarbouxError> {
        let last = self.levels.last().expect("level 0 exists");
        if last.len() < 2 {
            return Err(DarbouxError::LevelOrderViolation {
                requested: self.levels.len() + 1,
                available: self.levels.len(),
            });
        }
        let pivot = &last[0];
        let next = last[1..]
            .iter()
            .map(|p| dress_pair(p, pivot))
            .collect::<Result<Vec<_>, _>>()?;
        self.levels.push(next);
        Ok(())
    }

    pub fn seed(&self) -> &GridFunction {
        &self.seed
    }

    pub fn eigenpairs(&self) -> &[Eigenpair] {
        &self.levels[0]
    }

    /// Number of transformation steps the dressed levels support.
    pub fn depth(&self) -> usize {
        self.levels.iter().filter(|l| !l.is_empty()).count()
    }

    /// Pair `j + m` after dressing by the first `j` pairs.
    pub fn dressed(&self, level: usize, m: usize) -> Option<&Eigenpair> {
        self.levels.get(level).and_then(|l| l.get(m))
    }

    /// The pair consumed by step `k + 1`.
    pub fn pivot(&self, k: usize) -> Result<&Eigenpair, DarbouxError> {
        self.dressed(k, 0).ok_or(DarbouxError::LevelOrderViolation {
            requested: k + 1,
            available: self.depth(),
        })
    }
}

/// Iterates `u[k] = −4λ_k Θ_k + Θ_k u[k−1] Θ_k` with `Θ_k` taken from the
/// dressed pivot of level `k − 1`. `N = 1` is exactly [`darboux_once`].
pub fn darboux_nfold(chain: &DressingChain, n: usize) -> Result<GridFunction, DarbouxError> {
    if n > chain.depth() {
        return Err(DarbouxError::LevelOrderViolation {
            requested: n,
            available: chain.depth(),
        });
    }
    let mut u = chain.seed().clone();
    for k in 0..n {
        u = darboux_once(&u, chain.pivot(k)?)?;
    }
    Ok(u)
}

/// Which eigenfunction sits in the even rows of an Ω array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    Chi,
    Phi,
}

/// The `k×k` array for level `k` at grid index `t`: row `m` holds
/// `λ_j^m χ_j` or `λ_j^m Φ_j` alternately (starting with `kind`), columns run
/// over pairs `k−1, …, 1, k` so the boxed entry is bottom-right.
pub fn omega_array(pairs: &[Eigenpair], k: usize, t: usize, kind: OmegaKind) -> BlockMatrix<CMat> {
    let mut cols: Vec<usize> = (0..k - 1).rev().collect();
    cols.push(k - 1);
    BlockMatrix::from_fn(k, |m, c| {
        let p = &pairs[cols[c]];
        let even = m % 2 == 0;
        let f = match (kind, even) {
            (OmegaKind::Chi, true) | (OmegaKind::Phi, false) => &p.chi,
            _ => &p.phi,
        };
        f.at(t) * p.lambda.powu(m as u32)
    })
}

/// `Ω_k` at every grid point, as the boxed quasideterminant of [`omega_array`].
pub fn omega(pairs: &[Eigenpair], k: usize, kind: OmegaKind) -> Result<GridFunction, DarbouxError> {
    let grid = pairs[0].chi.grid();
    let carrier = ComplexMatrices::new(pairs[0].chi.dim()).with_tolerance(SINGULAR_TOL);
    GridFunction::par_pointwise(grid, |t| {
        let m = omega_array(pairs, k, t, kind);
        quasideterminant_expand(&carrier, &m, k - 1, k - 1).map_err(|e| match e {
            QuasidetError::NonInvertibleMinor { row, col } => DarbouxError::NonInvertibleMinor {
                index: t,
                z: grid.z(t),
                row,
                col,
            },
            other => DarbouxError::Config(other.to_string()),
        })
    })
}

/// `u[N]` assembled from `Θ_k = Ω^φ_k (Ω^χ_k)⁻¹`, each `Ω` a quasideterminant of
/// the undressed eigenfunctions.
pub fn quasidet_solution_form(chain: &DressingChain, n: usize) -> Result<GridFunction, DarbouxError> {
    let pairs = chain.eigenpairs();
    if n > pairs.len() {
        return Err(DarbouxError::LevelOrderViolation {
            requested: n,
            available: pairs.len(),
        });
    }
    let grid = chain.seed().grid();
    let mut u = chain.seed().clone();
    for k in 1..=n {
        let om_chi = omega(pairs, k, OmegaKind::Chi)?;
        let om_phi = omega(pairs, k, OmegaKind::Phi)?;
        let lambda = pairs[k - 1].lambda;
        u = GridFunction::par_pointwise(grid, |t| {
            let inv = invert_at(om_chi.at(t), t, grid.z(t), "omega_chi")?;
            Ok(sandwich(lambda, &(om_phi.at(t) * inv), u.at(t)))
        })?;
    }
    Ok(u)
}
