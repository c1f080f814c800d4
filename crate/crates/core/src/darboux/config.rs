use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{matrix_from_spec, CMat, ComplexSpec, Grid, GridFunction};
use super::residual::FdOrder;
use super::DarbouxError;

/// `"vacuum"` or `{"file": "seed.json"}` (a JSON array of `d×d` samples,
/// resolved relative to the config file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Preset(String),
    File { file: PathBuf },
}

impl Default for SeedSpec {
    fn default() -> Self {
        SeedSpec::Preset("vacuum".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EigenpairSpec {
    pub lambda: ComplexSpec,
    /// Defaults to the identity.
    #[serde(default)]
    pub init_chi: Option<Vec<Vec<ComplexSpec>>>,
    #[serde(default)]
    pub init_phi: Option<Vec<Vec<ComplexSpec>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_consistency")]
    pub consistency: f64,
    #[serde(default = "default_riccati")]
    pub riccati: f64,
}

fn default_consistency() -> f64 {
    1e-8
}

fn default_riccati() -> f64 {
    1e-6
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            consistency: default_consistency(),
            riccati: default_riccati(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DarbouxConfig {
    pub dim: usize,
    pub grid: Grid,
    #[serde(default)]
    pub seed: SeedSpec,
    #[serde(default = "zero_c")]
    pub c: ComplexSpec,
    pub eigenpairs: Vec<EigenpairSpec>,
    /// Number of transformation steps; defaults to the number of eigenpairs.
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub fd_order: FdOrder,
    /// Include the final `u[N]` samples in the report.
    #[serde(default)]
    pub emit_samples: bool,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

fn zero_c() -> ComplexSpec {
    ComplexSpec::Real(0.0)
}

impl DarbouxConfig {
    pub fn from_json(text: &str, base_dir: Option<&Path>) -> Result<Self, DarbouxError> {
        let mut cfg: DarbouxConfig =
            serde_json::from_str(text).map_err(|e| DarbouxError::Config(e.to_string()))?;
        cfg.base_dir = base_dir.map(Path::to_path_buf);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, DarbouxError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DarbouxError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, path.parent())
    }

    pub fn validate(&self) -> Result<(), DarbouxError> {
        if self.dim == 0 {
            return Err(DarbouxError::Config("dim must be at least 1".into()));
        }
        Grid::new(self.grid.z0, self.grid.h, self.grid.count)?;
        if self.eigenpairs.is_empty() {
            return Err(DarbouxError::Config("at least one eigenpair is required".into()));
        }
        let lambdas = self.lambdas();
        for (k, l) in lambdas.iter().enumerate() {
            if lambdas[..k].contains(l) {
                return Err(DarbouxError::DuplicateLambda { index: k });
            }
        }
        if self.depth() > self.eigenpairs.len() {
            return Err(DarbouxError::Config(format!(
                "depth {} exceeds the {} eigenpairs given",
                self.depth(),
                self.eigenpairs.len()
            )));
        }
        if let SeedSpec::Preset(name) = &self.seed {
            if name != "vacuum" {
                return Err(DarbouxError::Config(format!("unknown seed preset `{name}`")));
            }
        }
        for (k, p) in self.eigenpairs.iter().enumerate() {
            self.init(k, p.init_chi.as_deref())?;
            self.init(k, p.init_phi.as_deref())?;
        }
        Ok(())
    }

    pub fn depth(&self) -> usize {
        self.depth.unwrap_or(self.eigenpairs.len())
    }

    pub fn lambdas(&self) -> Vec<Complex64> {
        self.eigenpairs.iter().map(|p| p.lambda.value()).collect()
    }

    pub fn is_vacuum(&self) -> bool {
        matches!(&self.seed, SeedSpec::Preset(name) if name == "vacuum")
    }

    fn init(&self, k: usize, rows: Option<&[Vec<ComplexSpec>]>) -> Result<CMat, DarbouxError> {
        match rows {
            None => Ok(CMat::identity(self.dim, self.dim)),
            Some(r) => matrix_from_spec(r, self.dim)
                .map_err(|e| DarbouxError::Config(format!("eigenpair {}: {e}", k + 1))),
        }
    }

    pub fn initial_conditions(&self, k: usize) -> Result<(CMat, CMat), DarbouxError> {
        let p = &self.eigenpairs[k];
        Ok((self.init(k, p.init_chi.as_deref())?, self.init(k, p.init_phi.as_deref())?))
    }

    pub fn seed_function(&self) -> Result<GridFunction, DarbouxError> {
        let grid = Grid::new(self.grid.z0, self.grid.h, self.grid.count)?;
        match &self.seed {
            SeedSpec::Preset(_) => Ok(GridFunction::zeros(grid, self.dim)),
            SeedSpec::File { file } => {
                let path = match &self.base_dir {
                    Some(dir) if file.is_relative() => dir.join(file),
                    _ => file.clone(),
                };
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| DarbouxError::Io(format!("{}: {e}", path.display())))?;
                let raw: Vec<Vec<Vec<ComplexSpec>>> = serde_json::from_str(&text)
                    .map_err(|e| DarbouxError::Config(format!("seed file: {e}")))?;
                let samples = raw
                    .iter()
                    .map(|m| matrix_from_spec(m, self.dim))
                    .collect::<Result<Vec<_>, _>>()?;
                GridFunction::new(grid, samples)
            }
        }
    }
}
