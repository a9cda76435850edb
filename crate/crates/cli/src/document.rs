//! The JSON matrix document.
//!
//! ```json
//! {
//!   "kind": "unitary",
//!   "rows": 2,
//!   "cols": 2,
//!   "data": [[1.0e0, 0.0e0], [0.0e0, 0.0e0], [0.0e0, 0.0e0], [1.0e0, 0.0e0]],
//!   "params": {
//!     "scheme": "full", "n": 2, "k": 2,
//!     "factors": [{"dim": 2, "convention": "full", "angles": [0.0e0], "phases": [0.0e0, 0.0e0]}, ...]
//!   },
//!   "meta": {"seed": 7, "version": "0.1.0"}
//! }
//! ```
//!
//! `data` is row-major with one `[re, im]` pair per entry. `params` is
//! optional. For Grassmann points `k` is the subspace dimension, which may
//! exceed `n/2`; the factor list then describes the complement.

use std::fs;
use std::path::Path;

use flagmat_core::manifolds::GrassmannPoint;
use flagmat_core::{Complex, ComplexMatrix, Convention, ParamSet, Scheme, SchemeTag, SphericalVector, VerificationReport};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::to_json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DocumentKind {
    Unitary,
    Hermitian,
    Projection,
    Isometry,
    Params,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDocument {
    pub dim: usize,
    pub convention: String,
    pub angles: Vec<f64>,
    pub phases: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsDocument {
    pub scheme: String,
    pub n: usize,
    pub k: usize,
    pub factors: Vec<FactorDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub version: String,
}

impl Meta {
    pub fn new(seed: Option<u64>) -> Self {
        Self {
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub kind: DocumentKind,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsDocument>,
    pub meta: Meta,
}

impl ParamsDocument {
    /// `k` is the subspace dimension for Grassmann points and `scheme.k()`
    /// otherwise.
    pub fn new(params: &ParamSet, k: usize) -> Self {
        let scheme = params.scheme();
        let factors = params
            .vectors()
            .iter()
            .map(|v| FactorDocument {
                dim: v.dim(),
                convention: v.convention().name().to_string(),
                angles: v.angles().to_vec(),
                phases: v.phases().to_vec(),
            })
            .collect();
        Self {
            scheme: scheme.tag().name().to_string(),
            n: scheme.n(),
            k,
            factors,
        }
    }

    pub fn from_params(params: &ParamSet) -> Self {
        Self::new(params, params.scheme().k())
    }

    pub fn from_grassmann(point: &GrassmannPoint) -> Self {
        Self::new(point.params(), point.k())
    }

    pub fn tag(&self) -> Result<SchemeTag> {
        SchemeTag::from_name(&self.scheme).ok_or_else(|| CliError::Usage(format!("unknown scheme `{}`", self.scheme)))
    }

    pub fn to_params(&self) -> Result<ParamSet> {
        let tag = self.tag()?;
        let k = match tag {
            SchemeTag::Grassmann if 2 * self.k > self.n => self.n.saturating_sub(self.k),
            _ => self.k,
        };
        let scheme = Scheme::new(tag, self.n, k)?;
        let vectors = self
            .factors
            .iter()
            .map(|f| {
                let convention = Convention::from_name(&f.convention)
                    .ok_or_else(|| CliError::Usage(format!("unknown convention `{}`", f.convention)))?;
                Ok(SphericalVector::new(f.dim, f.angles.clone(), f.phases.clone(), convention)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ParamSet::new(scheme, vectors)?)
    }

    pub fn to_grassmann(&self) -> Result<GrassmannPoint> {
        Ok(GrassmannPoint::new(self.n, self.k, self.to_params()?)?)
    }

    pub fn real_param_count(&self) -> usize {
        self.factors.iter().map(|f| f.angles.len() + f.phases.len()).sum()
    }
}

impl MatrixDocument {
    pub fn new(kind: DocumentKind, m: &ComplexMatrix, params: Option<ParamsDocument>, meta: Meta) -> Self {
        Self {
            kind,
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
            params,
            meta,
        }
    }

    pub fn matrix(&self) -> Result<ComplexMatrix> {
        let data = self.data.iter().map(|&[re, im]| Complex::new(re, im)).collect();
        Ok(ComplexMatrix::new(self.rows, self.cols, data)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(to_json(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()?).map_err(|e| CliError::io(path, e))
    }

    /// Residual checks implied by the declared kind.
    pub fn validate(&self, tol: f64) -> Result<VerificationReport> {
        let m = self.matrix()?;
        let mut report = VerificationReport::new();
        match self.kind {
            DocumentKind::Unitary | DocumentKind::Params => report.push("unitarity", m.unitarity_residual()?, tol),
            DocumentKind::Hermitian => report.push("hermitian", m.hermitian_residual()?, tol),
            DocumentKind::Projection => {
                report.push("hermitian", m.hermitian_residual()?, tol);
                report.push("idempotence", m.idempotence_residual()?, tol);
            }
            DocumentKind::Isometry => report.push("isometry", m.isometry_residual(), tol),
        }
        Ok(report)
    }
}

/// `1e-10 · n`, the default residual tolerance for an `n`-row document.
pub fn default_tolerance(n: usize) -> f64 {
    1e-10 * n as f64
}
