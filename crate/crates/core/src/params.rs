//! Schemes (which ordered product to build) and their parameter sets.
//!
//! A scheme fixes a factor layout: for each factor, the dimension of its
//! generating vector, the phase convention and where the generated block is
//! embedded. All schemes except Grassmann are prefixes of one of two
//! `n`-factor layouts:
//!
//! | factor `j` | full unitary       | flag                                 |
//! |------------|--------------------|--------------------------------------|
//! | 0          | dim `n`, `Full`    | dim `n`, `ReducedFirst`              |
//! | `j ≥ 1`    | dim `n−j`, `Full`  | dim `n−j`, `ReducedPi`               |
//!
//! embedded bottom-right after `I_j`. The flag's last factor has dimension 1
//! and no parameters: it is the constant `−1` that makes the last first-row
//! entry nonnegative.
//!
//! Grassmann factors `j ≥ 1` have dimension `n − 2j` and sit between two
//! identity blocks `I_j`.

use alloc::vec::Vec;

use crate::product::Embedding;
use crate::spherical::{Convention, SphericalVector};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeTag {
    FullUnitary,
    Flag,
    StiefelReduced,
    StiefelFull,
    Grassmann,
    SpecialOrthogonal,
}

impl SchemeTag {
    pub const ALL: [SchemeTag; 6] = [
        SchemeTag::FullUnitary,
        SchemeTag::Flag,
        SchemeTag::StiefelReduced,
        SchemeTag::StiefelFull,
        SchemeTag::Grassmann,
        SchemeTag::SpecialOrthogonal,
    ];

    /// Whether the block count `k` is meaningful for this tag.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            SchemeTag::StiefelReduced | SchemeTag::StiefelFull | SchemeTag::Grassmann
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeTag::FullUnitary => "full",
            SchemeTag::Flag => "flag",
            SchemeTag::StiefelReduced => "stiefel-reduced",
            SchemeTag::StiefelFull => "stiefel-full",
            SchemeTag::Grassmann => "grassmann",
            SchemeTag::SpecialOrthogonal => "orthogonal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.name() == name)
    }
}

impl core::fmt::Display for SchemeTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated scheme with its dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    FullUnitary { n: usize },
    Flag { n: usize },
    StiefelReduced { n: usize, k: usize },
    StiefelFull { n: usize, k: usize },
    /// Direct construction only: `1 ≤ k ≤ ⌊n/2⌋`.
    Grassmann { n: usize, k: usize },
    SpecialOrthogonal { n: usize },
}

/// One factor of a layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorSlot {
    pub dim: usize,
    pub convention: Convention,
    pub embedding: Embedding,
}

impl Scheme {
    /// Validates dimensions. `k` is ignored for tags that do not use it.
    pub fn new(tag: SchemeTag, n: usize, k: usize) -> Result<Self> {
        let bad = || Err(Error::InvalidDimensions { scheme: tag, n, k });
        if n == 0 {
            return bad();
        }
        match tag {
            SchemeTag::FullUnitary => Ok(Scheme::FullUnitary { n }),
            SchemeTag::Flag => Ok(Scheme::Flag { n }),
            SchemeTag::SpecialOrthogonal => Ok(Scheme::SpecialOrthogonal { n }),
            SchemeTag::StiefelReduced | SchemeTag::StiefelFull if k == 0 || k > n => bad(),
            SchemeTag::StiefelReduced => Ok(Scheme::StiefelReduced { n, k }),
            SchemeTag::StiefelFull => Ok(Scheme::StiefelFull { n, k }),
            SchemeTag::Grassmann if k == 0 || 2 * k > n => bad(),
            SchemeTag::Grassmann => Ok(Scheme::Grassmann { n, k }),
        }
    }

    pub fn tag(&self) -> SchemeTag {
        match self {
            Scheme::FullUnitary { .. } => SchemeTag::FullUnitary,
            Scheme::Flag { .. } => SchemeTag::Flag,
            Scheme::StiefelReduced { .. } => SchemeTag::StiefelReduced,
            Scheme::StiefelFull { .. } => SchemeTag::StiefelFull,
            Scheme::Grassmann { .. } => SchemeTag::Grassmann,
            Scheme::SpecialOrthogonal { .. } => SchemeTag::SpecialOrthogonal,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Scheme::FullUnitary { n }
            | Scheme::Flag { n }
            | Scheme::SpecialOrthogonal { n }
            | Scheme::StiefelReduced { n, .. }
            | Scheme::StiefelFull { n, .. }
            | Scheme::Grassmann { n, .. } => n,
        }
    }

    /// Number of leading blocks; `n` for the complete schemes.
    pub fn k(&self) -> usize {
        match *self {
            Scheme::StiefelReduced { k, .. } | Scheme::StiefelFull { k, .. } | Scheme::Grassmann { k, .. } => k,
            _ => self.n(),
        }
    }

    pub fn layout(&self) -> Vec<FactorSlot> {
        let n = self.n();
        let bottom = |j: usize, convention| FactorSlot {
            dim: n - j,
            convention,
            embedding: Embedding::BottomRight(j),
        };
        let flag = |j: usize| bottom(j, if j == 0 { Convention::ReducedFirst } else { Convention::ReducedPi });
        let real = |j: usize| bottom(j, if j == 0 { Convention::RealFirst } else { Convention::RealPi });
        match *self {
            Scheme::FullUnitary { .. } => (0..n).map(|j| bottom(j, Convention::Full)).collect(),
            Scheme::StiefelFull { k, .. } => (0..k).map(|j| bottom(j, Convention::Full)).collect(),
            Scheme::Flag { .. } => (0..n).map(flag).collect(),
            Scheme::StiefelReduced { k, .. } => (0..k).map(flag).collect(),
            Scheme::SpecialOrthogonal { .. } => (0..n).map(real).collect(),
            Scheme::Grassmann { k, .. } => (0..k)
                .map(|j| match j {
                    0 => flag(0),
                    _ => FactorSlot {
                        dim: n - 2 * j,
                        convention: Convention::ReducedPi,
                        embedding: Embedding::Centered(j),
                    },
                })
                .collect(),
        }
    }
}

/// Closed-form real dimension of the parameter space.
pub fn param_count(scheme: &Scheme) -> usize {
    let n = scheme.n();
    let k = scheme.k();
    match scheme {
        Scheme::FullUnitary { .. } => n * n,
        Scheme::Flag { .. } => n * (n - 1),
        Scheme::StiefelReduced { .. } => k * (2 * n - k - 1),
        Scheme::StiefelFull { .. } => k * (2 * n - k),
        Scheme::Grassmann { .. } => 2 * k * (n - k),
        Scheme::SpecialOrthogonal { .. } => n * (n - 1) / 2,
    }
}

/// Per-factor generating vectors for a scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    scheme: Scheme,
    vectors: Vec<SphericalVector>,
}

impl ParamSet {
    pub fn new(scheme: Scheme, vectors: Vec<SphericalVector>) -> Result<Self> {
        let layout = scheme.layout();
        if layout.len() != vectors.len() {
            return Err(Error::CountMismatch {
                what: "factor count",
                expected: layout.len(),
                found: vectors.len(),
            });
        }
        for (index, (slot, v)) in layout.iter().zip(&vectors).enumerate() {
            if slot.dim != v.dim() || slot.convention != v.convention() {
                return Err(Error::LayoutMismatch {
                    scheme: scheme.tag(),
                    index,
                });
            }
        }
        Ok(Self { scheme, vectors })
    }

    /// The base point: every angle and phase zero.
    pub fn zeros(scheme: Scheme) -> Self {
        let vectors = scheme
            .layout()
            .iter()
            .map(|slot| SphericalVector::zero(slot.dim, slot.convention))
            .collect();
        Self { scheme, vectors }
    }

    /// Rebuilds a parameter set from the flat storage order of
    /// [`ParamSet::to_flat`].
    pub fn from_flat(scheme: Scheme, values: &[f64]) -> Result<Self> {
        let expected = param_count(&scheme);
        if values.len() != expected {
            return Err(Error::CountMismatch {
                what: "parameter count",
                expected,
                found: values.len(),
            });
        }
        let mut rest = values;
        let mut vectors = Vec::new();
        for slot in scheme.layout() {
            let (angles, tail) = rest.split_at(slot.dim - 1);
            let (phases, tail) = tail.split_at(slot.convention.phase_count(slot.dim));
            rest = tail;
            vectors.push(SphericalVector::new(
                slot.dim,
                angles.to_vec(),
                phases.to_vec(),
                slot.convention,
            )?);
        }
        Ok(Self { scheme, vectors })
    }

    /// Factor-major, angles before phases within a factor.
    pub fn to_flat(&self) -> Vec<f64> {
        self.vectors
            .iter()
            .flat_map(|v| v.angles().iter().chain(v.phases()).copied())
            .collect()
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn vectors(&self) -> &[SphericalVector] {
        &self.vectors
    }

    /// Stored real-parameter count.
    pub fn real_param_count(&self) -> usize {
        self.vectors.iter().map(SphericalVector::real_param_count).sum()
    }
}
