//! Complex unit vectors in generalized spherical coordinates.
//!
//! A vector of dimension `m` is described by `m − 1` angles `θ_i ∈ [0, π/2]`
//! and a phase per entry:
//!
//! ```text
//! y = (e^{iφ_1} cos θ_1,
//!      e^{iφ_2} sin θ_1 cos θ_2,
//!      …,
//!      e^{iφ_m} sin θ_1 ⋯ sin θ_{m−1})ᵗ
//! ```
//!
//! The reduced conventions drop the first phase and pin the first entry's
//! phase factor to `+1` or `−1`; the real conventions drop every phase.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_traits::Float;

use crate::linalg::{Complex, ComplexMatrix};
use crate::{Error, Result};

/// How the phases of a [`SphericalVector`] are stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// One free phase per entry.
    Full,
    /// First phase fixed at `0`; the remaining `m − 1` are free.
    ReducedFirst,
    /// First phase fixed at `π`; the remaining `m − 1` are free.
    ReducedPi,
    /// No phases, first entry positive.
    RealFirst,
    /// No phases, first entry negated.
    RealPi,
}

impl Convention {
    pub const ALL: [Convention; 5] = [
        Convention::Full,
        Convention::ReducedFirst,
        Convention::ReducedPi,
        Convention::RealFirst,
        Convention::RealPi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Full => "full",
            Convention::ReducedFirst => "reduced-first",
            Convention::ReducedPi => "reduced-pi",
            Convention::RealFirst => "real-first",
            Convention::RealPi => "real-pi",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }

    pub fn phase_count(self, dim: usize) -> usize {
        match self {
            Convention::Full => dim,
            Convention::ReducedFirst | Convention::ReducedPi => dim.saturating_sub(1),
            Convention::RealFirst | Convention::RealPi => 0,
        }
    }

    /// Fixed sign of the first entry, `None` when the first phase is free.
    pub fn leading_sign(self) -> Option<f64> {
        match self {
            Convention::Full => None,
            Convention::ReducedFirst | Convention::RealFirst => Some(1.0),
            Convention::ReducedPi | Convention::RealPi => Some(-1.0),
        }
    }

    pub fn is_real(self) -> bool {
        matches!(self, Convention::RealFirst | Convention::RealPi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SphericalVector {
    dim: usize,
    angles: Vec<f64>,
    phases: Vec<f64>,
    convention: Convention,
}

impl SphericalVector {
    pub fn new(dim: usize, angles: Vec<f64>, phases: Vec<f64>, convention: Convention) -> Result<Self> {
        if dim == 0 {
            return Err(Error::CountMismatch {
                what: "vector dimension",
                expected: 1,
                found: 0,
            });
        }
        if angles.len() != dim - 1 {
            return Err(Error::CountMismatch {
                what: "angle count",
                expected: dim - 1,
                found: angles.len(),
            });
        }
        let expected = convention.phase_count(dim);
        if phases.len() != expected {
            return Err(Error::CountMismatch {
                what: "phase count",
                expected,
                found: phases.len(),
            });
        }
        for (index, &value) in angles.iter().enumerate() {
            if !(0.0..=FRAC_PI_2).contains(&value) {
                return Err(Error::AngleOutOfRange { index, value });
            }
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFiniteParameter { what: "phase" });
        }
        Ok(Self {
            dim,
            angles,
            phases,
            convention,
        })
    }

    /// All angles and phases zero.
    pub fn zero(dim: usize, convention: Convention) -> Self {
        assert!(dim > 0, "spherical vector dimension must be positive");
        Self {
            dim,
            angles: vec![0.0; dim - 1],
            phases: vec![0.0; convention.phase_count(dim)],
            convention,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Number of stored real parameters.
    pub fn real_param_count(&self) -> usize {
        self.angles.len() + self.phases.len()
    }

    /// Phase factor multiplying entry `j` (0-based) and the whole `j`-th row
    /// of the generated block.
    pub fn phase_factor(&self, j: usize) -> Complex {
        match self.convention {
            Convention::Full => Complex::from_polar(1.0, self.phases[j]),
            Convention::ReducedFirst | Convention::ReducedPi => match j {
                0 => Complex::new(self.convention.leading_sign().unwrap_or(1.0), 0.0),
                _ => Complex::from_polar(1.0, self.phases[j - 1]),
            },
            Convention::RealFirst | Convention::RealPi => match j {
                0 => Complex::new(self.convention.leading_sign().unwrap_or(1.0), 0.0),
                _ => Complex::new(1.0, 0.0),
            },
        }
    }

    /// Entries of the unit vector.
    pub fn entries(&self) -> Vec<Complex> {
        let m = self.dim;
        let mut out = Vec::with_capacity(m);
        let mut sin_prefix = 1.0;
        for j in 0..m {
            let magnitude = if j + 1 < m {
                let (s, c) = self.angles[j].sin_cos();
                let value = sin_prefix * c;
                sin_prefix *= s;
                value
            } else {
                sin_prefix
            };
            out.push(self.phase_factor(j) * magnitude);
        }
        out
    }

    /// The vector as an `m × 1` matrix.
    pub fn realize(&self) -> ComplexMatrix {
        ComplexMatrix::column_vector(&self.entries())
    }
}
