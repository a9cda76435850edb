//! Stiefel frames and Grassmann points built from parameter sets.

use crate::linalg::ComplexMatrix;
use crate::params::{ParamSet, Scheme, SchemeTag};
use crate::product::compose;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StiefelVariant {
    /// First-row entries real and nonnegative, `k(2n−k−1)` parameters.
    Reduced,
    /// All phases free, `k(2n−k)` parameters.
    Full,
}

/// An `n × k` matrix with orthonormal columns.
#[derive(Debug, Clone, PartialEq)]
pub struct StiefelFrame {
    n: usize,
    k: usize,
    matrix: ComplexMatrix,
    variant: StiefelVariant,
}

impl StiefelFrame {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn variant(&self) -> StiefelVariant {
        self.variant
    }

    /// `C C* = Σ c_i c_i*`, the rank-`k` projection onto the frame's span.
    pub fn projection(&self) -> ComplexMatrix {
        self.matrix.gram_outer()
    }
}

/// The first `k` columns of the Stiefel product `B_n · … · B_{n−k+1}`.
pub fn stiefel_frame(p: &ParamSet) -> Result<StiefelFrame> {
    let (n, k, variant) = match *p.scheme() {
        Scheme::StiefelReduced { n, k } => (n, k, StiefelVariant::Reduced),
        Scheme::StiefelFull { n, k } => (n, k, StiefelVariant::Full),
        other => return Err(Error::UnsupportedScheme(other.tag())),
    };
    let matrix = compose(p).leading_columns(k)?;
    Ok(StiefelFrame { n, k, matrix, variant })
}

pub fn stiefel_projection(frame: &StiefelFrame) -> ComplexMatrix {
    frame.projection()
}

/// A `k`-dimensional subspace of `ℂⁿ`.
///
/// The centered-block construction covers `k ≤ n/2`. Larger `k` are stored
/// as the orthogonal complement of an `(n−k)`-dimensional point built from
/// the same kind of parameters, so the parameter count is always
/// `2k(n−k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint {
    n: usize,
    k: usize,
    params: ParamSet,
    complemented: bool,
}

impl GrassmannPoint {
    /// `params` must be a Grassmann parameter set over `min(k, n−k)` blocks.
    pub fn new(n: usize, k: usize, params: ParamSet) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::InvalidDimensions {
                scheme: SchemeTag::Grassmann,
                n,
                k,
            });
        }
        let complemented = 2 * k > n;
        let inner = if complemented { n - k } else { k };
        let expected = Scheme::Grassmann { n, k: inner };
        if *params.scheme() != expected {
            return Err(Error::LayoutMismatch {
                scheme: SchemeTag::Grassmann,
                index: 0,
            });
        }
        Ok(Self {
            n,
            k,
            params,
            complemented,
        })
    }

    /// Point with all parameters zero: the span of the first `k` coordinate
    /// vectors, or of the last `k` when `2k > n`.
    pub fn base(n: usize, k: usize) -> Result<Self> {
        let inner = if 2 * k > n { n - k } else { k };
        let scheme = Scheme::new(SchemeTag::Grassmann, n, inner)?;
        Self::new(n, k, ParamSet::zeros(scheme))
    }

    /// The orthogonal complement: same parameters, dimension `n − k`.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            k: self.n - self.k,
            params: self.params.clone(),
            complemented: !self.complemented,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn params(&self) -> &ParamSet {
        &self.params
    }

    pub fn is_complemented(&self) -> bool {
        self.complemented
    }

    pub fn real_param_count(&self) -> usize {
        self.params.real_param_count()
    }
}

/// `A(n,k) = B_n · B_{n−1}^{1,1} ⋯ B_{n−k+1}^{k−1,k−1}` (direct path only).
pub fn grassmann_matrix(g: &GrassmannPoint) -> Result<ComplexMatrix> {
    if g.complemented {
        return Err(Error::InvalidDimensions {
            scheme: SchemeTag::Grassmann,
            n: g.n,
            k: g.k,
        });
    }
    Ok(compose(&g.params))
}

/// Rank-`k` orthogonal projection onto the subspace.
pub fn grassmann_projection(g: &GrassmannPoint) -> ComplexMatrix {
    let inner = g.params.scheme().k();
    let a = compose(&g.params);
    let p = a
        .leading_columns(inner)
        .expect("Grassmann block count never exceeds n")
        .gram_outer();
    if g.complemented {
        ComplexMatrix::identity(g.n)
            .sub(&p)
            .expect("projection is n x n")
    } else {
        p
    }
}
