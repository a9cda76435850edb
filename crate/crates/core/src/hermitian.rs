//! Hermitian operators from eigenvalue cascades and unitary frames.
//!
//! Eigenvalues are generated by *closing cascades*: `m` values from `m − 1`
//! angles,
//!
//! ```text
//! total·cos²θ_1, total·sin²θ_1 cos²θ_2, …, total·sin²θ_1 ⋯ sin²θ_{m−1}
//! ```
//!
//! which are nonnegative multiples of `total` and sum to it exactly.
//! Indefinite spectra glue a positive and a negative cascade together. The
//! operator is then `H = Σ λ_i u_i u_i*` with `u_i` the columns of a flag,
//! Stiefel or Grassmann matrix, depending on how degenerate the spectrum is.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_traits::Float;

use crate::linalg::{Complex, ComplexMatrix};
use crate::manifolds::{grassmann_projection, GrassmannPoint};
use crate::params::{ParamSet, Scheme, SchemeTag};
use crate::product::compose;
use crate::{Error, Result};

/// `m = angles.len() + 1` values summing to `total`.
pub fn cascade(total: f64, angles: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(angles.len() + 1);
    let mut prefix = total;
    for &a in angles {
        let (s, c) = a.sin_cos();
        out.push(prefix * c * c);
        prefix *= s * s;
    }
    out.push(prefix);
    out
}

fn check_angles(angles: &[f64]) -> Result<()> {
    for (index, &value) in angles.iter().enumerate() {
        if !(0.0..=FRAC_PI_2).contains(&value) {
            return Err(Error::AngleOutOfRange { index, value });
        }
    }
    Ok(())
}

fn check_finite(value: f64, what: &'static str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFiniteParameter { what })
    }
}

/// Spectrum of a positive operator with trace `h`: `n = angles.len() + 1`.
pub fn eigenvalues_positive(h: f64, angles: &[f64]) -> Result<Vec<f64>> {
    check_finite(h, "h")?;
    if !(h > 0.0) {
        return Err(Error::InvalidSpectrum("trace h must be positive"));
    }
    check_angles(angles)?;
    Ok(cascade(h, angles))
}

/// Traceless spectrum: `p` values summing to `h`, then `n − p` summing to
/// `−h`. `n = angles.len() + 2`; the first `p − 1` angles drive the positive
/// block.
pub fn eigenvalues_traceless(h: f64, p: usize, angles: &[f64]) -> Result<Vec<f64>> {
    signed_blocks(h, -h, p, angles)
}

/// Spectrum with trace `h ≠ 0` and `p` positive values.
///
/// For `h > 0` the positive block sums to `|h| cosh²θ` and the negative one
/// to `−|h| sinh²θ`; for `h < 0` the two hyperbolic factors swap.
pub fn eigenvalues_indefinite(h: f64, p: usize, theta_hyp: f64, angles: &[f64]) -> Result<Vec<f64>> {
    check_finite(h, "h")?;
    check_finite(theta_hyp, "theta_hyp")?;
    if h == 0.0 {
        return Err(Error::InvalidSpectrum("trace h must be nonzero"));
    }
    if theta_hyp < 0.0 {
        return Err(Error::InvalidSpectrum("hyperbolic parameter must be nonnegative"));
    }
    let (ch2, sh2) = (theta_hyp.cosh().powi(2), theta_hyp.sinh().powi(2));
    let (pos, neg) = if h > 0.0 { (ch2, sh2) } else { (sh2, ch2) };
    let scale = h.abs();
    signed_blocks(scale * pos, -scale * neg, p, angles)
}

fn signed_blocks(positive_total: f64, negative_total: f64, p: usize, angles: &[f64]) -> Result<Vec<f64>> {
    check_finite(positive_total, "h")?;
    if !(positive_total >= 0.0) {
        return Err(Error::InvalidSpectrum("trace scale h must be positive"));
    }
    let n = angles.len() + 2;
    if p == 0 || p >= n {
        return Err(Error::InvalidSpectrum("positive count p must satisfy 1 <= p <= n-1"));
    }
    check_angles(angles)?;
    let (head, tail) = angles.split_at(p - 1);
    let mut out = cascade(positive_total, head);
    out.extend(cascade(negative_total, tail));
    Ok(out)
}

/// Eigenvalue pair for a two-eigenvalue operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TwoLevelProfile {
    /// `(h cos²θ, h sin²θ)`, `θ ∈ [0, π/2]`.
    Trigonometric { theta: f64 },
    /// `(h cosh²θ, −h sinh²θ)` for `h > 0`, `(|h| sinh²θ, −|h| cosh²θ)` for
    /// `h < 0`.
    Hyperbolic { theta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumKind {
    /// Simple, nonnegative spectrum with trace `h`; `n − 1` angles.
    PositiveTrace { h: f64, angles: Vec<f64> },
    /// Trace zero, `p` positive values summing to `h`; `n − 2` angles.
    Traceless { h: f64, p: usize, angles: Vec<f64> },
    /// Trace `h`, `p` positive values; `n − 2` angles.
    IndefiniteTrace {
        h: f64,
        p: usize,
        theta_hyp: f64,
        angles: Vec<f64>,
    },
    /// Leading value with multiplicity `k`, the rest simple; `n − k` angles.
    DegenerateK { k: usize, h: f64, angles: Vec<f64> },
    /// Two values with multiplicities `k` and `n − k`.
    TwoLevel { k: usize, h: f64, profile: TwoLevelProfile },
}

impl SpectrumKind {
    pub fn name(&self) -> &'static str {
        match self {
            SpectrumKind::PositiveTrace { .. } => "positive",
            SpectrumKind::Traceless { .. } => "traceless",
            SpectrumKind::IndefiniteTrace { .. } => "indefinite",
            SpectrumKind::DegenerateK { .. } => "degenerate",
            SpectrumKind::TwoLevel { .. } => "two-level",
        }
    }
}

/// An eigenvalue specification on `ℂⁿ`.
///
/// With `normalize` set, the degenerate kinds are rescaled so that the
/// multiplicity-weighted trace equals `h` (for `h = 1`: a density matrix).
/// Without it they follow the raw profile, whose *distinct* values sum to
/// `h`. The simple kinds already satisfy their trace contract and ignore
/// the flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSpec {
    n: usize,
    kind: SpectrumKind,
    normalize: bool,
}

impl SpectrumSpec {
    pub fn new(n: usize, kind: SpectrumKind, normalize: bool) -> Result<Self> {
        let count = |expected: usize, found: usize| {
            if expected == found {
                Ok(())
            } else {
                Err(Error::CountMismatch {
                    what: "spectrum angle count",
                    expected,
                    found,
                })
            }
        };
        if n == 0 {
            return Err(Error::InvalidSpectrum("dimension must be positive"));
        }
        match &kind {
            SpectrumKind::PositiveTrace { angles, .. } => count(n - 1, angles.len())?,
            SpectrumKind::Traceless { angles, .. } | SpectrumKind::IndefiniteTrace { angles, .. } => {
                if n < 2 {
                    return Err(Error::InvalidSpectrum("indefinite spectra need n >= 2"));
                }
                count(n - 2, angles.len())?
            }
            SpectrumKind::DegenerateK { k, angles, .. } => {
                if *k == 0 || *k > n {
                    return Err(Error::InvalidSpectrum("multiplicity k must satisfy 1 <= k <= n"));
                }
                count(n - k, angles.len())?
            }
            SpectrumKind::TwoLevel { k, .. } => {
                if *k == 0 || *k >= n {
                    return Err(Error::InvalidSpectrum("multiplicity k must satisfy 1 <= k <= n-1"));
                }
            }
        }
        let spec = Self { n, kind, normalize };
        spec.levels()?;
        Ok(spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &SpectrumKind {
        &self.kind
    }

    pub fn normalize(&self) -> bool {
        self.normalize
    }

    /// Distinct eigenvalue levels with multiplicities, in slot order.
    pub fn levels(&self) -> Result<Vec<(f64, usize)>> {
        let simple = |v: Vec<f64>| v.into_iter().map(|x| (x, 1)).collect::<Vec<_>>();
        let raw = match &self.kind {
            SpectrumKind::PositiveTrace { h, angles } => return Ok(simple(eigenvalues_positive(*h, angles)?)),
            SpectrumKind::Traceless { h, p, angles } => return Ok(simple(eigenvalues_traceless(*h, *p, angles)?)),
            SpectrumKind::IndefiniteTrace {
                h,
                p,
                theta_hyp,
                angles,
            } => return Ok(simple(eigenvalues_indefinite(*h, *p, *theta_hyp, angles)?)),
            SpectrumKind::DegenerateK { k, h, angles } => {
                let values = eigenvalues_positive(*h, angles)?;
                let mut levels = Vec::with_capacity(values.len());
                levels.push((values[0], *k));
                levels.extend(values[1..].iter().map(|&x| (x, 1)));
                levels
            }
            SpectrumKind::TwoLevel { k, h, profile } => {
                check_finite(*h, "h")?;
                let (l1, l2) = match *profile {
                    TwoLevelProfile::Trigonometric { theta } => {
                        if !(*h > 0.0) {
                            return Err(Error::InvalidSpectrum("trace scale h must be positive"));
                        }
                        check_angles(&[theta])?;
                        let (s, c) = theta.sin_cos();
                        (h * c * c, h * s * s)
                    }
                    TwoLevelProfile::Hyperbolic { theta } => {
                        let v = eigenvalues_indefinite(*h, 1, theta, &[])?;
                        (v[0], v[1])
                    }
                };
                alloc::vec![(l1, *k), (l2, self.n - k)]
            }
        };
        if !self.normalize {
            return Ok(raw);
        }
        let h = self.trace_target();
        let weighted: f64 = raw.iter().map(|&(x, m)| x * m as f64).sum();
        if !(weighted * h > 0.0) {
            return Err(Error::InvalidSpectrum("spectrum cannot be normalized to trace h"));
        }
        let scale = h / weighted;
        Ok(raw.into_iter().map(|(x, m)| (x * scale, m)).collect())
    }

    /// Eigenvalues expanded by multiplicity (length `n`).
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self
            .levels()?
            .into_iter()
            .flat_map(|(x, m)| core::iter::repeat(x).take(m))
            .collect())
    }

    /// The trace the spectrum is built to have: `h` (or `0` when traceless).
    ///
    /// For the degenerate kinds without normalization this is the sum of the
    /// distinct levels, not the weighted trace.
    pub fn trace_target(&self) -> f64 {
        match &self.kind {
            SpectrumKind::Traceless { .. } => 0.0,
            SpectrumKind::PositiveTrace { h, .. }
            | SpectrumKind::IndefiniteTrace { h, .. }
            | SpectrumKind::DegenerateK { h, .. }
            | SpectrumKind::TwoLevel { h, .. } => *h,
        }
    }

    /// Scale for trace tolerances: the largest block total.
    pub fn trace_scale(&self) -> f64 {
        match &self.kind {
            SpectrumKind::IndefiniteTrace { h, theta_hyp, .. } => h.abs() * theta_hyp.cosh().powi(2),
            SpectrumKind::TwoLevel {
                h,
                profile: TwoLevelProfile::Hyperbolic { theta },
                ..
            } => h.abs() * theta.cosh().powi(2),
            other => match other {
                SpectrumKind::PositiveTrace { h, .. }
                | SpectrumKind::Traceless { h, .. }
                | SpectrumKind::DegenerateK { h, .. }
                | SpectrumKind::TwoLevel { h, .. } => h.abs().max(1.0),
                SpectrumKind::IndefiniteTrace { .. } => unreachable!(),
            },
        }
    }

    /// Frame scheme whose columns diagonalize operators of this kind.
    pub fn frame_scheme(&self) -> Scheme {
        let n = self.n;
        match &self.kind {
            SpectrumKind::PositiveTrace { .. }
            | SpectrumKind::Traceless { .. }
            | SpectrumKind::IndefiniteTrace { .. } => Scheme::Flag { n },
            SpectrumKind::DegenerateK { k, .. } => Scheme::StiefelReduced { n, k: *k },
            SpectrumKind::TwoLevel { k, .. } => Scheme::Grassmann {
                n,
                k: (*k).min(n - k),
            },
        }
    }
}

/// `H = Σ λ_i u_i u_i*` together with the data it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    pub matrix: ComplexMatrix,
    pub spectrum: SpectrumSpec,
    pub frame_params: ParamSet,
}

pub fn assemble(spec: &SpectrumSpec, frame: &ParamSet) -> Result<HermitianOperator> {
    let expected = spec.frame_scheme();
    if *frame.scheme() != expected {
        return Err(Error::UnsupportedScheme(frame.scheme().tag()));
    }
    let n = spec.n;
    let lambdas = spec.eigenvalues()?;
    let matrix = match spec.kind {
        SpectrumKind::TwoLevel { k, .. } => {
            let point = GrassmannPoint::new(n, k, frame.clone())?;
            let p = grassmann_projection(&point);
            let (l1, l2) = (lambdas[0], lambdas[n - 1]);
            ComplexMatrix::from_fn(n, n, |i, j| {
                let delta = if i == j { l2 } else { 0.0 };
                p[(i, j)] * (l1 - l2) + Complex::new(delta, 0.0)
            })
        }
        _ => {
            let u = compose(frame);
            let mut scaled = u.clone();
            for (j, &lambda) in lambdas.iter().enumerate() {
                for i in 0..n {
                    scaled[(i, j)] *= lambda;
                }
            }
            scaled.mul_unchecked(&u.adjoint())
        }
    };
    Ok(HermitianOperator {
        matrix: matrix.hermitian_part()?,
        spectrum: spec.clone(),
        frame_params: frame.clone(),
    })
}

/// `‖ρ² − 2pρ + (p² − q²) I‖_F`.
pub fn quadratic_residual(rho: &ComplexMatrix, p: f64, q: f64) -> Result<f64> {
    rho.require_square()?;
    let c = p * p - q * q;
    if c < 0.0 {
        return Err(Error::NegativeDiscriminant { value: c });
    }
    let n = rho.rows();
    let sq = rho.mul_unchecked(rho);
    let value = ComplexMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { c } else { 0.0 };
        sq[(i, j)] - rho[(i, j)] * (2.0 * p) + Complex::new(id, 0.0)
    });
    Ok(value.frobenius_norm())
}

/// `(p, q) = ((λ₁ + λ₂)/2, (λ₁ − λ₂)/2)`, the coefficients whose quadratic
/// annihilates an operator with eigenvalues `λ₁, λ₂`.
pub fn quadratic_coefficients(l1: f64, l2: f64) -> (f64, f64) {
    ((l1 + l2) / 2.0, (l1 - l2) / 2.0)
}

/// True if `scheme` is the frame family [`assemble`] expects for `kind`.
pub fn frame_matches(kind: &SpectrumKind, scheme: SchemeTag) -> bool {
    matches!(
        (kind, scheme),
        (SpectrumKind::PositiveTrace { .. }, SchemeTag::Flag)
            | (SpectrumKind::Traceless { .. }, SchemeTag::Flag)
            | (SpectrumKind::IndefiniteTrace { .. }, SchemeTag::Flag)
            | (SpectrumKind::DegenerateK { .. }, SchemeTag::StiefelReduced)
            | (SpectrumKind::TwoLevel { .. }, SchemeTag::Grassmann)
    )
}
