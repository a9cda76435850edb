//! Recovering canonical parameters from a unitary matrix.
//!
//! The peeling runs the ordered product backwards. At each level the
//! current trailing block's first column is read off in spherical
//! coordinates, the corresponding `B` block is built, and `B*` is applied
//! from the left, which leaves `diag(1, rest)`. The recursion continues on
//! `rest`.
//!
//! Conventions with a pinned leading phase (flag, reduced Stiefel, real
//! orthogonal) cannot absorb an arbitrary phase on the column being peeled.
//! When the head entry has the wrong phase it is rotated into place by a
//! unit scalar on that column; those scalars are reported as the *gauge*.
//! For matrices in the image of the scheme every gauge factor is `1`, so
//! `compose(factorize(m)) = m`. Otherwise the result is the representative
//! of `m`'s coset under right multiplication by diagonal phases:
//! `compose(p) = m · diag(gauge)` on the peeled columns.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_traits::Float;

use crate::linalg::{Complex, ComplexMatrix};
use crate::params::{FactorSlot, ParamSet, Scheme, SchemeTag};
use crate::product::{build_b, Embedding};
use crate::spherical::{Convention, SphericalVector};
use crate::{Error, Result};

/// Entries (and tail norms) at or below this are treated as exact zeros.
const NEGLIGIBLE: f64 = 1e-12;

/// Parameters plus the per-column phase corrections that were needed.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub params: ParamSet,
    /// One unit scalar per peeled column: `compose(params)` equals
    /// `m · diag(gauge)` on those columns.
    pub gauge: Vec<Complex>,
}

impl Factorization {
    /// True when no phase correction was applied beyond `tol`.
    pub fn is_exact(&self, tol: f64) -> bool {
        self.gauge.iter().all(|g| (g - Complex::new(1.0, 0.0)).norm() <= tol)
    }
}

/// Tolerances used by [`factorize`]: `1e-10 · n` for unitarity and the
/// first-row check.
pub fn default_tolerance(n: usize) -> f64 {
    1e-10 * n as f64
}

/// Factorizes `m` under `scheme` with default tolerances and returns only the
/// parameters.
pub fn factorize(m: &ComplexMatrix, scheme: Scheme) -> Result<ParamSet> {
    factorize_with_gauge(m, scheme, default_tolerance(m.rows())).map(|f| f.params)
}

/// Factorizes `m` under `scheme`.
///
/// Grassmann schemes are not supported: their centered factors constrain
/// the subspace rather than a column, and there is no peeling order for
/// them.
pub fn factorize_with_gauge(m: &ComplexMatrix, scheme: Scheme, tol: f64) -> Result<Factorization> {
    m.require_square()?;
    let n = m.rows();
    if scheme.n() != n {
        return Err(Error::DimensionMismatch {
            op: "factorize",
            left: m.shape(),
            right: (scheme.n(), scheme.n()),
        });
    }
    if scheme.tag() == SchemeTag::Grassmann {
        return Err(Error::UnsupportedScheme(SchemeTag::Grassmann));
    }
    let residual = m.unitarity_residual()?;
    if !(residual <= tol) {
        return Err(Error::NotUnitary { residual });
    }
    let layout = scheme.layout();
    if layout[0].convention.leading_sign().is_some() {
        check_first_row(m, scheme.k(), tol)?;
    }

    let mut block = m.clone();
    let mut vectors = Vec::with_capacity(layout.len());
    let mut gauge = Vec::with_capacity(layout.len());
    for (level, slot) in layout.iter().enumerate() {
        debug_assert_eq!(slot.embedding, Embedding::BottomRight(level));
        let g = fix_head_phase(&mut block, slot.convention);
        gauge.push(g);
        let v = recover_vector(&block.column(0), slot)?;
        let b = build_b(&v);
        let peeled = b.adjoint_mul(&block);
        let level_residual = first_column_residual(&peeled);
        if !(level_residual <= tol) {
            return Err(Error::NotRepresentable {
                scheme: scheme.tag(),
                level,
                residual: level_residual,
            });
        }
        vectors.push(v);
        let size = peeled.rows();
        if size > 1 {
            block = peeled.submatrix(1, 1, size - 1, size - 1)?;
        }
    }
    Ok(Factorization {
        params: ParamSet::new(scheme, vectors)?,
        gauge,
    })
}

fn check_first_row(m: &ComplexMatrix, k: usize, tol: f64) -> Result<()> {
    for (column, z) in m.row(0).iter().take(k).enumerate() {
        if z.im.abs() > tol || z.re < -tol {
            return Err(Error::FirstRowNotNonnegative {
                column,
                re: z.re,
                im: z.im,
            });
        }
    }
    Ok(())
}

/// Multiplies the block's first column by the unit scalar that makes
/// `sign · head` real and nonnegative. Returns that scalar.
fn fix_head_phase(block: &mut ComplexMatrix, convention: Convention) -> Complex {
    let one = Complex::new(1.0, 0.0);
    let Some(sign) = convention.leading_sign() else {
        return one;
    };
    let head = block[(0, 0)] * sign;
    let magnitude = head.norm();
    if magnitude <= NEGLIGIBLE {
        return one;
    }
    let g = head.conj() / magnitude;
    for i in 0..block.rows() {
        block[(i, 0)] *= g;
    }
    g
}

/// Spherical coordinates of a unit vector under the slot's convention.
fn recover_vector(column: &[Complex], slot: &FactorSlot) -> Result<SphericalVector> {
    let m = column.len();
    // tail[i] = ‖column[i..]‖
    let mut tail = alloc::vec![0.0; m + 1];
    for i in (0..m).rev() {
        tail[i] = (tail[i + 1] * tail[i + 1] + column[i].norm_sqr()).sqrt();
    }
    let angles: Vec<f64> = (0..m - 1)
        .map(|i| {
            if tail[i] <= NEGLIGIBLE {
                0.0
            } else {
                tail[i + 1].atan2(column[i].norm())
            }
        })
        .collect();
    let phase_of = |z: Complex| {
        if z.norm() <= NEGLIGIBLE {
            0.0
        } else {
            let a = z.arg();
            if a < 0.0 {
                a + TAU
            } else {
                a
            }
        }
    };
    let phases: Vec<f64> = match slot.convention {
        Convention::Full => column.iter().map(|&z| phase_of(z)).collect(),
        Convention::ReducedFirst | Convention::ReducedPi => column[1..].iter().map(|&z| phase_of(z)).collect(),
        Convention::RealFirst | Convention::RealPi => Vec::new(),
    };
    SphericalVector::new(slot.dim, angles, phases, slot.convention)
}

/// `‖P e_1 − e_1‖` for the peeled block `P`.
fn first_column_residual(peeled: &ComplexMatrix) -> f64 {
    let mut acc = (peeled[(0, 0)] - Complex::new(1.0, 0.0)).norm_sqr();
    for i in 1..peeled.rows() {
        acc += peeled[(i, 0)].norm_sqr();
    }
    acc.sqrt()
}
