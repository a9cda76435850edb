use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Float;

use super::{Complex, ComplexMatrix};
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_THRESHOLD: f64 = 1e-14;

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
///
/// Each eigenvector's first component is real and nonnegative whenever it is
/// not negligibly small.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// `V · f(D) · V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let w = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        scaled.mul_unchecked(&v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|x| x)
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// `tol` bounds `‖h − h*‖_F`; the Hermitian part of `h` is what gets
/// diagonalized.
pub fn hermitian_eig(h: &ComplexMatrix, tol: f64) -> Result<EigenDecomposition> {
    h.require_square()?;
    let residual = h.hermitian_residual()?;
    if !(residual <= tol) {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.rows();
    let mut a = h.hermitian_part()?;
    let mut v = ComplexMatrix::identity(n);
    let threshold = OFF_DIAGONAL_THRESHOLD * a.frobenius_norm();

    let mut converged = false;
    let mut off = off_diagonal_norm(&a);
    for _ in 0..MAX_SWEEPS {
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        off = off_diagonal_norm(&a);
    }
    if !converged && off > threshold {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            off_diagonal: off,
        });
    }

    normalize_phases(&mut v);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .unwrap_or(Ordering::Equal)
            .then_with(|| {
                v[(0, i)]
                    .arg()
                    .partial_cmp(&v[(0, j)].arg())
                    .unwrap_or(Ordering::Equal)
            })
    });
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Annihilates `a[p][q]` with `A ← G* A G`, `V ← V G`, where
/// `G = [[c, s·e], [−s·ē, c]]` and `e = a_pq / |a_pq|`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let e = apq / r;
    let se = e * s;
    let se_conj = se.conj();
    let n = a.rows();

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c - se_conj * akq;
        a[(k, q)] = se * akp + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c - se * aqk;
        a[(q, k)] = se_conj * apk + aqk * c;
    }
    a[(p, q)] = Complex::new(0.0, 0.0);
    a[(q, p)] = Complex::new(0.0, 0.0);
    a[(p, p)] = Complex::new(app - t * r, 0.0);
    a[(q, q)] = Complex::new(aqq + t * r, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c - se_conj * vkq;
        v[(k, q)] = se * vkp + vkq * c;
    }
}

fn normalize_phases(v: &mut ComplexMatrix) {
    let n = v.rows();
    for j in 0..v.cols() {
        let head = v[(0, j)];
        let m = head.norm();
        if m > 1e-14 {
            let fix = head.conj() / m;
            for i in 0..n {
                v[(i, j)] *= fix;
            }
            v[(0, j)] = Complex::new(m, 0.0);
        }
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues within `tol` of zero (on either side) are treated as exact
/// zeros; anything below `-tol` is rejected.
pub fn psd_sqrt(h: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(h, tol)?;
    let min = eig.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -tol {
        return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min });
    }
    eig.map_spectrum(|x| if x <= tol { 0.0 } else { x.sqrt() })
        .hermitian_part()
}
