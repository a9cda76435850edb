//! Defect operators of contractions.
//!
//! For `T : ℂᵏ → ℂⁿ` with `‖T‖ ≤ 1` the defect operators are
//! `D_T = (I_k − T*T)^{1/2}` and `D_{T*} = (I_n − TT*)^{1/2}`. When `T = C`
//! is an isometry, `D_C = 0` and `D_{C*}` is the projection onto the
//! orthogonal complement of the columns, so `I − D_{C*} = Σ c_i c_i*`.

use num_traits::Float;

use crate::linalg::{hermitian_eig, psd_sqrt, ComplexMatrix};
use crate::report::VerificationReport;
use crate::{Error, Result};

/// Slack allowed above operator norm `1`.
pub const NORM_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Contraction {
    matrix: ComplexMatrix,
    operator_norm: f64,
}

impl Contraction {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let operator_norm = operator_norm(&matrix)?;
        if !(operator_norm <= 1.0 + NORM_SLACK) {
            return Err(Error::NotContraction { norm: operator_norm });
        }
        Ok(Self { matrix, operator_norm })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn operator_norm(&self) -> f64 {
        self.operator_norm
    }
}

/// Largest singular value, `sqrt(λ_max(T*T))`.
pub fn operator_norm(t: &ComplexMatrix) -> Result<f64> {
    let gram = t.adjoint_mul(t).hermitian_part()?;
    let tol = 1e-14 * gram.frobenius_norm().max(1.0);
    let eig = hermitian_eig(&gram, tol)?;
    Ok(eig.eigenvalues[0].max(0.0).sqrt())
}

fn sqrt_tolerance(m: &ComplexMatrix) -> f64 {
    1e-12 * m.frobenius_norm().max(1.0)
}

fn defect(gram: ComplexMatrix) -> Result<ComplexMatrix> {
    let size = gram.rows();
    let a = ComplexMatrix::identity(size).sub(&gram)?.hermitian_part()?;
    let tol = sqrt_tolerance(&a);
    psd_sqrt(&a, tol)
}

/// `(D_T, D_{T*})`, of sizes `k × k` and `n × n`.
pub fn defect_operators(t: &Contraction) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let m = &t.matrix;
    let d_t = defect(m.adjoint_mul(m))?;
    let d_t_star = defect(m.gram_outer())?;
    Ok((d_t, d_t_star))
}

/// `(‖T D_T − D_{T*} T‖_F, ‖T* D_{T*} − D_T T*‖_F)`.
pub fn intertwining_residual(t: &Contraction) -> Result<(f64, f64)> {
    let (d_t, d_t_star) = defect_operators(t)?;
    let m = &t.matrix;
    let adj = m.adjoint();
    let left = m.mul_unchecked(&d_t).distance(&d_t_star.mul_unchecked(m))?;
    let right = adj.mul_unchecked(&d_t_star).distance(&d_t.mul_unchecked(&adj))?;
    Ok((left, right))
}

/// Checks that the columns of `c` are orthonormal and that `D_{C*}`
/// behaves as the complementary projection.
///
/// Reported residuals (Frobenius norms): `isometry` `‖C*C − I‖`, `kernel`
/// `‖D_{C*} C‖`, `eigenvector` `‖(I − D_{C*})C − C‖`, `outer-product`
/// `‖(I − D_{C*}) − CC*‖`, and `rank`, the difference between the number of
/// eigenvalues of `D_{C*}` above `1/2` and `n − k`. If `D_{C*}` cannot be
/// formed (`‖C‖ > 1`) the defect residuals are infinite.
pub fn verify_main_theorem(c: &ComplexMatrix, tol: f64) -> VerificationReport {
    let (n, k) = c.shape();
    let mut report = VerificationReport::new();
    report.push("isometry", c.isometry_residual(), tol);

    let residuals = defect(c.gram_outer()).and_then(|d| {
        let complement = ComplexMatrix::identity(n).sub(&d)?;
        let kernel = d.mul_unchecked(c).frobenius_norm();
        let eigenvector = complement.mul_unchecked(c).distance(c)?;
        let outer = complement.distance(&c.gram_outer())?;
        let eig = hermitian_eig(&d, 1e-14 * d.frobenius_norm().max(1.0))?;
        let above = eig.eigenvalues.iter().filter(|&&x| x > 0.5).count();
        let rank = (above as f64 - (n as f64 - k as f64)).abs();
        Ok([kernel, eigenvector, outer, rank])
    });
    let [kernel, eigenvector, outer, rank] = residuals.unwrap_or([f64::INFINITY; 4]);
    report.push("kernel", kernel, tol);
    report.push("eigenvector", eigenvector, tol);
    report.push("outer-product", outer, tol);
    report.push("rank", rank, 0.0);
    report
}
