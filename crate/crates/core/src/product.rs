//! Unitary blocks generated by a single vector, and their ordered product.

use alloc::vec::Vec;

use num_traits::Float;

use crate::linalg::{Complex, ComplexMatrix};
use crate::params::ParamSet;
use crate::spherical::SphericalVector;
use crate::{Error, Result};

/// Where an `m × m` block sits inside an `n × n` identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// `diag(I_k, B)`, requires `m = n − k`.
    BottomRight(usize),
    /// `diag(I_k, B, I_k)`, requires `m = n − 2k`.
    Centered(usize),
}

/// The unitary block whose first column is the given vector.
///
/// Column `c + 1` is `∂v/∂θ_c` evaluated with `θ_0 = … = θ_{c−1} = π/2`:
/// zero above row `c`, `−e^{iφ_c} sin θ_c` on row `c`, and
/// `e^{iφ_j} cos θ_c sin θ_{c+1} ⋯ sin θ_{j−1} cos θ_j` below (the last row
/// has no trailing cosine). Every row `j` carries the phase factor of entry
/// `j`, so the block is `diag(phases) · (real orthogonal)`.
pub fn build_b(v: &SphericalVector) -> ComplexMatrix {
    let m = v.dim();
    let (sines, cosines): (Vec<f64>, Vec<f64>) = v.angles().iter().map(|a| a.sin_cos()).unzip();
    let mut b = ComplexMatrix::zeros(m, m);

    // first column is the vector itself
    for (j, z) in v.entries().into_iter().enumerate() {
        b[(j, 0)] = z;
    }
    for c in 0..m.saturating_sub(1) {
        let col = c + 1;
        b[(c, col)] = v.phase_factor(c) * -sines[c];
        let mut prefix = cosines[c];
        for j in c + 1..m {
            let magnitude = if j + 1 < m {
                let value = prefix * cosines[j];
                prefix *= sines[j];
                value
            } else {
                prefix
            };
            b[(j, col)] = v.phase_factor(j) * magnitude;
        }
    }
    b
}

/// Embeds `b` into an `n × n` identity.
pub fn embed_block(b: &ComplexMatrix, n: usize, embedding: Embedding) -> Result<ComplexMatrix> {
    b.require_square()?;
    let m = b.rows();
    let offset = match embedding {
        Embedding::BottomRight(k) if k + m == n => k,
        Embedding::Centered(k) if 2 * k + m == n => k,
        _ => {
            return Err(Error::DimensionMismatch {
                op: "embed_block",
                left: b.shape(),
                right: (n, n),
            })
        }
    };
    let mut out = ComplexMatrix::identity(n);
    for i in 0..m {
        for j in 0..m {
            out[(offset + i, offset + j)] = b[(i, j)];
        }
    }
    Ok(out)
}

/// The embedded `n × n` factors of `p`, in product order.
pub fn factors(p: &ParamSet) -> Vec<ComplexMatrix> {
    let n = p.scheme().n();
    p.scheme()
        .layout()
        .iter()
        .zip(p.vectors())
        .map(|(slot, v)| {
            embed_block(&build_b(v), n, slot.embedding).expect("layout dimensions are consistent")
        })
        .collect()
}

/// Left-to-right product of the embedded factors.
///
/// Each factor only touches a contiguous diagonal block, so the product is
/// accumulated by right-multiplying the running matrix's affected columns.
pub fn compose(p: &ParamSet) -> ComplexMatrix {
    let n = p.scheme().n();
    let mut acc = ComplexMatrix::identity(n);
    for (slot, v) in p.scheme().layout().iter().zip(p.vectors()) {
        let offset = match slot.embedding {
            Embedding::BottomRight(k) | Embedding::Centered(k) => k,
        };
        apply_block_right(&mut acc, &build_b(v), offset);
    }
    acc
}

/// `acc ← acc · diag(I, block, I)` with the block starting at `offset`.
pub(crate) fn apply_block_right(acc: &mut ComplexMatrix, block: &ComplexMatrix, offset: usize) {
    let m = block.rows();
    let mut row = Vec::with_capacity(m);
    for i in 0..acc.rows() {
        row.clear();
        row.extend((0..m).map(|l| acc[(i, offset + l)]));
        for j in 0..m {
            let mut sum = Complex::new(0.0, 0.0);
            for (l, &a) in row.iter().enumerate() {
                sum += a * block[(l, j)];
            }
            acc[(i, offset + j)] = sum;
        }
    }
}
