use crate::params::SchemeTag;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix data has {len} entries, expected {rows}x{cols}")]
    InvalidShape { rows: usize, cols: usize, len: usize },
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (||H - H*||_F = {residual:e})")]
    NotHermitian { residual: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },
    #[error("angle #{index} = {value} is outside [0, pi/2]")]
    AngleOutOfRange { index: usize, value: f64 },
    #[error("parameter {what} is not finite")]
    NonFiniteParameter { what: &'static str },
    #[error("{what}: expected {expected}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("invalid dimensions n = {n}, k = {k} for {scheme}")]
    InvalidDimensions { scheme: SchemeTag, n: usize, k: usize },
    #[error("factor #{index} does not match the {scheme} layout")]
    LayoutMismatch { scheme: SchemeTag, index: usize },
    #[error("matrix is not unitary (||U*U - I||_F = {residual:e})")]
    NotUnitary { residual: f64 },
    #[error("first-row entry {column} = ({re:e}, {im:e}) is not real nonnegative")]
    FirstRowNotNonnegative { column: usize, re: f64, im: f64 },
    #[error("matrix is not in the image of the {scheme} layout (level {level} residual {residual:e})")]
    NotRepresentable {
        scheme: SchemeTag,
        level: usize,
        residual: f64,
    },
    #[error("scheme {0} is not supported by this operation")]
    UnsupportedScheme(SchemeTag),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(&'static str),
    #[error("operator norm {norm} exceeds 1")]
    NotContraction { norm: f64 },
    #[error("p^2 - q^2 = {value:e} is negative")]
    NegativeDiscriminant { value: f64 },
}
