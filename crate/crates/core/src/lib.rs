//! Ordered-product parameterization of unitary matrices and the manifolds
//! built from them.
//!
//! Every unitary `M ∈ U(n)` factors as `B_n · B_{n-1} · … · B_1`, where each
//! `B_m` is a unitary block generated by a single complex unit vector written
//! in generalized spherical coordinates. Truncating or constraining that
//! product gives explicit matrix realizations of
//!
//! * the flag manifold `U(n)/U(1)^n` (eigenbases of simple-spectrum Hermitian
//!   operators, first row nonnegative),
//! * Stiefel manifolds (leading `k` factors),
//! * Grassmann manifolds (centered blocks, `2k(n-k)` real parameters),
//! * real orthogonal matrices (all phases zero).
//!
//! On top of these the crate assembles Hermitian and density operators from
//! eigenvalue cascades, computes contraction defect operators, and inverts
//! the construction (`factorize`).
//!
//! The crate is `no_std` and only needs `alloc`. Without std in the build,
//! floating-point transcendental functions come from `libm`.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms)]
// `num_traits::Float` provides f64 math without std; when std is anywhere in
// the build graph its inherent methods win and those imports go unused.
#![allow(unused_imports)]

extern crate alloc;

pub mod contractions;
mod error;
pub mod factorize;
pub mod hermitian;
pub mod linalg;
pub mod manifolds;
pub mod params;
pub mod product;
pub mod report;
pub mod sample;
pub mod spherical;

pub use error::{Error, Result};
pub use linalg::{hermitian_eig, psd_sqrt, Complex, ComplexMatrix, EigenDecomposition};
pub use params::{param_count, ParamSet, Scheme, SchemeTag};
pub use product::{build_b, compose, embed_block, factors, Embedding};
pub use report::{Check, VerificationReport};
pub use spherical::{Convention, SphericalVector};
