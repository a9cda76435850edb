//! Random parameter sets.
//!
//! Angles are drawn uniformly from `[0, π/2)` and phases from `[0, 2π)`.
//! This covers the whole parameter domain but is not the Haar measure on the
//! corresponding manifold.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use rand::Rng;

use crate::manifolds::GrassmannPoint;
use crate::params::{ParamSet, Scheme};
use crate::spherical::{Convention, SphericalVector};
use crate::Result;

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize, convention: Convention) -> SphericalVector {
    let angles: Vec<f64> = (0..dim.saturating_sub(1)).map(|_| rng.random_range(0.0..FRAC_PI_2)).collect();
    let phases: Vec<f64> = (0..convention.phase_count(dim))
        .map(|_| rng.random_range(0.0..TAU))
        .collect();
    SphericalVector::new(dim, angles, phases, convention).expect("sampled values lie in range")
}

pub fn random_params<R: Rng + ?Sized>(rng: &mut R, scheme: Scheme) -> ParamSet {
    let vectors = scheme
        .layout()
        .iter()
        .map(|slot| random_vector(rng, slot.dim, slot.convention))
        .collect();
    ParamSet::new(scheme, vectors).expect("layout is followed")
}

/// A random `k`-dimensional subspace of `ℂⁿ`, `1 ≤ k < n`.
pub fn random_grassmann_point<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<GrassmannPoint> {
    let base = GrassmannPoint::base(n, k)?;
    let params = random_params(rng, *base.params().scheme());
    GrassmannPoint::new(n, k, params)
}

/// `count` angles in `[0, π/2)`.
pub fn random_angles<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|_| rng.random_range(0.0..FRAC_PI_2)).collect()
}
