#![allow(dead_code)]

use flagmat_core::sample::random_params;
use flagmat_core::{Complex, ComplexMatrix, ParamSet, Scheme, SchemeTag};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Gaussian matrix orthonormalized column by column (modified Gram-Schmidt).
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex> = (0..n)
            .map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        for u in &cols {
            let dot: Complex = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `m` with each column rotated so its first-row entry is real and nonnegative.
pub fn with_nonnegative_first_row(m: &ComplexMatrix) -> ComplexMatrix {
    let phases: Vec<Complex> = m
        .row(0)
        .iter()
        .map(|z| if z.norm() > 0.0 { z.conj() / z.norm() } else { Complex::new(1.0, 0.0) })
        .collect();
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)] * phases[j])
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn determinant(m: &ComplexMatrix) -> Complex {
    let n = m.rows();
    let mut a: Vec<Vec<Complex>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut det = Complex::new(1.0, 0.0);
    for c in 0..n {
        let pivot = (c..n).max_by(|&x, &y| a[x][c].norm().total_cmp(&a[y][c].norm())).unwrap();
        if a[pivot][c].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for j in c..n {
                let v = a[c][j];
                a[r][j] -= f * v;
            }
        }
    }
    det
}

/// Grassmann schemes need `n ≥ 2`; smaller `n` is bumped.
pub fn scheme_for(tag: SchemeTag, n: usize, k_seed: usize) -> Scheme {
    let n = if tag == SchemeTag::Grassmann { n.max(2) } else { n };
    let k = match tag {
        SchemeTag::Grassmann => 1 + k_seed % (n / 2).max(1),
        SchemeTag::StiefelReduced | SchemeTag::StiefelFull => 1 + k_seed % n,
        _ => 0,
    };
    Scheme::new(tag, n, k).unwrap()
}

pub fn arb_tag() -> impl Strategy<Value = SchemeTag> {
    prop::sample::select(SchemeTag::ALL.to_vec())
}

/// Random parameter set over every scheme for `n` in the given range.
pub fn arb_params(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ParamSet> {
    (arb_tag(), n, any::<usize>(), any::<u64>())
        .prop_map(|(tag, n, k_seed, seed)| random_params(&mut rng(seed), scheme_for(tag, n, k_seed)))
}

pub fn arb_scheme_params(tag: SchemeTag, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ParamSet> {
    (n, any::<usize>(), any::<u64>())
        .prop_map(move |(n, k_seed, seed)| random_params(&mut rng(seed), scheme_for(tag, n, k_seed)))
}

/// Angle and phase differences, phases compared modulo 2π.
pub fn param_distance(a: &ParamSet, b: &ParamSet) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut worst: f64 = 0.0;
    for (u, v) in a.vectors().iter().zip(b.vectors()) {
        for (x, y) in u.angles().iter().zip(v.angles()) {
            worst = worst.max((x - y).abs());
        }
        for (x, y) in u.phases().iter().zip(v.phases()) {
            let d = (x - y).rem_euclid(tau);
            worst = worst.max(d.min(tau - d));
        }
    }
    worst
}
