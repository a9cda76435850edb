mod common;

use common::*;
use flagmat_core::manifolds::{grassmann_matrix, grassmann_projection, stiefel_frame, GrassmannPoint};
use flagmat_core::sample::{random_grassmann_point, random_params};
use flagmat_core::{compose, factors, hermitian_eig, param_count, Complex, ComplexMatrix, ParamSet, Scheme, SchemeTag};
use proptest::prelude::*;
use rand::Rng;

fn e(phase: f64) -> Complex {
    Complex::from_polar(1.0, phase)
}

fn check_projection(p: &ComplexMatrix, k: usize) -> Result<(), TestCaseError> {
    let n = p.rows();
    let tol = 1e-12 * n as f64;
    prop_assert_eq!(p, &p.adjoint());
    prop_assert!(p.idempotence_residual().unwrap() <= tol);
    let tr = p.trace().unwrap();
    prop_assert!((tr.re - k as f64).abs() <= tol && tr.im.abs() <= tol);
    let eig = hermitian_eig(p, 1e-14).unwrap();
    let ones = eig.eigenvalues.iter().filter(|&&x| (x - 1.0).abs() <= 1e-10).count();
    let zeros = eig.eigenvalues.iter().filter(|&&x| x.abs() <= 1e-10).count();
    prop_assert_eq!((ones, zeros), (k, n - k));
    Ok(())
}

/// Projection onto the orthogonal complement of `q`'s columns, built from a
/// Gram-Schmidt basis of the complement.
fn complement_oracle(q: &ComplexMatrix) -> ComplexMatrix {
    let n = q.rows();
    let mut basis: Vec<Vec<Complex>> = (0..q.cols()).map(|j| q.column(j)).collect();
    let start = basis.len();
    for i in 0..n {
        let mut v = vec![Complex::new(0.0, 0.0); n];
        v[i] = Complex::new(1.0, 0.0);
        for _ in 0..2 {
            for u in &basis {
                let dot: Complex = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(u) {
                    *x -= dot * y;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            basis.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    let extra = &basis[start..];
    assert_eq!(extra.len(), n - q.cols());
    ComplexMatrix::from_fn(n, n, |i, j| extra.iter().map(|u| u[i] * u[j].conj()).sum())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grassmann_projections(seed in any::<u64>(), n in 2usize..=12, k_seed in any::<usize>()) {
        let k = 1 + k_seed % (n - 1);
        let g = random_grassmann_point(&mut rng(seed), n, k).unwrap();
        prop_assert_eq!(g.real_param_count(), 2 * k * (n - k));
        check_projection(&grassmann_projection(&g), k)?;
    }

    #[test]
    fn stiefel_projections(p in arb_scheme_params(SchemeTag::StiefelFull, 1..=12)) {
        let frame = stiefel_frame(&p).unwrap();
        check_projection(&frame.projection(), frame.k())?;
    }

    #[test]
    fn leading_block_of_product_gives_frame_projection(p in arb_scheme_params(SchemeTag::StiefelReduced, 1..=12)) {
        let (n, k) = (p.scheme().n(), p.scheme().k());
        let a = compose(&p);
        let d = ComplexMatrix::from_real_diagonal(&(0..n).map(|i| if i < k { 1.0 } else { 0.0 }).collect::<Vec<_>>());
        let lhs = a.matmul(&d).unwrap().matmul(&a.adjoint()).unwrap();
        let c = stiefel_frame(&p).unwrap();
        prop_assert!(lhs.max_abs_diff(&c.projection()).unwrap() <= 1e-12 * n as f64);
    }

    #[test]
    fn complement_sums_to_identity(seed in any::<u64>(), n in 2usize..=12, k_seed in any::<usize>()) {
        let k = 1 + k_seed % (n - 1);
        let g = random_grassmann_point(&mut rng(seed), n, k).unwrap();
        let c = g.complement();
        prop_assert_eq!(c.k(), n - k);
        let sum = grassmann_projection(&g).add(&grassmann_projection(&c)).unwrap();
        prop_assert!(sum.max_abs_diff(&ComplexMatrix::identity(n)).unwrap() <= 1e-12 * n as f64);
    }

    #[test]
    fn complement_matches_gram_schmidt(seed in any::<u64>(), n in 3usize..=12, k_seed in any::<usize>()) {
        // 2k > n: the point is stored through its complement
        let k = n / 2 + 1 + k_seed % (n - n / 2 - 1);
        let g = random_grassmann_point(&mut rng(seed), n, k).unwrap();
        prop_assert!(g.is_complemented());
        let inner = compose(g.params()).leading_columns(n - k).unwrap();
        let oracle = complement_oracle(&inner);
        prop_assert!(grassmann_projection(&g).max_abs_diff(&oracle).unwrap() <= 1e-12 * n as f64);
    }
}

#[test]
fn grassmann_count_is_symmetric() {
    for n in 2..=12 {
        for k in 1..=n / 2 {
            let s = Scheme::new(SchemeTag::Grassmann, n, k).unwrap();
            assert_eq!(param_count(&s), 2 * k * (n - k));
            assert_eq!(GrassmannPoint::base(n, n - k).unwrap().real_param_count(), 2 * k * (n - k));
        }
    }
}

/// Entry `(r, c)` (1-based) of an `m × m` factor with angles `t_1..t_{m−1}`
/// and row phases `p_1..p_{m−1}`, following the printed pattern: row 1 is
/// `sign · (cos t_1, −sin t_1, 0, …)`; row `r > 1` is `e^{i p_{r−1}}` times
/// `(sin t_1 ⋯ sin t_{r−1} cos t_r, …, cos t_{c−1} sin t_c ⋯ sin t_{r−1} cos t_r, …, −sin t_r)`,
/// with the trailing `cos t_r` absent on the last row.
fn printed_entry(t: &[f64], p: &[f64], sign: f64, r: usize, c: usize) -> Complex {
    let m = t.len() + 1;
    let s = |i: usize| t[i - 1].sin();
    let co = |i: usize| t[i - 1].cos();
    let tail = if r < m { co(r) } else { 1.0 };
    let row_phase = if r == 1 { Complex::new(sign, 0.0) } else { e(p[r - 2]) };
    let magnitude = if c == 1 {
        (1..r).map(s).product::<f64>() * tail
    } else if c <= r {
        co(c - 1) * (c..r).map(s).product::<f64>() * tail
    } else if c == r + 1 {
        -s(r)
    } else {
        0.0
    };
    row_phase * magnitude
}

fn printed_factor(n: usize, offset: usize, t: &[f64], p: &[f64], sign: f64) -> ComplexMatrix {
    let m = t.len() + 1;
    let mut f = ComplexMatrix::identity(n);
    for r in 1..=m {
        for c in 1..=m {
            f[(offset + r - 1, offset + c - 1)] = printed_entry(t, p, sign, r, c);
        }
    }
    f
}

/// The four factors of A(8,4) as printed. Factors three and four are spelled
/// out entry by entry. Two printed entries are corrected: factor one, row 2,
/// column 3 is `−e^{iα₁} sin a₂`; factor three, last block row, column 3 is
/// `e^{iγ₃} cos c₂ sin c₃`.
fn a84_factors(v: &[f64]) -> [ComplexMatrix; 4] {
    let (a, al) = (&v[0..7], &v[7..14]);
    let (b, be) = (&v[14..19], &v[19..24]);
    let (c, ga) = (&v[24..27], &v[27..30]);
    let (d, de) = (v[30], v[31]);

    let f1 = printed_factor(8, 0, a, al, 1.0);
    let f2 = printed_factor(8, 1, b, be, -1.0);

    let (s1, c1) = c[0].sin_cos();
    let (s2, c2) = c[1].sin_cos();
    let (s3, c3) = c[2].sin_cos();
    let (g1, g2, g3) = (e(ga[0]), e(ga[1]), e(ga[2]));
    let z = Complex::new(0.0, 0.0);
    let r = |x: f64| Complex::new(x, 0.0);
    let block3 = [
        [r(-c1), r(s1), z, z],
        [g1 * (s1 * c2), g1 * (c1 * c2), g1 * -s2, z],
        [g2 * (s1 * s2 * c3), g2 * (c1 * s2 * c3), g2 * (c2 * c3), g2 * -s3],
        [g3 * (s1 * s2 * s3), g3 * (c1 * s2 * s3), g3 * (c2 * s3), g3 * c3],
    ];
    let mut f3 = ComplexMatrix::identity(8);
    for i in 0..4 {
        for j in 0..4 {
            f3[(2 + i, 2 + j)] = block3[i][j];
        }
    }

    let (sd, cd) = d.sin_cos();
    let mut f4 = ComplexMatrix::identity(8);
    f4[(3, 3)] = r(-cd);
    f4[(3, 4)] = r(sd);
    f4[(4, 3)] = e(de) * sd;
    f4[(4, 4)] = e(de) * cd;
    [f1, f2, f3, f4]
}

fn random_a84_values(r: &mut impl Rng) -> Vec<f64> {
    let counts = [(7, 7), (5, 5), (3, 3), (1, 1)];
    let mut v = Vec::with_capacity(32);
    for (angles, phases) in counts {
        v.extend((0..angles).map(|_| r.random_range(0.0..std::f64::consts::FRAC_PI_2)));
        v.extend((0..phases).map(|_| r.random_range(0.0..std::f64::consts::TAU)));
    }
    v
}

#[test]
fn a84_matches_printed_factors() {
    let scheme = Scheme::new(SchemeTag::Grassmann, 8, 4).unwrap();
    let mut r = rng(84);
    for _ in 0..100 {
        let v = random_a84_values(&mut r);
        let p = ParamSet::from_flat(scheme, &v).unwrap();
        let printed = a84_factors(&v);
        let hand = printed.iter().fold(ComplexMatrix::identity(8), |acc, f| acc.matmul(f).unwrap());
        let g = GrassmannPoint::new(8, 4, p.clone()).unwrap();
        assert!(grassmann_matrix(&g).unwrap().max_abs_diff(&hand).unwrap() <= 1e-13);

        let lib = factors(&p);
        for (x, y) in lib.iter().zip(&printed) {
            assert!(x.max_abs_diff(y).unwrap() <= 1e-15);
        }
        // leading block rows (−cos, +sin) of the last three factors
        for (f, i, angle) in [(1, 1, v[14]), (2, 2, v[24]), (3, 3, v[30])] {
            let (head, next) = (lib[f][(i, i)], lib[f][(i, i + 1)]);
            assert!(head.im == 0.0 && next.im == 0.0);
            assert!(head.re.is_sign_negative() && next.re.is_sign_positive());
            assert!((head.re + angle.cos()).abs() <= 1e-15);
        }
    }
}

#[test]
fn a84_reduces_to_n7() {
    let mut r = rng(7);
    // a7, α7, b5, β5, c3, γ3, d1, δ1
    let dropped = [6, 13, 18, 23, 26, 29, 30, 31];
    for _ in 0..50 {
        let mut v = random_a84_values(&mut r);
        for &i in &dropped {
            v[i] = 0.0;
        }
        let a8 = compose(&ParamSet::from_flat(Scheme::new(SchemeTag::Grassmann, 8, 4).unwrap(), &v).unwrap());
        for i in 0..7 {
            assert!(a8[(i, 7)].norm() <= 1e-15 && a8[(7, i)].norm() <= 1e-15);
        }
        let reduced = a8.submatrix(0, 0, 7, 7).unwrap();

        let kept: Vec<f64> = (0..30).filter(|i| !dropped.contains(i)).map(|i| v[i]).collect();
        let p7 = ParamSet::from_flat(Scheme::new(SchemeTag::Grassmann, 7, 3).unwrap(), &kept).unwrap();
        let a7 = grassmann_matrix(&GrassmannPoint::new(7, 3, p7).unwrap()).unwrap();
        let sign = ComplexMatrix::from_real_diagonal(&[1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0]);
        assert!(reduced.max_abs_diff(&a7.matmul(&sign).unwrap()).unwrap() <= 1e-14);
        for k in 1..=3 {
            let lhs = reduced.leading_columns(k).unwrap().gram_outer();
            let rhs = a7.leading_columns(k).unwrap().gram_outer();
            assert!(lhs.max_abs_diff(&rhs).unwrap() <= 1e-14);
        }
    }
}

#[test]
fn stiefel_variants_share_frames_up_to_phase() {
    let mut r = rng(3);
    for n in 1..=8 {
        for k in 1..=n {
            let p = random_params(&mut r, Scheme::new(SchemeTag::StiefelReduced, n, k).unwrap());
            let c = stiefel_frame(&p).unwrap();
            assert!(c.matrix().isometry_residual() <= 1e-12 * n as f64);
            for z in c.matrix().row(0) {
                assert!(z.im.abs() <= 1e-13 && z.re >= -1e-13);
            }
        }
    }
}
