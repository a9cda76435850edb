use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use flagmat::{MatrixDocument, ParamsDocument};
use flagmat_core::{hermitian_eig, Complex, ComplexMatrix};
use tempfile::TempDir;

fn flagmat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flagmat")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn flat(p: &ParamsDocument) -> Vec<f64> {
    p.factors.iter().flat_map(|f| f.angles.iter().chain(&f.phases).copied()).collect()
}

#[test]
fn fixed_seed_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a.json"), path(&dir, "b.json"));
    for p in [&a, &b] {
        let out = flagmat(&["generate", "--scheme", "flag", "--n", "3", "--seed", "7", "--out", s(p)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = flagmat(&["generate", "--scheme", "flag", "--n", "3", "--seed", "8"]);
    assert_ne!(other.stdout, std::fs::read(&a).unwrap());
}

#[test]
fn grassmann_8_4_has_32_parameters() {
    let out = flagmat(&["generate", "--scheme", "grassmann", "--n", "8", "--k", "4", "--seed", "1"]);
    assert_eq!(code(&out), 0);
    let doc = MatrixDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!(doc.params.unwrap().real_param_count(), 32);
}

#[test]
fn two_level_document_has_two_eigenvalues() {
    let out = flagmat(&["generate", "--scheme", "hermitian", "--kind", "two-level", "--n", "4", "--k", "2", "--theta", "0.7"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = MatrixDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let eig = hermitian_eig(&doc.matrix().unwrap(), 1e-14).unwrap();
    let mut distinct: Vec<f64> = Vec::new();
    for x in eig.eigenvalues {
        if distinct.iter().all(|d| (d - x).abs() > 1e-9) {
            distinct.push(x);
        }
    }
    assert_eq!(distinct.len(), 2);
    assert!((distinct[0] - 0.7f64.cos().powi(2)).abs() < 1e-12);
}

#[test]
fn factorize_round_trip() {
    let dir = TempDir::new().unwrap();
    for (scheme, extra) in [("full", vec![]), ("flag", vec![]), ("stiefel-full", vec!["--k", "2"]), ("orthogonal", vec![])] {
        let (g, f) = (path(&dir, "g.json"), path(&dir, "f.json"));
        let mut args = vec!["generate", "--scheme", scheme, "--n", "5", "--seed", "3", "--out", s(&g)];
        args.extend(&extra);
        assert_eq!(code(&flagmat(&args)), 0);
        let mut args = vec!["factorize", "--input", s(&g), "--scheme", scheme, "--out", s(&f)];
        args.extend(&extra);
        let out = flagmat(&args);
        assert_eq!(code(&out), 0, "{scheme}: {}", String::from_utf8_lossy(&out.stderr));

        let original = MatrixDocument::load(&g).unwrap();
        let recovered = MatrixDocument::load(&f).unwrap();
        let (a, b) = (flat(original.params.as_ref().unwrap()), flat(recovered.params.as_ref().unwrap()));
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            let d = (x - y).rem_euclid(std::f64::consts::TAU);
            assert!(d.min(std::f64::consts::TAU - d) <= 1e-9, "{scheme}: {x} vs {y}");
        }

        // regenerate from the recovered parameters
        let again = flagmat(&["generate", "--params", s(&f)]);
        assert_eq!(code(&again), 0);
        let doc = MatrixDocument::from_json(std::str::from_utf8(&again.stdout).unwrap()).unwrap();
        let diff = doc.matrix().unwrap().max_abs_diff(&original.matrix().unwrap()).unwrap();
        assert!(diff <= 5e-10, "{scheme}: {diff}");
    }
}

#[test]
fn factorize_identity_gives_zeros() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "i.json");
    let doc = MatrixDocument::new(flagmat::DocumentKind::Unitary, &ComplexMatrix::identity(4), None, flagmat::Meta::new(None));
    doc.save(&input).unwrap();
    let out = flagmat(&["factorize", "--input", s(&input), "--scheme", "full"]);
    assert_eq!(code(&out), 0);
    let params = MatrixDocument::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap().params.unwrap();
    assert!(flat(&params).iter().all(|&x| x == 0.0));
}

#[test]
fn factorize_rejects_hermitian_input() {
    let dir = TempDir::new().unwrap();
    let h = path(&dir, "h.json");
    let out = flagmat(&["generate", "--scheme", "hermitian", "--kind", "positive", "--n", "3", "--h", "2", "--out", s(&h)]);
    assert_eq!(code(&out), 0);
    let out = flagmat(&["factorize", "--input", s(&h), "--scheme", "full"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not unitary"));
}

#[test]
fn verify_exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = path(&dir, "g.json");
    assert_eq!(code(&flagmat(&["generate", "--scheme", "full", "--n", "4", "--out", s(&g)])), 0);
    assert_eq!(code(&flagmat(&["verify", "--input", s(&g), "--suite", "unitary"])), 0);

    let mut doc = MatrixDocument::load(&g).unwrap();
    doc.data[5][0] += 1e-3;
    let bad = path(&dir, "bad.json");
    doc.save(&bad).unwrap();
    let out = flagmat(&["verify", "--input", s(&bad), "--suite", "unitary"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    assert_eq!(code(&flagmat(&["verify", "--input", s(&bad), "--suite", "unitary", "--tol", "1e-2"])), 0);
    assert_eq!(code(&flagmat(&["factorize", "--input", s(&bad), "--scheme", "full", "--validate"])), 1);
}

#[test]
fn projection_and_main_theorem_suites() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "p.json");
    assert_eq!(code(&flagmat(&["generate", "--scheme", "grassmann", "--n", "7", "--k", "5", "--emit", "projection", "--out", s(&p)])), 0);
    let out = flagmat(&["verify", "--input", s(&p), "--suite", "projection"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("trace = 5.0000"));

    let c = path(&dir, "c.json");
    assert_eq!(code(&flagmat(&["generate", "--scheme", "stiefel-reduced", "--n", "6", "--k", "3", "--emit", "isometry", "--out", s(&c)])), 0);
    assert_eq!(code(&flagmat(&["verify", "--input", s(&c), "--suite", "main-theorem"])), 0);
    assert_eq!(code(&flagmat(&["verify", "--input", s(&c), "--suite", "isometry"])), 0);

    let mut doc = MatrixDocument::load(&c).unwrap();
    let m = doc.matrix().unwrap();
    let shrunk = ComplexMatrix::from_fn(6, 3, |i, j| if j == 0 { m[(i, j)] * 0.9 } else { m[(i, j)] });
    doc.data = shrunk.as_slice().iter().map(|z: &Complex| [z.re, z.im]).collect();
    doc.save(&c).unwrap();
    assert_eq!(code(&flagmat(&["verify", "--input", s(&c), "--suite", "main-theorem"])), 1);
}

#[test]
fn usage_and_io_errors_exit_2() {
    assert_eq!(code(&flagmat(&["generate", "--scheme", "nope", "--n", "3"])), 2);
    assert_eq!(code(&flagmat(&["generate", "--scheme", "stiefel-full", "--n", "3"])), 2);
    assert_eq!(code(&flagmat(&["verify", "--input", "/nonexistent/x.json", "--suite", "unitary"])), 2);
    let dir = TempDir::new().unwrap();
    let junk = path(&dir, "junk.json");
    std::fs::write(&junk, "{not json").unwrap();
    assert_eq!(code(&flagmat(&["verify", "--input", s(&junk), "--suite", "unitary"])), 2);
    assert_eq!(code(&flagmat(&["generate", "--scheme", "grassmann", "--n", "5", "--k", "3"])), 2);
}

#[test]
fn domain_errors_exit_1() {
    // grassmann needs 1 <= k < n
    assert_eq!(code(&flagmat(&["generate", "--scheme", "grassmann", "--n", "4", "--k", "4"])), 1);
    assert_eq!(code(&flagmat(&["spectrum", "--n", "3", "--kind", "positive", "--angles", "0.1"])), 1);
}

#[test]
fn batch_generation() {
    let out = flagmat(&["generate", "--scheme", "orthogonal", "--n", "3", "--count", "3", "--validate"]);
    assert_eq!(code(&out), 0);
    let docs: Vec<MatrixDocument> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(docs.len(), 3);
    assert_ne!(docs[0].data, docs[1].data);
}

#[test]
fn dim_table_prints() {
    let out = flagmat(&["dim", "--n", "8", "--k", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["grassmann", "8", "4", "32"]));
}
