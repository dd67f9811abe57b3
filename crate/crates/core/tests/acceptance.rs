//! Acceptance checks, one line per criterion.
//!
//! Run with `cargo test --test acceptance`. Expected values come from
//! closed forms, brute force, or an independent linear-algebra oracle
//! (nalgebra), never from the code under test.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use ghzcanon::canon::{canonicalize, random_anticommuting_pair, verify, Block, BlockSpec, CanonicalForm};
use ghzcanon::ghz::{build_ghz_set, ghz_state, lhv_search, triviality_report, LocalPair, TupleKind};
use ghzcanon::matkit::{c64, conjugate, sigma_x, sigma_y, Complex64, ComplexMatrix, HermitianOperator};
use ghzcanon::omega::{classify, phase_theorem_scan, OmegaKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn herm(rows: &[Vec<Complex64>]) -> HermitianOperator {
    HermitianOperator::new(ComplexMatrix::from_rows(rows).unwrap()).unwrap()
}

fn re(x: f64) -> Complex64 {
    c64(x, 0.0)
}

/// `diag(1, −1, …, −1)` with `B` coupling the first basis vector to the rest.
fn star_pair(couplings: &[Complex64]) -> (HermitianOperator, HermitianOperator) {
    let n = couplings.len() + 1;
    let mut diag = vec![-1.0; n];
    diag[0] = 1.0;
    let mut rows = vec![vec![re(0.0); n]; n];
    for (k, &c) in couplings.iter().enumerate() {
        rows[0][k + 1] = c;
        rows[k + 1][0] = c.conj();
    }
    (HermitianOperator::diag(&diag), herm(&rows))
}

fn verify_tight(a: &HermitianOperator, b: &HermitianOperator, cf: &CanonicalForm) -> Result<(), String> {
    let v = verify(a, b, cf, 1e-10);
    ensure(v.passed && v.residual_a <= 1e-10 && v.residual_b <= 1e-10, || format!("verify: {v:?}"))
}

fn expect_blocks(cf: &CanonicalForm, pairs: &[(f64, f64)], singletons: &[(f64, f64)], tol: f64) -> Result<(), String> {
    let got_p: Vec<(f64, f64)> = cf.pair_blocks().map(|p| (p.a, p.b)).collect();
    let got_s: Vec<(f64, f64)> = cf.singletons().map(|s| (s.alpha, s.beta)).collect();
    let close = |x: &[(f64, f64)], y: &[(f64, f64)]| {
        x.len() == y.len() && x.iter().zip(y).all(|(p, q)| (p.0 - q.0).abs() <= tol && (p.1 - q.1).abs() <= tol)
    };
    ensure(close(&got_p, pairs) && close(&got_s, singletons), || {
        format!("blocks {got_p:?} + {got_s:?}, expected {pairs:?} + {singletons:?}")
    })
}

fn c1_qubit_pair() -> Result<String, String> {
    for b in [re(1.0), re(2.0), c64(1.0, 1.0)] {
        let (a, bm) = star_pair(&[b]);
        let class = classify(&a, &bm, 1e-9).map_err(|e| e.to_string())?;
        ensure(class.kind == OmegaKind::Anticommute, || format!("b = {b}: {:?}", class.kind))?;
        let cf = canonicalize(&a, &bm, 1e-9).map_err(|e| e.to_string())?;
        expect_blocks(&cf, &[(1.0, b.norm())], &[], 1e-12)?;
        verify_tight(&a, &bm, &cf)?;
    }
    Ok("b in {1, 2, 1+i}: one pair block (1, |b|)".into())
}

fn c2_spin_one() -> Result<String, String> {
    let (a, b) = star_pair(&[re(3.0), re(4.0)]);
    let cf = canonicalize(&a, &b, 1e-9).map_err(|e| e.to_string())?;
    let norm = (3.0f64 * 3.0 + 4.0 * 4.0).sqrt();
    expect_blocks(&cf, &[(1.0, norm)], &[(-1.0, 0.0)], 1e-12)?;
    verify_tight(&a, &b, &cf)?;
    Ok(format!("Pair(1, {norm}) + Singleton(-1, 0)"))
}

fn c3_spin_three_halves() -> Result<String, String> {
    let (a, b) = star_pair(&[re(2.0), re(3.0), re(6.0)]);
    let cf = canonicalize(&a, &b, 1e-9).map_err(|e| e.to_string())?;
    let norm = (4.0f64 + 9.0 + 36.0).sqrt();
    expect_blocks(&cf, &[(1.0, norm)], &[(-1.0, 0.0), (-1.0, 0.0)], 1e-12)?;
    verify_tight(&a, &b, &cf)?;
    Ok(format!("Pair(1, {norm}) + 2 x Singleton(-1, 0)"))
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Vec<Vec<Complex64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| c64(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect())
        .collect()
}

/// Singular values from nalgebra, descending.
fn oracle_singular_values(m: &[Vec<Complex64>]) -> Vec<f64> {
    let (r, c) = (m.len(), m[0].len());
    let na = nalgebra::DMatrix::<nalgebra::Complex<f64>>::from_fn(r, c, |i, j| nalgebra::Complex::new(m[i][j].re, m[i][j].im));
    let mut s: Vec<f64> = na.singular_values().iter().copied().collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

fn c4_cross_block_svd() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..10 {
        let k = 1 + trial % 4;
        let cross = gaussian_matrix(&mut rng, k, k);
        // A = diag(1,…,1, −1,…,−1), B = [[0, C], [C^H, 0]]
        let n = 2 * k;
        let diag: Vec<f64> = (0..n).map(|i| if i < k { 1.0 } else { -1.0 }).collect();
        let mut rows = vec![vec![re(0.0); n]; n];
        for i in 0..k {
            for j in 0..k {
                rows[i][k + j] = cross[i][j];
                rows[k + j][i] = cross[i][j].conj();
            }
        }
        let (a, b) = (HermitianOperator::diag(&diag), herm(&rows));
        let cf = canonicalize(&a, &b, 1e-9).map_err(|e| e.to_string())?;
        let mut got: Vec<f64> = cf.pair_blocks().map(|p| p.b).collect();
        got.sort_by(|x, y| y.total_cmp(x));
        let want = oracle_singular_values(&cross);
        ensure(got.len() == want.len() && got.iter().zip(&want).all(|(g, w)| (g - w).abs() <= 1e-9), || {
            format!("trial {trial}: b-values {got:?}, singular values {want:?}")
        })?;
        ensure(cf.pair_blocks().all(|p| (p.a - 1.0).abs() <= 1e-9), || format!("trial {trial}: a != 1"))?;
        verify_tight(&a, &b, &cf)?;
    }
    Ok("10 random cross blocks, sizes 1-4".into())
}

/// Spec generator for the round-trip check, independent of the library's own.
fn round_trip_spec(rng: &mut ChaCha8Rng, dim: usize) -> Vec<BlockSpec> {
    let shared_a = [0.5, 1.0, 1.5];
    let mut out = Vec::new();
    let mut left = dim;
    while left > 0 {
        if left >= 2 && rng.random_bool(0.55) {
            let a = if rng.random_bool(0.5) { shared_a[rng.random_range(0..3)] } else { rng.random_range(0.25..4.0) };
            out.push(BlockSpec::Pair { a, b: rng.random_range(0.25..4.0) });
            left -= 2;
        } else {
            let v: f64 = if rng.random_bool(0.25) { 0.0 } else { rng.random_range(-3.0..3.0) };
            out.push(if rng.random_bool(0.5) {
                BlockSpec::Singleton { alpha: v, beta: 0.0 }
            } else {
                BlockSpec::Singleton { alpha: 0.0, beta: v }
            });
            left -= 1;
        }
    }
    out
}

fn key(s: &BlockSpec) -> (u8, f64, f64) {
    match *s {
        BlockSpec::Pair { a, b } => (0, a, b),
        BlockSpec::Singleton { alpha, beta } => (1, alpha, beta),
    }
}

/// Sort both multisets and compare position by position. The leading value is
/// quantized to 1e-6 for sorting so that blocks sharing it exactly are then
/// ordered by their second value regardless of rounding noise.
fn multiset_close(x: &[BlockSpec], y: &[BlockSpec], tol: f64) -> bool {
    let sorted = |v: &[BlockSpec]| {
        let mut k: Vec<_> = v.iter().map(key).collect();
        let bucket = |x: f64| (x * 1e6).round() as i64;
        k.sort_by(|p, q| p.0.cmp(&q.0).then(bucket(p.1).cmp(&bucket(q.1))).then(p.2.total_cmp(&q.2)));
        k
    };
    let (sx, sy) = (sorted(x), sorted(y));
    sx.len() == sy.len()
        && sx.iter().zip(&sy).all(|(p, q)| p.0 == q.0 && (p.1 - q.1).abs() <= tol && (p.2 - q.2).abs() <= tol)
}

/// Sorted alignment is unambiguous when blocks of the same kind either share
/// their leading value exactly or differ in it by more than 1e-6.
fn well_separated(spec: &[BlockSpec]) -> bool {
    spec.iter().enumerate().all(|(i, p)| {
        spec[i + 1..].iter().all(|q| {
            let (kp, kq) = (key(p), key(q));
            kp.0 != kq.0 || kp.1 == kq.1 || (kp.1 - kq.1).abs() > 1e-6
        })
    })
}

fn c5_round_trip() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut with_zero, mut with_shared_a) = (0, 0);
    for case in 0..200u64 {
        let dim = 2 + (case as usize % 15);
        let spec = round_trip_spec(&mut rng, dim);
        if !well_separated(&spec) {
            return Err(format!("case {case}: generator produced near-duplicate blocks"));
        }
        if spec.iter().any(|s| matches!(s, BlockSpec::Singleton { alpha, .. } if *alpha == 0.0)) {
            with_zero += 1;
        }
        let a_values: Vec<f64> = spec
            .iter()
            .filter_map(|s| if let BlockSpec::Pair { a, .. } = s { Some(*a) } else { None })
            .collect();
        if a_values.iter().enumerate().any(|(i, x)| a_values[i + 1..].contains(x)) {
            with_shared_a += 1;
        }
        let (a, b) = random_anticommuting_pair(&spec, 10_000 + case).map_err(|e| e.to_string())?;
        let cf = canonicalize(&a, &b, 1e-9).map_err(|e| format!("case {case} (dim {dim}): {e}"))?;
        ensure(multiset_close(&spec, &cf.specs(), 1e-9), || {
            format!("case {case}: generated {spec:?}, recovered {:?}", cf.specs())
        })?;
        ensure(verify(&a, &b, &cf, 1e-10).passed, || format!("case {case}: verify failed"))?;
    }
    ensure(with_zero > 20 && with_shared_a > 20, || {
        format!("coverage too thin: {with_zero} with zero eigenvalue, {with_shared_a} with shared a")
    })?;
    Ok(format!("200 specs, dims 2-16 ({with_zero} with A-kernel, {with_shared_a} with repeated a)"))
}

fn c6_phase_scan() -> Result<String, String> {
    let mut total = 0;
    let mut off_axis = 0;
    for (dim, trials) in [(2, 3334), (3, 3333), (4, 3333)] {
        let r = phase_theorem_scan(dim, trials, 6000 + dim as u64).map_err(|e| e.to_string())?;
        ensure(r.counterexamples == 0, || format!("dim {dim}: {} counterexamples", r.counterexamples))?;
        total += r.total;
        off_axis += r.off_axis_attempts;
    }
    ensure(total == 10_000, || format!("{total} pairs scanned"))?;
    Ok(format!("{total} pairs, 0 counterexamples ({off_axis} off-axis attempts)"))
}

fn kron(x: &ComplexMatrix, y: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (x.rows(), y.rows());
    let mut rows = vec![vec![re(0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    rows[i * m + k][j * m + l] = x[(i, j)] * y[(k, l)];
                }
            }
        }
    }
    ComplexMatrix::from_rows(&rows).unwrap()
}

fn c7_ghz_signature() -> Result<String, String> {
    let gs = build_ghz_set(&vec![LocalPair::pauli(); 3], 1e-9).map_err(|e| e.to_string())?;
    let (x, y) = (sigma_x(), sigma_y());
    let xxx = kron(&kron(&x, &x), &x);
    let expected_ops = [kron(&kron(&x, &y), &y), kron(&kron(&y, &x), &y), kron(&kron(&y, &y), &x), xxx.clone()];
    let observables = gs.constrained_observables();
    for (k, (o, e)) in observables.iter().zip(&expected_ops).enumerate() {
        ensure(o.matrix() == e, || format!("operator {k} differs from the Pauli product"))?;
    }
    let product = &(gs.operators[0].matrix() * gs.operators[1].matrix()) * gs.operators[2].matrix();
    ensure(product == -&xxx, || "O1 O2 O3 != -XXX exactly".into())?;

    // (|000> - |111>)/√2 written out by hand
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut psi = vec![re(0.0); 8];
    psi[0] = re(h);
    psi[7] = re(-h);
    let lib_psi = ghz_state(3).map_err(|e| e.to_string())?;
    ensure(lib_psi.amplitudes() == psi.as_slice(), || "ghz_state(3) layout".into())?;
    let mut values = Vec::new();
    for (k, op) in expected_ops.iter().enumerate() {
        let image: Vec<Complex64> = (0..8).map(|i| (0..8).map(|j| op[(i, j)] * psi[j]).sum()).collect();
        let lambda: Complex64 = psi.iter().zip(&image).map(|(p, q)| p.conj() * q).sum();
        let residual: f64 = image.iter().zip(&psi).map(|(q, p)| (q - p * lambda).norm_sqr()).sum::<f64>().sqrt();
        ensure(residual <= 1e-12 && lambda.im.abs() <= 1e-12, || format!("operator {k}: residual {residual}"))?;
        values.push(lambda.re);
    }
    let want = [1.0, 1.0, 1.0, -1.0];
    ensure(values.iter().zip(want).all(|(v, w)| (v - w).abs() <= 1e-12), || format!("eigenvalues {values:?}"))?;
    let lib = ghzcanon::ghz::joint_eigenvalues(
        &observables.iter().map(|o| o.matrix()).collect::<Vec<_>>(),
        &lib_psi,
        1e-12,
    )
    .map_err(|e| e.to_string())?;
    ensure(lib.iter().zip(want).all(|(v, w)| (v - w).abs() <= 1e-12), || format!("library eigenvalues {lib:?}"))?;
    Ok("eigenvalues (1, 1, 1, -1); O1 O2 O3 = -XXX exactly".into())
}

/// Count sign assignments by looping over all 2^6 bit patterns.
fn brute_force(targets: [f64; 4]) -> usize {
    (0u32..64)
        .filter(|mask| {
            let v = |bit: u32| if mask >> bit & 1 == 1 { 1.0 } else { -1.0 };
            let (x1, y1, x2, y2, x3, y3) = (v(0), v(1), v(2), v(3), v(4), v(5));
            [x1 * y2 * y3, y1 * x2 * y3, y1 * y2 * x3, x1 * x2 * x3] == targets
        })
        .count()
}

fn c8_lhv() -> Result<String, String> {
    let gs = build_ghz_set(&vec![LocalPair::pauli(); 3], 1e-9).map_err(|e| e.to_string())?;
    let quantum = lhv_search(&gs, &[1.0, 1.0, 1.0, -1.0], 1e-9).map_err(|e| e.to_string())?;
    let classical = lhv_search(&gs, &[1.0; 4], 1e-9).map_err(|e| e.to_string())?;
    ensure(quantum.total_assignments == 64 && classical.total_assignments == 64, || "not 64 assignments".into())?;
    let (q, c) = (quantum.satisfying.len(), classical.satisfying.len());
    ensure(q == 0 && q == brute_force([1.0, 1.0, 1.0, -1.0]), || format!("{q} satisfy (1,1,1,-1)"))?;
    ensure(c == 8 && c == brute_force([1.0; 4]), || format!("{c} satisfy (1,1,1,1)"))?;
    Ok("64 assignments: 0 satisfy (1,1,1,-1), 8 satisfy (1,1,1,1)".into())
}

fn c9_triviality() -> Result<String, String> {
    let (a, b) = star_pair(&[re(3.0), re(4.0)]);
    let pair = LocalPair::new(a, b).map_err(|e| e.to_string())?;
    let pairs = vec![pair; 3];
    let report = triviality_report(&pairs, 1e-9).map_err(|e| e.to_string())?;
    ensure(report.total_dim == 27 && report.partition_complete, || "partition".into())?;
    ensure(report.max_off_tuple <= 1e-10, || format!("max off-tuple entry {}", report.max_off_tuple))?;

    // independent zero-pattern check from the local transforms alone
    let t = &report.local_forms;
    let joint = kron(&kron(t[0].transform.matrix(), t[1].transform.matrix()), t[2].transform.matrix());
    let joint = ghzcanon::matkit::UnitaryMatrix::new(joint).map_err(|e| e.to_string())?;
    let owner = |f: &CanonicalForm| {
        let mut o = vec![0; f.dim];
        for (k, blk) in f.blocks.iter().enumerate() {
            let idx = match blk {
                Block::Pair(p) => vec![p.index_pair.0, p.index_pair.1],
                Block::Singleton(s) => vec![s.index],
            };
            for i in idx {
                o[i] = k;
            }
        }
        o
    };
    let owners: Vec<Vec<usize>> = t.iter().map(owner).collect();
    let tuple = |i: usize| [owners[0][i / 9], owners[1][(i / 3) % 3], owners[2][i % 3]];
    let gs = build_ghz_set(&pairs, 1e-9).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for o in gs.constrained_observables() {
        let c = conjugate(&joint, o.matrix()).map_err(|e| e.to_string())?;
        for r in 0..27 {
            for col in 0..27 {
                if tuple(r) != tuple(col) {
                    worst = worst.max(c[(r, col)].norm());
                }
            }
        }
    }
    ensure(worst <= 1e-10, || format!("recomputed off-tuple entry {worst}"))?;

    let copies: Vec<_> = report.ghz_copies().collect();
    ensure(copies.len() == 1 && copies[0].dim() == 8, || format!("{} spin-1/2 copies", copies.len()))?;
    match &copies[0].kind {
        TupleKind::GhzCopy { lhv_satisfying: Some(0), lhv_total: Some(64), .. } => {}
        other => return Err(format!("copy does not reproduce the contradiction: {other:?}")),
    }
    Ok(format!("27 dims, off-tuple max {worst:.1e}, one 8-dim copy with 0 of 64 assignments"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run_bin(args: &[&std::ffi::OsStr]) -> (Option<i32>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_ghzcanon")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout)
}

fn c10_cli() -> Result<String, String> {
    let (a, b) = (data("spin1_a.json"), data("spin1_b.json"));
    let canon = |a: &Path, b: &Path| run_bin(&["canon".as_ref(), "--a".as_ref(), a.as_os_str(), "--b".as_ref(), b.as_os_str()]);
    let (code1, out1) = canon(&a, &b);
    let (code2, out2) = canon(&a, &b);
    ensure(code1 == Some(0) && code2 == Some(0), || format!("exit codes {code1:?}, {code2:?}"))?;
    ensure(out1 == out2 && !out1.is_empty(), || "reports differ between runs".into())?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"dim\": 2, \"entries\": [[[0, 0], [1, 0]],").map_err(|e| e.to_string())?;
    let (code, _) = canon(&broken, &b);
    ensure(code == Some(1), || format!("parse error exit {code:?}"))?;

    let (code, out) = canon(&data("commuting_a.json"), &data("commuting_b.json"));
    ensure(code == Some(2), || format!("wrong-class exit {code:?}"))?;
    let report: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    ensure(report["omega"]["kind"] == "Commute", || "classification missing from report".into())?;
    Ok("identical reports; exit codes 0 / 1 / 2".into())
}

fn main() {
    let criteria: [(u32, &str, Check, Duration); 10] = [
        (1, "qubit pair golden", c1_qubit_pair, Duration::from_secs(1)),
        (2, "spin-1 golden", c2_spin_one, Duration::from_secs(1)),
        (3, "spin-3/2 golden", c3_spin_three_halves, Duration::from_secs(1)),
        (4, "cross-block singular values", c4_cross_block_svd, Duration::from_secs(1)),
        (5, "canonical round-trip", c5_round_trip, Duration::from_secs(30)),
        (6, "phase relation scan", c6_phase_scan, Duration::from_secs(60)),
        (7, "GHZ quantum signature", c7_ghz_signature, Duration::from_secs(1)),
        (8, "LHV contradiction", c8_lhv, Duration::from_secs(1)),
        (9, "higher-spin triviality", c9_triviality, Duration::from_secs(5)),
        (10, "CLI determinism and exit codes", c10_cli, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (n, name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed <= limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(msg) => println!("PASS criterion {n:>2} {name}: {msg} [{elapsed:.2?}]"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n:>2} {name}: {msg} [{elapsed:.2?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
