use ghzcanon::canon::{canonicalize, random_anticommuting_pair, reconstruct, same_blocks, verify, BlockSpec};
use ghzcanon::cli::{matrix_to_string, parse_matrix, round_sig};
use ghzcanon::ghz::{ghz_constraints, lhv_search_sites};
use ghzcanon::matkit::{
    c64, conjugate_hermitian, eig_hermitian, random_hermitian, random_unitary, svd, ComplexMatrix, HermitianOperator,
};
use ghzcanon::omega::{classify, residual, OmegaKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn block() -> impl Strategy<Value = BlockSpec> {
    prop_oneof![
        (0.2f64..4.0, 0.2f64..4.0).prop_map(|(a, b)| BlockSpec::Pair { a, b }),
        // shared strengths exercise degenerate eigenspaces of A
        (prop::sample::select(vec![0.5, 1.0, 2.0]), 0.2f64..4.0).prop_map(|(a, b)| BlockSpec::Pair { a, b }),
        prop_oneof![Just(0.0), -3.0f64..3.0].prop_map(|v| BlockSpec::Singleton { alpha: v, beta: 0.0 }),
        prop_oneof![Just(0.0), -3.0f64..3.0].prop_map(|v| BlockSpec::Singleton { alpha: 0.0, beta: v }),
    ]
}

fn spec() -> impl Strategy<Value = Vec<BlockSpec>> {
    prop::collection::vec(block(), 1..7)
}

fn sorted_eigenvalues(h: &HermitianOperator) -> Vec<f64> {
    eig_hermitian(h).unwrap().eigenvalues
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_round_trip(spec in spec(), seed in any::<u64>()) {
        let (a, b) = random_anticommuting_pair(&spec, seed).unwrap();
        let cf = canonicalize(&a, &b, 1e-9).unwrap();
        // random draws can land closer than the tolerance; compare loosely
        prop_assert!(same_blocks(&spec, &cf.specs(), 1e-8), "{:?} vs {:?}", spec, cf.specs());
        prop_assert!(verify(&a, &b, &cf, 1e-10).passed);
        let scale = a.frobenius_norm().max(1.0) * b.frobenius_norm().max(1.0);
        prop_assert!(cf.singletons().all(|s| (s.alpha * s.beta).abs() <= 1e-9 * scale));
    }

    #[test]
    fn canonical_form_preserves_spectra(spec in spec(), seed in any::<u64>()) {
        let (a, b) = random_anticommuting_pair(&spec, seed).unwrap();
        let cf = canonicalize(&a, &b, 1e-9).unwrap();
        let (ca, cb) = reconstruct(&cf).unwrap();
        for (x, y) in [(&a, &ca), (&b, &cb)] {
            for (p, q) in sorted_eigenvalues(x).iter().zip(sorted_eigenvalues(y)) {
                prop_assert!((p - q).abs() <= 1e-9, "{} vs {}", p, q);
            }
        }
    }

    #[test]
    fn canonical_blocks_scale_with_operators(spec in spec(), seed in any::<u64>(), s in 0.5f64..3.0, t in 0.5f64..3.0) {
        let (a, b) = random_anticommuting_pair(&spec, seed).unwrap();
        let cf = canonicalize(&a, &b, 1e-9).unwrap();
        let sa = HermitianOperator::new(a.matrix().scale_real(s)).unwrap();
        let tb = HermitianOperator::new(b.matrix().scale_real(t)).unwrap();
        let scaled = canonicalize(&sa, &tb, 1e-9).unwrap();
        let expected: Vec<BlockSpec> = cf.specs().iter().map(|x| match *x {
            BlockSpec::Pair { a, b } => BlockSpec::Pair { a: s * a, b: t * b },
            BlockSpec::Singleton { alpha, beta } => BlockSpec::Singleton { alpha: s * alpha, beta: t * beta },
        }).collect();
        prop_assert!(same_blocks(&expected, &scaled.specs(), 1e-7));
    }

    #[test]
    fn canonical_blocks_invariant_under_conjugation(spec in spec(), seed in any::<u64>(), useed in any::<u64>()) {
        let (a, b) = random_anticommuting_pair(&spec, seed).unwrap();
        let u = random_unitary(a.dim(), &mut ChaCha8Rng::seed_from_u64(useed));
        let ua = conjugate_hermitian(&u, &a).unwrap();
        let ub = conjugate_hermitian(&u, &b).unwrap();
        let x = canonicalize(&a, &b, 1e-9).unwrap().specs();
        let y = canonicalize(&ua, &ub, 1e-9).unwrap().specs();
        prop_assert!(same_blocks(&x, &y, 1e-8), "{:?} vs {:?}", x, y);
    }

    #[test]
    fn classification_invariant_under_conjugation(dim in 2usize..5, seed in any::<u64>(), useed in any::<u64>(), commuting in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(dim, &mut rng);
        let b = if commuting {
            HermitianOperator::new(&(a.matrix() * a.matrix()) + a.matrix()).unwrap()
        } else {
            random_hermitian(dim, &mut rng)
        };
        let u = random_unitary(dim, &mut ChaCha8Rng::seed_from_u64(useed));
        let before = classify(&a, &b, 1e-9).unwrap();
        let after = classify(&conjugate_hermitian(&u, &a).unwrap(), &conjugate_hermitian(&u, &b).unwrap(), 1e-9).unwrap();
        prop_assert_eq!(before.kind, after.kind);
        if commuting {
            prop_assert_eq!(before.kind, OmegaKind::Commute);
        }
        prop_assert!((before.residual_anticommute - after.residual_anticommute).abs() <= 1e-9 * before.residual_anticommute.max(1.0));
    }

    #[test]
    fn residual_swaps_with_conjugate_phase(dim in 1usize..5, seed in any::<u64>(), theta in 0.0f64..std::f64::consts::TAU) {
        // AB − ωBA = −ω(BA − ω̄AB), and |ω| = 1
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_hermitian(dim, &mut rng);
        let b = random_hermitian(dim, &mut rng);
        let w = c64(theta.cos(), theta.sin());
        let x = residual(&a, &b, w).unwrap();
        let y = residual(&b, &a, w.conj()).unwrap();
        prop_assert!((x - y).abs() <= 1e-12 * x.max(1.0));
    }

    #[test]
    fn eigendecomposition_residual(dim in 1usize..10, seed in any::<u64>()) {
        let h = random_hermitian(dim, &mut ChaCha8Rng::seed_from_u64(seed));
        let e = eig_hermitian(&h).unwrap();
        prop_assert!(e.residual(h.matrix()) <= 1e-10 * h.frobenius_norm().max(1.0));
        prop_assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn svd_reconstructs(rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let m = ghzcanon::matkit::random_complex_matrix(rows, cols, &mut ChaCha8Rng::seed_from_u64(seed));
        let s = svd(&m).unwrap();
        prop_assert!((&s.reconstruct() - &m).frobenius_norm() <= 1e-10 * m.frobenius_norm().max(1.0));
        prop_assert!(s.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn matrix_file_round_trip(values in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6), 9)) {
        let data = values.iter().map(|&(r, i)| c64(r, i)).collect();
        let m = ComplexMatrix::new(3, 3, data).unwrap();
        let text = matrix_to_string(&m);
        let back = parse_matrix(&text, std::path::Path::new("mem")).unwrap();
        for k in 0..9 {
            let (x, y) = (m[(k / 3, k % 3)], back[(k / 3, k % 3)]);
            prop_assert_eq!(y.re, round_sig(x.re));
            prop_assert_eq!(y.im, round_sig(x.im));
        }
        prop_assert_eq!(matrix_to_string(&back), text);
    }

    #[test]
    fn assignments_obey_the_product_law(n in 3usize..6) {
        // per party the n mixed constraints contribute A·B^(n−1), so with ±1
        // values their product equals the all-A constraint exactly when n is odd
        let spectra = vec![(vec![-1.0, 1.0], vec![-1.0, 1.0]); n];
        let cons = ghz_constraints(n);
        let all = lhv_search_sites(&spectra, &[], &[], 1e-9).unwrap();
        prop_assert_eq!(all.satisfying.len(), 1 << (2 * n));
        for asg in &all.satisfying {
            let lhs: f64 = cons[..n].iter().map(|c| asg.evaluate(c)).product();
            let b_power: f64 = asg.values.iter().map(|&(_, b)| b.powi(n as i32 - 1)).product();
            prop_assert_eq!(lhs, asg.evaluate(&cons[n]) * b_power);
            if n % 2 == 1 {
                prop_assert_eq!(lhs, asg.evaluate(&cons[n]));
            }
        }
    }
}
