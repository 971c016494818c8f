mod common;

use nalgebra::DMatrix;
use onebit_core::constellation::{g_map, nearest_symbol};
use onebit_core::feasibility::is_feasible;
use onebit_core::{build_system, Complex64, QamSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn margins_match_reference_geometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let order = 2 + trial % 3;
        let spec = QamSpec::new(order).unwrap();
        let k = rng.random_range(1..4);
        let nt = rng.random_range(k..k + 5);
        let h = common::channel(k, nt, &mut rng);
        let s = common::message(k, &spec, &mut rng);
        let sys = build_system(&h, &s, &spec).unwrap();
        assert_eq!(sys.num_rows(), 2 * order * k);

        let x: Vec<Complex64> = (0..nt).map(|_| common::cn(&mut rng) * 3.0).collect();
        let tau = rng.random_range(0.05..2.0);
        let y = h.mul_vec(&x).unwrap();
        let digits: Vec<Vec<u8>> = s.indices().iter().map(|i| i.digits().to_vec()).collect();
        let expected = common::reference_margins(&y, &digits, tau);
        let got = sys.compute_margins(&g_map(&x), tau).unwrap();
        for (a, b) in got.as_slice().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()), "{a} vs {b}");
        }

        // positive margins for every row of a user == the user decodes its symbol
        if got.as_slice().iter().all(|m| m.abs() > 1e-9) {
            let feasible = is_feasible(&got);
            let decoded = y
                .iter()
                .zip(s.indices())
                .all(|(yk, mu)| nearest_symbol(*yk, tau, &spec) == *mu);
            assert_eq!(feasible, decoded);
        }
    }
}

#[test]
fn cascaded_matrix_has_rank_two_k() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &(k, nt, order) in &[(2usize, 4usize, 2usize), (3, 6, 3), (4, 16, 2), (8, 16, 3)] {
        let spec = QamSpec::new(order).unwrap();
        let h = common::channel(k, nt, &mut rng);
        let s = common::message(k, &spec, &mut rng);
        let sys = build_system(&h, &s, &spec).unwrap();
        let lambda = sys.lambda();
        let m = DMatrix::from_fn(lambda.rows(), lambda.cols(), |r, c| lambda[(r, c)]);
        assert_eq!(m.rank(1e-9), 2 * k);
    }
}

#[test]
fn exact_symbol_has_every_margin_at_least_tau() {
    // Landing exactly on the symbol leaves at least τ to every boundary,
    // with equality at the finest level.
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for order in 2..5 {
        let spec = QamSpec::new(order).unwrap();
        let h = common::channel(1, 1, &mut rng);
        let s = common::message(1, &spec, &mut rng);
        let sys = build_system(&h, &s, &spec).unwrap();
        let tau = 0.7;
        let x = g_map(&[s.points(tau)[0] / h[(0, 0)]]);
        let margins = sys.compute_margins(&x, tau).unwrap();
        assert!(margins.as_slice().iter().all(|&m| m >= tau - 1e-12));
        assert!((margins.min() - tau).abs() < 1e-12);
        assert!(sys.max_tau_for(&x).unwrap() >= tau - 1e-12);
    }
}
