mod common;

use onebit_core::constellation::{g_inv, g_map, nearest_symbol};
use onebit_core::lp::{build_relaxation, check_optimality, solve};
use onebit_core::precoders::{
    exhaustive_milp, exhaustive_min_margin, fgreedy_from_relaxation, fgreedy_with_report,
    qlp_from_relaxation, qzf, solve_relaxation, solve_relaxation_from, zf,
};
use onebit_core::{
    build_system, CMatrix, Complex64, FeasibilitySystem, MessageVector, QamSpec, SymbolIndex,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Instance {
    h: CMatrix,
    s: MessageVector,
    sys: FeasibilitySystem,
}

fn suite(count: usize, k: usize, nt: usize, order: usize, seed: u64) -> Vec<Instance> {
    let spec = QamSpec::new(order).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let h = common::channel(k, nt, &mut rng);
            let s = common::message(k, &spec, &mut rng);
            let sys = build_system(&h, &s, &spec).unwrap();
            Instance { h, s, sys }
        })
        .collect()
}

/// Coordinate pass written against the complex receive model: every
/// candidate is evaluated from scratch.
fn reference_greedy(inst: &Instance, start: &[f64], tau: f64) -> Vec<f64> {
    let digits: Vec<Vec<u8>> = inst
        .s
        .indices()
        .iter()
        .map(|i| i.digits().to_vec())
        .collect();
    let min_margin = |x: &[f64]| {
        let y = inst.h.mul_vec(&g_inv(x).unwrap()).unwrap();
        common::reference_margins(&y, &digits, tau)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    };
    let mut x = start.to_vec();
    for i in 0..x.len() {
        x[i] = -1.0;
        let minus = min_margin(&x);
        x[i] = 1.0;
        let plus = min_margin(&x);
        if minus > plus + 1e-12 {
            x[i] = -1.0;
        }
    }
    x
}

#[test]
fn greedy_matches_reference_trace() {
    for inst in suite(50, 2, 4, 2, 7) {
        let relaxed = solve_relaxation(&inst.sys).unwrap();
        let (r, report) = fgreedy_from_relaxation(&inst.sys, &relaxed).unwrap();
        assert_eq!(r.x_real, reference_greedy(&inst, &relaxed.x, relaxed.t));
        assert_eq!(report.violations, 0);
        assert_eq!(report.steps, 8);
    }
}

#[test]
fn greedy_pinned_instance() {
    let inst = suite(1, 2, 4, 2, 2024).pop().unwrap();
    let (r, _) = fgreedy_with_report(&inst.sys).unwrap();
    let relaxed = solve_relaxation(&inst.sys).unwrap();
    assert_eq!(r.x_real, reference_greedy(&inst, &relaxed.x, relaxed.t));
    println!(
        "x = {:?}\ntau = {:.12}\nobjective = {:.12}",
        r.x_real, r.tau, r.objective
    );
    assert_eq!(r.x_real, PINNED_X);
    assert!((r.tau - PINNED_TAU).abs() < 1e-9);
    assert!((r.objective - PINNED_OBJECTIVE).abs() < 1e-9);
}

const PINNED_X: [f64; 8] = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0, 1.0, -1.0];
const PINNED_TAU: f64 = 0.398784952641;
const PINNED_OBJECTIVE: f64 = -0.431259119217;

#[test]
fn relaxation_and_oracle_sandwich() {
    let mut stats = [0usize; 5];
    let (mut sum_greedy, mut sum_oracle) = (0.0, 0.0);
    for inst in suite(200, 2, 4, 2, 99) {
        let sys = &inst.sys;
        let program = build_relaxation(sys);
        let sol = solve(&program);
        assert!(check_optimality(&program, &sol));

        let relaxed = solve_relaxation(sys).unwrap();
        assert!((relaxed.t - sol.objective_value).abs() < 1e-9);
        let cold = solve_relaxation_from(sys, &[0.0; 8]).unwrap();
        assert!((cold.t - relaxed.t).abs() < 1e-9);
        let exact = exhaustive_milp(sys).unwrap();
        assert!(
            relaxed.t >= exact.tau - 1e-8,
            "{} < {}",
            relaxed.t,
            exact.tau
        );
        assert!(exact.quantized);

        let (greedy, report) = fgreedy_from_relaxation(sys, &relaxed).unwrap();
        assert!(greedy.quantized);
        assert_eq!(report.violations, 0);
        assert!(sys.max_tau_for(&greedy.x_real).unwrap() <= exact.tau + 1e-12);

        let (_, best_fixed) = exhaustive_min_margin(sys, relaxed.t).unwrap();
        assert!(greedy.objective <= best_fixed + 1e-12);
        if best_fixed > 0.0 {
            sum_greedy += greedy.objective;
            sum_oracle += best_fixed;
        }

        let quant = qlp_from_relaxation(sys, &relaxed).unwrap();
        assert!(quant.quantized);
        let spec = QamSpec::new(2).unwrap();
        let q = qzf(&inst.h, &inst.s, &spec, 1.0).unwrap();
        assert!(q.quantized);
        // a positive margin must come with a decodable decision size
        if q.objective > 0.0 {
            assert!(q.tau > 0.0);
        }

        stats[0] += (quant.objective <= greedy.objective + 1e-12) as usize;
        stats[1] += (q.objective <= greedy.objective + 1e-12) as usize;
        stats[2] += (greedy.objective >= best_fixed - 1e-12) as usize;
        stats[3] += (greedy.objective > 0.0) as usize;
        stats[4] += (best_fixed > 0.0) as usize;
    }
    let ratio = sum_greedy / sum_oracle;
    println!(
        "qlp<=fgreedy {} qzf<=fgreedy {} fgreedy==oracle {} fgreedy feasible {} oracle feasible {} ratio {ratio:.4}",
        stats[0], stats[1], stats[2], stats[3], stats[4]
    );
    // Measured on this suite. Small arrays leave the frozen LP decision size
    // hard to meet with ±1 entries, so the pass is far from the fixed-τ
    // optimum here.
    assert_eq!(stats, [195, 118, 103, 98, 140]);
    assert!((ratio - 0.4104).abs() < 5e-4);
}

#[test]
fn reflected_message_negates_optimum() {
    let spec = QamSpec::new(2).unwrap();
    let h = CMatrix::from_row_major(
        1,
        2,
        vec![Complex64::new(0.8, -0.3), Complex64::new(-0.4, 1.1)],
    )
    .unwrap();
    let s = MessageVector::new(vec![SymbolIndex::new(vec![0, 0]).unwrap()], &spec).unwrap();
    let r = s.reflected();
    let a = exhaustive_milp(&build_system(&h, &s, &spec).unwrap()).unwrap();
    let sys_r = build_system(&h, &r, &spec).unwrap();
    let b = exhaustive_milp(&sys_r).unwrap();
    assert!(a.tau > 0.0);
    assert_eq!(a.tau, b.tau);
    let neg: Vec<f64> = a.x_real.iter().map(|v| -v).collect();
    assert_eq!(sys_r.max_tau_for(&neg).unwrap(), b.tau);
}

#[test]
fn relaxation_vertices_are_mostly_binary() {
    for inst in suite(30, 4, 16, 2, 31) {
        let relaxed = solve_relaxation(&inst.sys).unwrap();
        let fractional = relaxed.x.iter().filter(|v| v.abs() < 1.0 - 1e-6).count();
        assert!(fractional <= inst.sys.num_rows(), "{fractional}");
    }
}

#[test]
fn zero_forcing_contract() {
    let spec = QamSpec::new(3).unwrap();
    for inst in suite(20, 4, 16, 3, 17) {
        let r = zf(&inst.h, &inst.s, &spec, 1.0).unwrap();
        let energy: f64 = r.x.iter().map(|z| z.norm_sqr()).sum();
        assert!((energy - 32.0).abs() < 1e-10);
        let y = inst.h.mul_vec(&r.x).unwrap();
        for ((yk, p), mu) in y.iter().zip(inst.s.points(r.tau)).zip(inst.s.indices()) {
            assert!((yk - p).norm() < 1e-10 * (1.0 + p.norm()));
            assert_eq!(nearest_symbol(*yk, r.tau, &spec), *mu);
        }
        assert!((r.objective - r.tau).abs() < 1e-9);
        assert_eq!(g_map(&r.x), r.x_real);
    }
}
