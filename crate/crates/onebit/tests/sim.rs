use onebit::sim::{
    complex_normal, corrupt_csi, detect, run_sweep, sample_channel, transmit, transmit_with,
    trial_rng, SimConfig, Stream,
};
use onebit_core::constellation::symbol_from_index;
use onebit_core::{Complex64, Method, QamSpec, SymbolIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn moments(samples: &[Complex64]) -> (Complex64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<Complex64>() / n;
    let var = samples.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / n;
    (mean, var)
}

#[test]
fn channel_is_deterministic_and_unit_variance() {
    let a = sample_channel(4, 8, &mut trial_rng(9, 3, Stream::Channel));
    let b = sample_channel(4, 8, &mut trial_rng(9, 3, Stream::Channel));
    assert_eq!(a, b);
    assert_ne!(
        a,
        sample_channel(4, 8, &mut trial_rng(9, 4, Stream::Channel))
    );

    let big = sample_channel(100, 1000, &mut ChaCha8Rng::seed_from_u64(1));
    let (mean, var) = moments(big.as_slice());
    assert!(mean.norm_sqr() < 4e-4, "{mean}");
    assert!((var - 1.0).abs() < 0.02, "{var}");
    let re_var = big.as_slice().iter().map(|z| z.re * z.re).sum::<f64>() / 1e5;
    assert!((re_var - 0.5).abs() < 0.01);
}

#[test]
fn streams_are_independent_of_each_other() {
    let mut a = trial_rng(5, 0, Stream::Channel);
    let mut b = trial_rng(5, 0, Stream::Noise);
    assert_ne!(complex_normal(&mut a), complex_normal(&mut b));
}

#[test]
fn csi_error_mixture() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = sample_channel(100, 1000, &mut rng);
    assert_eq!(corrupt_csi(&h, 0.0, &mut rng).unwrap(), h);
    for eps in [0.1, 0.5, 1.0] {
        let he = corrupt_csi(&h, eps, &mut rng).unwrap();
        let (_, var) = moments(he.as_slice());
        assert!((var - 1.0).abs() < 0.02, "eps {eps}: {var}");
        // correlation with the true channel is √(1-ε)
        let corr = he
            .as_slice()
            .iter()
            .zip(h.as_slice())
            .map(|(a, b)| (a * b.conj()).re)
            .sum::<f64>()
            / 1e5;
        assert!(
            (corr - (1.0 - eps).sqrt()).abs() < 0.02,
            "eps {eps}: {corr}"
        );
    }
    assert!(corrupt_csi(&h, 1.5, &mut rng).is_err());
    assert!(corrupt_csi(&h, -0.1, &mut rng).is_err());
}

#[test]
fn transmit_noise_and_noiseless_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = sample_channel(2, 3, &mut rng);
    let x = vec![Complex64::new(1.0, -1.0); 3];
    let rho: f64 = 7.0;
    let clean = transmit_with(&h, &x, rho, None);
    for (y, s) in clean.iter().zip(h.mul_vec(&x).unwrap()) {
        assert!((y / rho.sqrt() - s).norm_sqr() < 1e-24);
    }
    let mut noise = Vec::new();
    for _ in 0..50_000 {
        let y = transmit(&h, &x, rho, &mut rng);
        noise.extend(y.iter().zip(&clean).map(|(a, b)| a - b));
    }
    let (mean, var) = moments(&noise);
    assert!(mean.norm_sqr() < 4e-4);
    assert!((var - 1.0).abs() < 0.02, "{var}");
}

#[test]
fn detection_scales_by_snr() {
    let spec = QamSpec::new(2).unwrap();
    let rho: f64 = 4.0;
    let tau = 0.3;
    let y = Complex64::new(3.0 * tau, 3.0 * tau) * rho.sqrt();
    assert_eq!(
        detect(y, tau, rho, &spec),
        Some(SymbolIndex::new(vec![0, 0]).unwrap())
    );
    for idx in spec.indices() {
        let p = symbol_from_index(&idx, tau) * rho.sqrt();
        assert_eq!(detect(p, tau, rho, &spec), Some(idx));
    }
    assert_eq!(detect(y, 0.0, rho, &spec), None);
    assert_eq!(detect(y, -1.0, rho, &spec), None);
}

fn small(trials: usize) -> SimConfig {
    SimConfig {
        nt: 16,
        k: 2,
        order: 2,
        snr_db: vec![0.0, 10.0, 20.0],
        trials,
        epsilon: 0.0,
        seed: 77,
        methods: vec![Method::FGreedy, Method::Qlp, Method::Qzf, Method::Zf],
        noiseless: false,
        timing: false,
    }
}

#[test]
fn sweep_is_reproducible_and_consistent() {
    let cfg = small(40);
    let a = run_sweep(&cfg).unwrap();
    let b = run_sweep(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.cells.len(), 12);
    for c in &a.cells {
        assert_eq!(c.symbols_sent, 80);
        assert!((0.0..=1.0).contains(&c.ser()));
    }
    // method set does not change the realizations another method sees
    let mut only = cfg.clone();
    only.methods = vec![Method::Zf];
    let z = run_sweep(&only).unwrap();
    assert_eq!(z.ser_curve(Method::Zf), a.ser_curve(Method::Zf));
}

#[test]
fn noiseless_errors_only_on_infeasible_trials() {
    let mut cfg = small(60);
    cfg.noiseless = true;
    let stats = run_sweep(&cfg).unwrap();
    for m in &stats.methods {
        let errors = stats.cell(m.method, 0.0).unwrap().symbol_errors;
        if m.infeasible_count == 0 {
            assert_eq!(errors, 0, "{}", m.method);
        }
        assert!(
            errors <= m.infeasible_count * cfg.k as u64,
            "{} {errors} {}",
            m.method,
            m.infeasible_count
        );
        // every SNR point sees the same noiseless receive values
        assert_eq!(stats.cell(m.method, 20.0).unwrap().symbol_errors, errors);
    }
    let one = SimConfig { trials: 1, ..cfg };
    let s = run_sweep(&one).unwrap();
    if s.method(Method::FGreedy).unwrap().infeasible_count == 0 {
        assert_eq!(s.ser_curve(Method::FGreedy), vec![0.0; 3]);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = [
        SimConfig { k: 0, ..small(1) },
        SimConfig { nt: 1, ..small(1) },
        SimConfig {
            order: 1,
            ..small(1)
        },
        SimConfig {
            trials: 0,
            ..small(1)
        },
        SimConfig {
            epsilon: 1.5,
            ..small(1)
        },
        SimConfig {
            snr_db: vec![],
            ..small(1)
        },
        SimConfig {
            methods: vec![],
            ..small(1)
        },
        SimConfig {
            methods: vec![Method::ExhaustiveMilp],
            ..small(1)
        },
    ];
    for cfg in bad {
        assert!(run_sweep(&cfg).is_err(), "{cfg:?}");
    }
}
