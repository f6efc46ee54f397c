//! Cross-module invariants that need real graph families rather than unit
//! fixtures: the Alon–Boppana floor on random regular graphs, dense vs
//! iterative agreement at the dense boundary, the high-entropy direct
//! mixing scenario, the square-root ratio window on a certified Ramanujan
//! graph, and worker-count independence of the verification reports.

use cutoff_core::analysis::f_window_report;
use cutoff_core::generators::{
    lps_graph, named_fixture, random_regular, Fixture, LpsParams, RandomRegularParams,
};
use cutoff_core::spectral::{
    iterative_report, ramanujan_family_trend, rho_d, spectral_report, LanczosOptions, MethodHint,
    DEFAULT_TOL,
};
use cutoff_core::verify::{
    check_entropy_production, high_entropy_mixing_scenario, DistSampler, SampleMode,
};

#[test]
fn alon_boppana_floor_on_random_regular() {
    // liminf rho >= rho_d: even at n = 100 the dip below the tree value
    // stays within 0.05 for d = 3
    let mut reports = Vec::new();
    for n in [100usize, 1000, 10_000] {
        let g = random_regular(&RandomRegularParams::new(n, 3, 5)).unwrap();
        let r = spectral_report(&g, DEFAULT_TOL, MethodHint::Iterative).unwrap();
        assert!(
            r.rho >= rho_d(3) - 0.05,
            "n = {n}: rho = {} below the floor allowance",
            r.rho
        );
        reports.push(r);
    }
    let trend = ramanujan_family_trend(&reports, 0.05).unwrap();
    assert_eq!(trend.rows.len(), 3);
}

#[test]
fn dense_and_iterative_agree_at_the_dense_boundary() {
    for (n, seed) in [(1000usize, 2u64), (2000, 3)] {
        let g = random_regular(&RandomRegularParams::new(n, 4, seed)).unwrap();
        let dense = spectral_report(&g, DEFAULT_TOL, MethodHint::Dense).unwrap();
        let iter = spectral_report(&g, DEFAULT_TOL, MethodHint::Iterative).unwrap();
        assert!(
            (dense.rho - iter.rho).abs() < 10.0 * DEFAULT_TOL,
            "n = {n}: {} vs {}",
            dense.rho,
            iter.rho
        );
    }
}

#[test]
fn high_entropy_measures_mix_in_sqrt_delta_steps() {
    // direct scenario: H(nu) > (1 - delta) log n forces L1 distance
    // <= 4 sqrt(delta) after about sqrt(delta) log n / (-2 log rho) steps
    let built = lps_graph(&LpsParams { p: 5, q: 29 }).unwrap();
    let rho = iterative_report(&built.graph, DEFAULT_TOL, &LanczosOptions::default())
        .unwrap()
        .rho;
    for delta in [0.01f64, 0.04] {
        for (label, l1) in high_entropy_mixing_scenario(&built.graph, rho, delta, 31).unwrap() {
            assert!(
                l1 <= 4.0 * delta.sqrt() + 0.05,
                "delta = {delta}, {label}: L1 = {l1}"
            );
        }
    }
}

#[test]
fn sqrt_ratio_window_on_certified_ramanujan_graph() {
    // nonempty window on LPS(5,61) at eps = 0.15: graph values sit between
    // the tree value (minus the support slack) and the overlap-plus-rho
    // chain, and inside rho_d +- eps
    let built = lps_graph(&LpsParams { p: 5, q: 61 }).unwrap();
    let report = iterative_report(&built.graph, DEFAULT_TOL, &LanczosOptions::default()).unwrap();
    assert!(report.is_ramanujan);
    let window = f_window_report(&built.graph, 0, 0.15, report.rho).unwrap();
    assert!(!window.window_is_empty(), "{window:?}");
    for row in &window.rows {
        assert!(row.upper_margin >= -1e-9, "{row:?}");
        assert!(row.lower_margin >= -1e-9, "{row:?}");
        assert!(row.in_window, "{row:?}");
    }
}

#[test]
fn window_is_reported_empty_on_small_graphs() {
    let g = named_fixture(&Fixture::Complete(4)).unwrap();
    let report = f_window_report(&g, 0, 0.1, 1.0 / 3.0).unwrap();
    assert!(report.window_is_empty());
    assert!(report.t_eps.is_none() || report.t_eps.unwrap() > report.t_mix2_late);
}

#[test]
fn l2_decay_bound_behind_the_spectral_upper_bound() {
    // the step estimate comes from ||mu^t - pi||_1 <= sqrt(n) rho^t; check
    // the decay itself along real evolutions
    for fixture in [
        Fixture::Complete(4),
        Fixture::Petersen,
        Fixture::Circulant {
            n: 48,
            offsets: vec![1, 2, 4],
        },
    ] {
        let g = named_fixture(&fixture).unwrap();
        let rho = spectral_report(&g, DEFAULT_TOL, MethodHint::Dense)
            .unwrap()
            .rho;
        let pi = cutoff_core::dist::Dist::uniform(g.n());
        let mut walker = cutoff_core::walk::Walker::new(&g, 0).unwrap();
        for t in 0..40usize {
            let tv = cutoff_core::walk::tv_distance(walker.current(), &pi).unwrap();
            let bound = 0.5 * (g.n() as f64).sqrt() * rho.powi(t as i32);
            assert!(
                tv <= bound + 1e-9,
                "{fixture:?} t={t}: tv {tv} above sqrt(n) rho^t / 2 = {bound}"
            );
            walker.step().unwrap();
        }
    }
}

#[test]
fn full_suite_names_are_unique_and_healthy() {
    let cfg = cutoff_core::verify::SuiteConfig {
        trials: 40,
        seed: 5,
        include_lps: false,
    };
    let reports = cutoff_core::verify::run_full_suite(&cfg).unwrap();
    assert!(cutoff_core::verify::all_pass(&reports));
    let mut names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
    let before = names.len();
    names.sort_unstable();
    names.dedup();
    assert_eq!(before, names.len(), "duplicate report names");
}

#[test]
fn check_reports_do_not_depend_on_worker_count() {
    let g = named_fixture(&Fixture::Petersen).unwrap();
    let sampler = DistSampler::new(SampleMode::UniformSimplex, 42);
    let run_in_pool = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| check_entropy_production(&g, 2.0 / 3.0, &sampler, 400).unwrap())
    };
    let a = run_in_pool(1);
    let b = run_in_pool(4);
    assert_eq!(a.min_margin.to_bits(), b.min_margin.to_bits());
    assert_eq!(a.worst_case, b.worst_case);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
