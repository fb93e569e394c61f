use proptest::prelude::*;
use stirling_cert::exact::AttackMode;
use stirling_cert::sim::{empirical_tv_to_poisson, estimate_p_w0, poisson_pmf, simulate_coupling, Model, SimConfig};
use stirling_cert::FerrersBoard;

fn config(n: usize, k: usize) -> SimConfig {
    SimConfig::new(FerrersBoard::staircase(n), k, Model::Subset, AttackMode::RowsAndColumns)
}

fn pairs(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

#[test]
fn results_do_not_depend_on_stream_count() {
    let base = config(12, 4).replicas(30_000).seed(5);
    let one = simulate_coupling(&base.clone().streams(1)).unwrap();
    for s in [2, 3, 8] {
        let r = simulate_coupling(&base.clone().streams(s)).unwrap();
        assert_eq!(r.w_histogram, one.w_histogram);
        assert_eq!(r.e_wv_hat, one.e_wv_hat);
        assert_eq!(r.case_frequencies, one.case_frequencies);
    }
}

#[test]
fn coupling_case_frequencies_match_direct_counts() {
    // Rooks 1 and 2 sit at a uniform pair of distinct cells; (I, J) is a
    // uniform attacking pair. Counting coincidences directly:
    // case 1: {1,2} = {I,J}; 2a: exactly one shared cell with the rest of
    // the placement covering the other; 3a: both cells among rooks 3..k.
    for (n, k) in [(10usize, 4usize), (12, 5)] {
        let r = simulate_coupling(&config(n, k).replicas(400_000).seed(11).streams(4)).unwrap();
        let f = r.case_frequencies.unwrap();
        let big_n = pairs(n as f64);
        let c = pairs(big_n);
        let km2 = (k - 2) as f64;
        assert!(f.case_1.within(1.0 / c, 5.0, 0.0), "{:?}", f.case_1);
        assert!(f.case_2a.within(2.0 * km2 / c, 5.0, 0.0), "{:?}", f.case_2a);
        assert!(f.case_3a.within(km2 * (km2 - 1.0) / 2.0 / c, 5.0, 0.0), "{:?}", f.case_3a);
        assert_eq!(r.unit_case_violations, Some(0));
    }
}

#[test]
fn k_two_coupling_mean_is_exact_fraction() {
    for n in [6usize, 9] {
        let r = simulate_coupling(&config(n, 2).replicas(200_000).seed(3)).unwrap();
        let big_n = pairs(n as f64);
        let cn3 = (n * (n - 1) * (n - 2) / 6) as f64;
        let e = r.e_wv_hat.unwrap();
        assert!(e.within(2.0 * cn3 / pairs(big_n), 5.0, 1e-4), "{e:?}");
    }
}

#[test]
fn independent_model_mean_matches_lambda() {
    let c = SimConfig::new(FerrersBoard::staircase(10), 4, Model::Independent, AttackMode::RowsAndColumns)
        .replicas(200_000)
        .seed(9)
        .streams(3);
    let r = estimate_p_w0(&c).unwrap();
    assert!(r.w_mean.within(r.lambda, 5.0, 0.0), "{:?} vs {}", r.w_mean, r.lambda);
}

#[test]
fn subset_model_mean_matches_lambda() {
    let r = estimate_p_w0(&config(14, 5).replicas(200_000).seed(2)).unwrap();
    assert!(r.w_mean.within(r.lambda, 5.0, 0.0), "{:?} vs {}", r.w_mean, r.lambda);
}

#[test]
fn poisson_pmf_normalises() {
    for lambda in [0.0, 0.3, 2.0, 17.5] {
        let total: f64 = (0..200).map(|j| poisson_pmf(lambda, j)).sum();
        assert!((total - 1.0).abs() < 1e-12, "{lambda}: {total}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tv_is_a_distance(hist in prop::collection::vec(0u64..1000, 1..12), lambda in 0.0f64..6.0) {
        prop_assume!(hist.iter().any(|&c| c > 0));
        let tv = empirical_tv_to_poisson(&hist, lambda).unwrap();
        prop_assert!((0.0..=1.0 + 1e-12).contains(&tv));
    }

    #[test]
    fn coupling_never_breaks_unit_cases(n in 4usize..12, k in 2usize..6, seed in any::<u64>()) {
        prop_assume!(k <= n * (n - 1) / 2);
        let r = simulate_coupling(&config(n, k).replicas(2_000).seed(seed).streams(2)).unwrap();
        prop_assert_eq!(r.unit_case_violations, Some(0));
        prop_assert_eq!(r.w_histogram.iter().sum::<u64>(), 2_000);
    }
}
