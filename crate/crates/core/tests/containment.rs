use proptest::prelude::*;
use stirling_cert::bounds::{theorem4_bound, theorem4_terms, theorem5_bound, theorem6_bound, Mode, TFactor};
use stirling_cert::exact::{file_number_exact, rook_number_exact, stirling1_unsigned_exact, stirling2_exact};
use stirling_cert::{FerrersBoard, Rational, Scalar, Theorem4Exact, Theorem4Float};

fn board_strategy() -> impl Strategy<Value = FerrersBoard> {
    prop::collection::vec(1usize..12, 1..10).prop_map(|mut rows| {
        rows.sort_unstable_by(|a, b| b.cmp(a));
        FerrersBoard::new(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn uniform_enclosures_hold_in_both_modes(n in 3u64..45, kf in 0.0f64..1.0) {
        let k = 2 + ((n - 2) as f64 * kf) as u64;
        let s1 = stirling1_unsigned_exact(n, n - k).unwrap();
        let s2 = stirling2_exact(n, n - k).unwrap();
        for mode in [Mode::Exact, Mode::Log] {
            let r = theorem4_bound(n, k, mode).unwrap();
            prop_assert!(r.enclosure_first.contains(&s1));
            prop_assert!(r.enclosure_second.contains(&s2));
        }
        let r = theorem5_bound(n, k, Mode::Exact).unwrap();
        prop_assert!(r.enclosure_first.contains(&s1));
        prop_assert!(r.enclosure_second.contains(&s2));
    }

    #[test]
    fn ferrers_enclosures_hold(board in board_strategy(), k in 2u64..8) {
        let r = theorem6_bound(&board, k, Mode::Exact).unwrap();
        prop_assert!(r.enclosure_rook.contains(&rook_number_exact(&board, k as usize)));
        prop_assert!(r.enclosure_file.contains(&file_number_exact(&board, k as usize)));
    }

    #[test]
    fn float_terms_track_exact_terms(n in 3u64..200, kf in 0.0f64..1.0) {
        let k = 2 + ((n - 2) as f64 * kf) as u64;
        let e: Theorem4Exact = theorem4_terms(n, k, TFactor::OneMinusT).unwrap();
        let f: Theorem4Float = theorem4_terms(n, k, TFactor::OneMinusT).unwrap();
        for (x, y) in [(&e.d1, f.d1), (&e.d2, f.d2), (&e.mu, f.mu)] {
            let x = x.to_f64_lossy();
            prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1e-300), "{x} vs {y}");
        }
    }

    #[test]
    fn closed_forms_exceed_term_sums_by_the_plus_terms(n in 3u64..60, kf in 0.0f64..1.0) {
        let k = 2 + ((n - 2) as f64 * kf) as u64;
        for tf in [TFactor::Unit, TFactor::OneMinusT] {
            let e: Theorem4Exact = theorem4_terms(n, k, tf).unwrap();
            let f = match tf {
                TFactor::Unit => Rational::from_integer(1.into()),
                TFactor::OneMinusT => Rational::from_integer(1.into()) - &e.t_term,
            };
            prop_assert_eq!(&e.d1 - &e.d1_from_terms, &f * &e.c_plus);
            prop_assert_eq!(&e.d2 - &e.d2_from_terms, &f * (&e.r_plus + &e.c_plus));
        }
    }
}

#[test]
fn staircase_file_and_rook_numbers_are_stirling_numbers() {
    for n in 2..=14u64 {
        let b = FerrersBoard::staircase(n as usize);
        for k in 0..n {
            assert_eq!(rook_number_exact(&b, k as usize), stirling2_exact(n, n - k).unwrap());
            assert_eq!(file_number_exact(&b, k as usize), stirling1_unsigned_exact(n, n - k).unwrap());
        }
    }
}
