use proptest::prelude::*;
use stirling_cert::asymptotics::{implicit_r_first, implicit_r_second, moser_wyman_window, QConvention};
use stirling_cert::exact::{bell_number, factorial, stirling1_unsigned_exact, stirling2_exact, stirling_table};
use stirling_cert::{BigNat, StirlingKind};

fn sum(v: &[BigNat]) -> BigNat {
    BigNat(v.iter().map(|x| x.as_biguint()).sum())
}

#[test]
fn row_sums_are_bell_numbers_and_factorials() {
    let s1 = stirling_table(StirlingKind::First, 30);
    let s2 = stirling_table(StirlingKind::Second, 30);
    for n in 0..=30u64 {
        assert_eq!(sum(&s2[n as usize]), bell_number(n));
        assert_eq!(sum(&s1[n as usize]), factorial(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recurrences_hold(n in 2u64..80, mf in 0.0f64..1.0) {
        let m = 1 + ((n - 2) as f64 * mf) as u64;
        let s2 = |a, b| stirling2_exact(a, b).unwrap().into_biguint();
        let s1 = |a, b| stirling1_unsigned_exact(a, b).unwrap().into_biguint();
        prop_assert_eq!(s2(n + 1, m + 1), s2(n, m) + s2(n, m + 1) * (m + 1));
        prop_assert_eq!(s1(n + 1, m + 1), s1(n, m) + s1(n, m + 1) * n);
    }

    #[test]
    fn implicit_estimates_are_close_for_large_m(n in 300u64..1500, mf in 0.3f64..0.95) {
        let m = (n as f64 * mf) as u64;
        let e2 = implicit_r_second(n, m).unwrap();
        let e1 = implicit_r_first(n, m).unwrap();
        let r2 = e2.ratio_to(stirling2_exact(n, m).unwrap().log10_f64());
        let r1 = e1.ratio_to(stirling1_unsigned_exact(n, m).unwrap().log10_f64());
        prop_assert!((r2 - 1.0).abs() < 0.02, "second {r2}");
        prop_assert!((r1 - 1.0).abs() < 0.02, "first {r1}");
    }
}

#[test]
fn moser_wyman_window_contains_exact_values_near_the_diagonal() {
    for n in 20..=120u64 {
        for r in 1..=3u64 {
            let m = n - r;
            if let Some(w) = moser_wyman_window(n, m, 3, QConvention::OverM).unwrap() {
                assert!(w.contains(&stirling2_exact(n, m).unwrap()), "({n},{m})");
            }
        }
    }
}
