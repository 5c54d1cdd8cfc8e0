//! Sequences reaching the fourth degree condition, which none of the
//! reference sequences do. The prime scan is an independent check of both
//! the Kummer degree and the count of inverting automorphisms.

use lucas_index::empirical::PrimeSource;
use lucas_index::kummer::chi_decompose;
use lucas_index::rational::to_f64;
use lucas_index::{scan, ConditionCase, ConditionContext, DensityProfile, LucasParams};

const C4_SEQUENCES: [(i64, i64); 5] = [(6, 3), (8, 2), (-30, 15), (8, -18), (-7, -28)];

#[test]
fn condition_c4_occurs() {
    for (a1, a2) in C4_SEQUENCES {
        let ctx = ConditionContext::new(&LucasParams::new(a1, a2).unwrap()).unwrap();
        assert_eq!(ctx.decomposition().s, -1);
        assert!((1..=48).any(|n| ctx.condition_case(n) == ConditionCase::C4), "({a1},{a2})");
        chi_decompose(&ctx).unwrap();
    }
}

#[test]
fn c4_frequencies_match_scan() {
    let n_primes = 300_000;
    let source = PrimeSource::first(n_primes).unwrap();
    for (a1, a2) in C4_SEQUENCES {
        let params = LucasParams::new(a1, a2).unwrap();
        let profile = DensityProfile::new(&params).unwrap();
        let table = scan(&params, &source, n_primes, 4).unwrap();
        for n in 1..=24 {
            let expected = to_f64(&profile.context().degree_ratio(n));
            let got = table.divisible_fraction(n);
            assert!((got - expected).abs() < 0.004, "({a1},{a2}) n={n}: {got} vs {expected}");
        }
        for t in 1..=12 {
            let d = profile.delta(t).value;
            assert!((table.delta_tilde(t) - d).abs() < 0.004, "({a1},{a2}) t={t}: {} vs {d}", table.delta_tilde(t));
        }
    }
}
