use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use teugels_core::cumulant::{binomial, for_each_set_partition, identities};
use teugels_core::{
    cumulants_from_moments, gamma, gamma_partition_oracle, moments_from_cumulants, CumulantSequence, ExactPolynomial,
    MomentSequence,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn double_factorial(n: usize) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

#[test]
fn recurrence_matches_oracle_to_twelve() {
    for n in 0..=12 {
        assert_eq!(*gamma(n).unwrap(), gamma_partition_oracle(n).unwrap(), "order {n}");
    }
}

#[test]
fn coefficients_are_positive_integers_on_isobaric_monomials() {
    for n in 0..=16 {
        let g = gamma(n).unwrap();
        assert!(g.is_isobaric(n as u64), "order {n}");
        assert!(g.is_integral());
        assert!(g.terms().all(|(_, c)| c > &q(0)));
    }
}

#[test]
fn all_ones_gives_bell_numbers() {
    for n in 0..=10 {
        let mut count = 0u64;
        for_each_set_partition(n, |_| count += 1);
        let ones = vec![q(1); n.max(1)];
        assert_eq!(gamma(n).unwrap().eval(&ones), q(count as i64), "order {n}");
    }
}

#[test]
fn gaussian_specialization_counts_pairings() {
    let s = BigRational::new(BigInt::from(3), BigInt::from(7));
    for n in 0..=12 {
        let mut args = vec![q(0); n.max(2)];
        args[1] = s.clone();
        let value = gamma(n).unwrap().eval(&args);
        let mut pairings = 0u64;
        for_each_set_partition(n, |blocks| {
            if blocks.iter().all(|&b| b == 2) {
                pairings += 1;
            }
        });
        if n % 2 == 1 {
            assert_eq!(value, q(0));
            assert_eq!(pairings, 0);
        } else {
            let count = double_factorial(n.saturating_sub(1));
            assert_eq!(BigInt::from(pairings), count);
            let expected = BigRational::from_integer(count) * num_traits::pow(s.clone(), n / 2);
            assert_eq!(value, expected, "order {n}");
        }
    }
}

#[test]
fn identities_hold_to_twelve() {
    for n in 0..=11 {
        assert!(identities::recurrence_holds(n).unwrap(), "recurrence {n}");
    }
    for n in 1..=12 {
        for j in 1..=n {
            assert!(identities::partial_holds(n, j).unwrap(), "partial {n},{j}");
        }
        assert!(identities::shift_holds(n).unwrap(), "shift {n}");
    }
    for n in 0..=12 {
        assert!(identities::x1_expansion_holds(n).unwrap(), "x1 {n}");
    }
}

#[test]
fn binomial_table_is_pascal() {
    for n in 1..=20 {
        for k in 1..n {
            assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn conversion_round_trip(values in prop::collection::vec(rational(), 1..=12)) {
        let mu = MomentSequence::new(values.clone()).unwrap();
        let kappa = cumulants_from_moments(&mu).unwrap();
        prop_assert_eq!(moments_from_cumulants(&kappa).unwrap(), mu);
        let kappa = CumulantSequence::new(values).unwrap();
        let mu = moments_from_cumulants(&kappa).unwrap();
        prop_assert_eq!(cumulants_from_moments(&mu).unwrap(), kappa);
    }

    #[test]
    fn float_and_exact_evaluation_agree(values in prop::collection::vec(rational(), 6)) {
        use num_traits::ToPrimitive;
        let g = gamma(6).unwrap();
        let exact = g.eval(&values).to_f64().unwrap();
        let floats: Vec<f64> = values.iter().map(|v| v.to_f64().unwrap()).collect();
        let approx = g.to_float().eval(&floats);
        prop_assert!((exact - approx).abs() <= 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn canonical_json_round_trip(
        terms in prop::collection::vec((prop::collection::vec(0u32..4, 0..5), rational()), 0..8)
    ) {
        let p = ExactPolynomial::from_terms(terms);
        let text = serde_json::to_string(&p).unwrap();
        let back: ExactPolynomial = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn ring_laws(
        a in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), rational()), 0..5),
        b in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), rational()), 0..5),
        c in prop::collection::vec((prop::collection::vec(0u32..3, 0..3), rational()), 0..5),
    ) {
        let (a, b, c) = (ExactPolynomial::from_terms(a), ExactPolynomial::from_terms(b), ExactPolynomial::from_terms(c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        // product rule for the first variable
        prop_assert_eq!((&a * &b).partial(1), &(&a.partial(1) * &b) + &(&a * &b.partial(1)));
    }
}

#[test]
fn lambda_entries_count_ordered_partitions() {
    use teugels_core::charlier::lambda_tables;
    use teugels_core::cumulant::factorial;
    for table in lambda_tables(10) {
        let n = table.order;
        let mut by_blocks = vec![0u64; n + 1];
        for_each_set_partition(n, |blocks| by_blocks[blocks.len()] += 1);
        for (j, &count) in by_blocks.iter().enumerate().skip(1) {
            assert_eq!(table.get(j), &(factorial(j) * BigInt::from(count)), "n={n} j={j}");
        }
    }
}

#[test]
fn raw_argument_expansion_holds_to_twelve() {
    use teugels_core::{expansion_check, Convention};
    for n in 1..=12 {
        assert!(
            expansion_check(n, Convention::RawArgumentWeighted).unwrap().holds,
            "order {n}"
        );
        assert!(
            !expansion_check(n, Convention::PaperLiteral).unwrap().holds,
            "order {n}"
        );
    }
}
