use std::sync::OnceLock;

use origami_sv_core::arith::{is_prime, prime_factors};
use origami_sv_core::asymptotics::{
    euler_partial, f_oh_predicted, f_ow_predicted, f_predicted, s_sums, DivisorSumTable,
    ParityFilter, DEFAULT_SIEVE_LIMIT,
};
use proptest::prelude::*;

fn big_table() -> &'static DivisorSumTable {
    static TABLE: OnceLock<DivisorSumTable> = OnceLock::new();
    TABLE.get_or_init(|| DivisorSumTable::new(DEFAULT_SIEVE_LIMIT))
}

fn sigma_by_factoring(m: u64) -> u64 {
    let mut rest = m;
    let mut total = 1;
    for p in prime_factors(m) {
        let mut term = 1;
        let mut pk = 1;
        while rest % p == 0 {
            rest /= p;
            pk *= p;
            term += pk;
        }
        total *= term;
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sigma_agrees_with_factoring(m in 1u64..=DEFAULT_SIEVE_LIMIT as u64) {
        let t = big_table();
        prop_assert_eq!(t.sigma(m as usize), sigma_by_factoring(m));
        let odd = (1..=m).filter(|b| b % 2 == 1 && m % b == 0).sum::<u64>();
        let odd_cofactor = (1..=m).filter(|b| m % b == 0 && (m / b) % 2 == 1).sum::<u64>();
        if m < 50_000 {
            prop_assert_eq!(t.sigma_odd(m as usize), odd);
            prop_assert_eq!(t.sigma_odd_cofactor(m as usize), odd_cofactor);
        }
    }
}

#[test]
fn sigma_on_primes() {
    let t = big_table();
    for p in [2u64, 3, 5, 7919, 999_983, 1_999_993] {
        assert!(is_prime(p));
        assert_eq!(t.sigma(p as usize), p + 1);
    }
    assert_eq!(t.sigma(1), 1);
}

#[test]
fn residue_classes_partition_divisor_sums() {
    let t = DivisorSumTable::new(10_000);
    let mut prefix = vec![0u64; 10_001];
    for m in 1..=10_000 {
        prefix[m] = prefix[m - 1] + t.sigma(m);
    }
    for q in 1..=20u64 {
        for x in 0..=10_000u64 {
            let total: u64 = (0..q).map(|k| t.f(x, k, q).unwrap()).sum();
            assert_eq!(total, prefix[x as usize], "x = {x}, q = {q}");
        }
    }
}

#[test]
fn odd_divisor_sums_on_odd_classes() {
    let t = DivisorSumTable::new(10_000);
    for x in 0..=10_000 {
        assert_eq!(t.f_ow(x, 1, 2).unwrap(), t.f(x, 1, 2).unwrap(), "x = {x}");
    }
}

#[test]
fn f_is_monotone_in_x() {
    let t = DivisorSumTable::new(5_000);
    for q in 1..=7 {
        for k in 0..q {
            let values: Vec<u64> = (0..=5_000).map(|x| t.f(x, k, q).unwrap()).collect();
            assert!(values.windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn main_terms_at_a_million() {
    let t = big_table();
    let x = 1_000_000u64;
    let close = |exact: u64, predicted: f64| (exact as f64 / predicted - 1.0).abs() < 0.01;
    assert!(close(t.f(x, 1, 3).unwrap(), f_predicted(x as f64, 1, 3).unwrap()));
    assert!(close(t.f_ow(x, 1, 3).unwrap(), f_ow_predicted(x as f64, 1, 3).unwrap()));
    assert!(close(t.f_oh(x, 1, 2).unwrap(), f_oh_predicted(x as f64, 1, 2).unwrap()));
    assert!(close(t.f_oh(x, 1, 3).unwrap(), f_oh_predicted(x as f64, 1, 3).unwrap()));
}

#[test]
fn s_decomposition_is_exact() {
    let t = DivisorSumTable::new(2_000);
    for n in (5..2_000).filter(|&n| is_prime(n)).take(40) {
        let r = s_sums(&t, n).unwrap();
        assert_eq!(&r.s_ow + &r.s_oh + &r.s_eo, r.s);
    }
    // Odd composites are evaluated too.
    assert!(s_sums(&t, 45).is_ok());
}

#[test]
fn euler_products_split_by_parity() {
    for a in [1u64, 2, 10, 1000] {
        let all = euler_partial(a, ParityFilter::All);
        let split = euler_partial(a, ParityFilter::Odd) + euler_partial(a, ParityFilter::Even);
        assert!((all - split).abs() < 1e-14);
    }
}
