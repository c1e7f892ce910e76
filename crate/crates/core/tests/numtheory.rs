use fqlab_core::numtheory::{
    density_series, divisors, factor, np_contains, pp_contains, sieve, sieve_np, sp_contains, Predicate,
    SieveConfig,
};
use fqlab_core::Execution;
use proptest::prelude::*;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn brute_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Straight from the definition, scanning every divisor.
fn brute_np(n: u64, p: u64) -> bool {
    n.is_multiple_of(p) && !(n / p).is_multiple_of(p) && !(2..=n).any(|d| n.is_multiple_of(d) && d % p == 1)
}

fn brute_sp(n: u64, a: u64) -> bool {
    (2..=n).filter(|&p| brute_prime(p) && gcd(p, a) == 1 && gcd(a, p - 1) <= 2).any(|p| brute_np(n, p))
}

#[test]
fn np_agrees_with_definition() {
    for p in [2, 3, 5, 7] {
        let m = sieve_np(p, 3000, &SieveConfig::default()).unwrap();
        for n in 1..=3000 {
            assert_eq!(m.contains(n), brute_np(n, p), "n={n} p={p}");
        }
    }
}

#[test]
fn np_small_members() {
    let m = sieve_np(2, 10, &SieveConfig::default()).unwrap();
    assert_eq!(m.members().collect::<Vec<_>>(), vec![2]);
    let m = sieve_np(3, 30, &SieveConfig::default()).unwrap();
    assert_eq!(m.members().collect::<Vec<_>>(), vec![3, 6, 15]);
}

#[test]
fn sp_agrees_with_definition() {
    for a in [1, 2, 4, 6, 10] {
        let m = sieve(Predicate::Sp(a), 1500, &SieveConfig::default()).unwrap();
        for n in 1..=1500 {
            assert_eq!(m.contains(n), brute_sp(n, a), "n={n} a={a}");
        }
    }
}

#[test]
fn pp_is_a_set_of_primes() {
    let m = sieve(Predicate::Pp(6), 5000, &SieveConfig::default()).unwrap();
    for n in m.members() {
        assert!(brute_prime(n) && pp_contains(n, 6));
    }
    // 5: gcd(6, 4) = 2; 7: gcd(6, 6) = 6
    assert!(m.contains(5) && !m.contains(7) && !m.contains(2) && !m.contains(3));
}

#[test]
fn divisor_lists_match_scan() {
    for n in 1..=2000u64 {
        let scan: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        assert_eq!(divisors(&factor(n).unwrap()), scan);
    }
}

#[test]
fn execution_modes_agree() {
    let seq = SieveConfig::default().with_segment_len(4096);
    let par = seq.with_exec(Execution::Parallel);
    for pred in [Predicate::Np(3), Predicate::Sp(6), Predicate::Squarefree] {
        assert_eq!(sieve(pred, 200_000, &seq).unwrap(), sieve(pred, 200_000, &par).unwrap());
        let cps = [1000, 50_000, 200_000];
        assert_eq!(
            density_series(pred, 200_000, &cps, &seq).unwrap(),
            density_series(pred, 200_000, &cps, &par).unwrap()
        );
    }
}

#[test]
fn bad_arguments_are_rejected() {
    assert!(sieve_np(4, 100, &SieveConfig::default()).is_err());
    assert!(sieve_np(7, 5, &SieveConfig::default()).is_err());
    assert!(density_series(Predicate::All, 100, &[10, 5], &SieveConfig::default()).is_err());
    assert!(density_series(Predicate::All, 0, &[], &SieveConfig::default()).is_err());
    assert!(Predicate::parse("np:9").is_err());
}

proptest! {
    #[test]
    fn series_counts_are_prefix_counts(p in prop::sample::select(vec![2u64, 3, 5, 7, 11]),
                                       limit in 20u64..20_000, seg in 1u64..5000) {
        let config = SieveConfig::default().with_segment_len(seg);
        let cps = [limit / 4, limit / 2, limit];
        let s = density_series(Predicate::Np(p), limit, &cps, &config).unwrap();
        for c in &s.checkpoints {
            let n = (1..=c.limit).filter(|&n| np_contains(n, p).unwrap()).count() as u64;
            prop_assert_eq!(c.count, n);
        }
    }

    #[test]
    fn sp_is_union_of_np(n in 1u64..1_000_000, a in 1u64..30) {
        let f = factor(n).unwrap();
        let union = f.factors().iter().any(|&(p, _)| pp_contains(p, a) && np_contains(n, p).unwrap());
        prop_assert_eq!(sp_contains(n, a).unwrap(), union);
    }
}
