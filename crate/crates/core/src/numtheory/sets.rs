use num_integer::Integer;

use super::factor::{factor, is_prime, odd_sieve, FactoredInteger};
use super::NumTheoryError;
use crate::exec::Execution;

/// Membership of `n` in `NP_p`.
pub fn np_contains(n: u64, p: u64) -> Result<bool, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    Ok(np_contains_factored(&factor(n)?, p))
}

/// [`np_contains`] on an already factored `n`; `p` is assumed prime.
pub fn np_contains_factored(n: &FactoredInteger, p: u64) -> bool {
    if n.exponent_of(p) != 1 {
        return false;
    }
    // A divisor congruent to 1 mod p is coprime to p, so it divides n / p.
    !has_divisor_one_mod(&n.without_one(p), p)
}

/// Whether some divisor `d > 1` of `m` has `d = 1 (mod p)`.
fn has_divisor_one_mod(m: &FactoredInteger, p: u64) -> bool {
    // Walk the divisor lattice carrying (divisor > 1, residue).
    let mut residues: Vec<(bool, u64)> = vec![(false, 1 % p)];
    for &(q, e) in m.factors() {
        let qr = q % p;
        let len = residues.len();
        let mut qk = 1u64;
        for _ in 0..e {
            qk = mul_mod(qk, qr, p);
            for i in 0..len {
                let r = mul_mod(residues[i].1, qk, p);
                if r == 1 % p {
                    return true;
                }
                residues.push((true, r));
            }
        }
    }
    false
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

/// Membership of the prime `p` in `PP_a`.
pub fn pp_contains(p: u64, a: u64) -> bool {
    a.gcd(&p) == 1 && a.gcd(&(p - 1)) <= 2
}

/// Membership of `n` in `SP_a`.
pub fn sp_contains(n: u64, a: u64) -> Result<bool, NumTheoryError> {
    Ok(sp_contains_factored(&factor(n)?, a))
}

pub fn sp_contains_factored(n: &FactoredInteger, a: u64) -> bool {
    n.factors()
        .iter()
        .filter(|&&(p, e)| e == 1 && pp_contains(p, a))
        .any(|&(p, _)| np_contains_factored(n, p))
}

/// A prime `p` of `PP_a` together with the least `n` in `X ∩ NP_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    pub prime: u64,
    pub n: u64,
}

/// Primes `p <= prime_limit` in `PP_a` for which `X ∩ NP_p ∩ [1, limit]` is
/// nonempty, each with its least witness.
pub fn witness_primes<F>(
    in_set: F,
    a: u64,
    prime_limit: u64,
    limit: u64,
    exec: Execution,
) -> Vec<Witness>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let primes: Vec<u64> =
        odd_sieve(prime_limit).into_iter().filter(|&p| pp_contains(p, a)).collect();
    let found = exec.map(&primes, |&p| {
        (1..=limit / p)
            .filter(|m| m % p != 0)
            .map(|m| m * p)
            .find(|&n| in_set(n) && np_contains_factored(&factor(n).expect("n >= 1"), p))
            .map(|n| Witness { prime: p, n })
    });
    found.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn np_brute(n: u64, p: u64) -> bool {
        n.is_multiple_of(p) && !(n / p).is_multiple_of(p) && (2..=n).filter(|d| n.is_multiple_of(*d)).all(|d| d % p != 1)
    }

    #[test]
    fn np_examples() {
        for p in [2, 3, 5, 7, 11, 101] {
            assert!(np_contains(p, p).unwrap());
        }
        assert!(!np_contains(12, 3).unwrap());
        assert!(np_contains(15, 5).unwrap());
        assert!(np_contains(15, 3).unwrap());
        assert!(!np_contains(21, 3).unwrap());
        assert_eq!(np_contains(10, 4), Err(NumTheoryError::NotPrime(4)));
        assert_eq!(np_contains(10, 1), Err(NumTheoryError::NotPrime(1)));
    }

    #[test]
    fn np_matches_brute_force() {
        for p in [2, 3, 5, 7] {
            for n in 1..3000 {
                assert_eq!(np_contains(n, p).unwrap(), np_brute(n, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn pp_examples() {
        for p in [2, 3, 5, 7, 13] {
            assert!(pp_contains(p, 1));
        }
        assert!(pp_contains(5, 6));
        assert!(!pp_contains(7, 6));
        assert!(!pp_contains(3, 6));
    }

    #[test]
    fn sp_examples() {
        for a in 1..10 {
            assert!(!sp_contains(1, a).unwrap());
        }
        assert!(sp_contains(15, 1).unwrap());
        assert!(!sp_contains(12, 6).unwrap());
    }

    #[test]
    fn witnesses() {
        let even = witness_primes(|n| n % 2 == 0, 1, 20, 200, Execution::Sequential);
        assert!(even.contains(&Witness { prime: 3, n: 6 }));
        assert!(witness_primes(|n| n == 1, 5, 50, 100, Execution::Sequential).is_empty());

        let squarefree = |n: u64| factor(n).unwrap().is_squarefree();
        let small = witness_primes(squarefree, 2, 30, 1000, Execution::Sequential);
        let large = witness_primes(squarefree, 2, 300, 1000, Execution::Parallel);
        assert!(large.len() > small.len());
        assert_eq!(&large[..small.len()], &small[..]);
        for w in &large {
            assert!(pp_contains(w.prime, 2));
            assert!(np_brute(w.n, w.prime) && squarefree(w.n));
        }
    }
}
