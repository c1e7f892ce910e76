use std::sync::OnceLock;

use super::{NumTheoryError, DEFAULT_FACTOR_BOUND};

/// A positive integer together with its prime factorisation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredInteger {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs in increasing prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Number of divisors, `prod (e_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// Recomputes the value from the factor list.
    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Removes one factor of `p`; `p` must divide the value.
    pub(crate) fn without_one(&self, p: u64) -> FactoredInteger {
        let mut factors = self.factors.clone();
        let pos = factors.iter().position(|&(q, _)| q == p).expect("p divides value");
        if factors[pos].1 == 1 {
            factors.remove(pos);
        } else {
            factors[pos].1 -= 1;
        }
        FactoredInteger { value: self.value / p, factors }
    }

    pub(crate) fn from_parts(value: u64, factors: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(factors.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), value);
        FactoredInteger { value, factors }
    }
}

/// All primes up to some limit, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeList {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeList {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

const PRIME_LIST_BUDGET: u64 = 1 << 34;

/// Sieve of Eratosthenes over odd numbers.
pub fn primes_up_to(limit: u64) -> Result<PrimeList, NumTheoryError> {
    if limit > PRIME_LIST_BUDGET {
        return Err(NumTheoryError::MemoryBudget { requested: limit, budget: PRIME_LIST_BUDGET });
    }
    Ok(PrimeList { limit, primes: odd_sieve(limit) })
}

pub(crate) fn odd_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    // index i stands for 2i + 1
    let half = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(half / 8 + 1);
    primes.push(2);
    primes.extend(
        composite.iter().enumerate().filter(|(_, &c)| !c).map(|(i, _)| 2 * i as u64 + 1),
    );
    primes
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| odd_sieve(1 << 16))
}

/// Exact factorisation by trial division.
pub fn factor(n: u64) -> Result<FactoredInteger, NumTheoryError> {
    factor_with_bound(n, DEFAULT_FACTOR_BOUND)
}

pub fn factor_with_bound(n: u64, bound: u64) -> Result<FactoredInteger, NumTheoryError> {
    if n == 0 || n > bound {
        return Err(NumTheoryError::OutOfRange { value: n, bound });
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |rest: &mut u64, q: u64| {
        let mut e = 0;
        while (*rest).is_multiple_of(q) {
            *rest /= q;
            e += 1;
        }
        if e > 0 {
            factors.push((q, e));
        }
    };
    for &q in small_primes() {
        if q * q > rest {
            break;
        }
        push(&mut rest, q);
    }
    // Past the cached primes, continue over 6k +- 1.
    let mut q = (1u64 << 16) + 1;
    q += (6 - q % 6 + 5) % 6; // first q >= 65537 with q = 5 mod 6
    while q.checked_mul(q).is_some_and(|sq| sq <= rest) {
        push(&mut rest, q);
        push(&mut rest, q + 2);
        q += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(FactoredInteger { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    match factor(n) {
        Ok(f) => f.factors.len() == 1 && f.factors[0].1 == 1,
        Err(_) => false,
    }
}

/// All divisors in increasing order.
pub fn divisors(n: &FactoredInteger) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in &n.factors {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_small() {
        assert!(factor(1).unwrap().factors().is_empty());
        assert_eq!(factor(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factor(97).unwrap().factors(), &[(97, 1)]);
    }

    #[test]
    fn factor_multiplies_back() {
        for n in [(1u64 << 40) + 1, (1 << 63) - 1, 600_851_475_143, 4_294_967_311 * 3] {
            let f = factor(n).unwrap();
            assert_eq!(f.product(), n);
            assert!(f.factors().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn factor_range() {
        assert!(matches!(factor(0), Err(NumTheoryError::OutOfRange { .. })));
        assert!(factor(u64::MAX).is_err());
        assert!(factor_with_bound(1001, 1000).is_err());
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(&factor(1).unwrap()), vec![1]);
        assert_eq!(divisors(&factor(12).unwrap()), vec![1, 2, 3, 4, 6, 12]);
        let brute: Vec<u64> = (1..=720).filter(|d| 720 % d == 0).collect();
        assert_eq!(brute.len(), 30);
        assert_eq!(divisors(&factor(720).unwrap()), brute);
        assert_eq!(factor(720).unwrap().divisor_count(), 30);
    }

    #[test]
    fn prime_counts() {
        assert_eq!(primes_up_to(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert_eq!(primes_up_to(100).unwrap().len(), 25);
        assert!(primes_up_to(1).unwrap().is_empty());
        assert_eq!(primes_up_to(2).unwrap().primes(), &[2]);
        let big = primes_up_to(1_000_000).unwrap();
        assert_eq!(big.len(), 78498);
        // trial division on a sample
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in (999_000..1_000_000).chain(0..2000) {
            assert_eq!(big.primes().binary_search(&n).is_ok(), trial(n), "n = {n}");
        }
    }
}
