//! Primes, factorisation and the integer sets `NP_p`, `PP_a`, `SP_a`.
//!
//! `NP_p` is the set of `n` with `p` dividing `n` exactly once and no
//! divisor `d > 1` of `n` congruent to 1 mod `p`; every group whose order
//! lies in `NP_p` has a normal subgroup of order `p`. `PP_a` is the set of
//! primes `p` with `gcd(a, p) = 1` and `gcd(a, p - 1) <= 2`, and `SP_a` is
//! the union of `NP_p` over `p` in `PP_a`.

mod density;
mod factor;
mod sets;
mod sieve;

pub use density::{default_checkpoints, density_series, format_ratio, Checkpoint, DensitySeries};
pub use factor::{divisors, factor, factor_with_bound, is_prime, primes_up_to, FactoredInteger, PrimeList};
pub use sets::{np_contains, np_contains_factored, pp_contains, sp_contains, sp_contains_factored, witness_primes, Witness};
pub use sieve::{sieve, sieve_np, Membership, Predicate, SieveConfig};

use thiserror::Error;

/// Largest value accepted by [`factor`] unless a different bound is given.
pub const DEFAULT_FACTOR_BOUND: u64 = (1 << 63) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("{value} is outside the supported range 1..={bound}")]
    OutOfRange { value: u64, bound: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("sieve over {requested} entries exceeds the memory budget of {budget} entries")]
    MemoryBudget { requested: u64, budget: u64 },
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
