//! Segmented sieves over `[1, limit]`.
//!
//! `NP_p` is sieved by residue-class divisors: start from the multiples of
//! `p` not divisible by `p^2`, then clear every multiple of `p*d` for each
//! `d > 1` with `d = 1 (mod p)`. The other sets are evaluated from a
//! segmented factorisation.

use std::fmt;

use bitvec::prelude::*;
use num_integer::Roots;

use super::factor::{is_prime, odd_sieve, FactoredInteger};
use super::sets::{np_contains_factored, pp_contains, sp_contains_factored};
use super::NumTheoryError;
use crate::exec::Execution;

/// A named membership test over the positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    All,
    Even,
    Primes,
    Squarefree,
    /// `NP_p`
    Np(u64),
    /// The primes of `PP_a`.
    Pp(u64),
    /// `SP_a`
    Sp(u64),
}

impl Predicate {
    /// Parses `all`, `even`, `primes`, `squarefree`, `np:<p>`, `pp:<a>` or
    /// `sp:<a>`.
    pub fn parse(name: &str) -> Result<Predicate, NumTheoryError> {
        let unknown = || NumTheoryError::UnknownPredicate(name.to_string());
        let param = |s: &str| s.parse::<u64>().ok().filter(|&v| v >= 1).ok_or_else(unknown);
        let pred = match name.split_once(':') {
            None => match name {
                "all" => Predicate::All,
                "even" => Predicate::Even,
                "primes" => Predicate::Primes,
                "squarefree" => Predicate::Squarefree,
                _ => return Err(unknown()),
            },
            Some(("np", p)) => Predicate::Np(param(p)?),
            Some(("pp", a)) => Predicate::Pp(param(a)?),
            Some(("sp", a)) => Predicate::Sp(param(a)?),
            Some(_) => return Err(unknown()),
        };
        pred.validate()?;
        Ok(pred)
    }

    fn validate(self) -> Result<(), NumTheoryError> {
        match self {
            Predicate::Np(p) if !is_prime(p) => Err(NumTheoryError::NotPrime(p)),
            Predicate::Pp(0) | Predicate::Sp(0) => {
                Err(NumTheoryError::InvalidArgument("a must be positive".into()))
            }
            _ => Ok(()),
        }
    }

    /// Pointwise membership, by factorisation.
    pub fn contains(self, n: u64) -> Result<bool, NumTheoryError> {
        self.validate()?;
        let f = super::factor(n)?;
        Ok(self.contains_factored(&f))
    }

    fn contains_factored(self, f: &FactoredInteger) -> bool {
        let n = f.value();
        match self {
            Predicate::All => true,
            Predicate::Even => n.is_multiple_of(2),
            Predicate::Primes => f.factors().len() == 1 && f.factors()[0].1 == 1,
            Predicate::Squarefree => f.is_squarefree(),
            Predicate::Np(p) => np_contains_factored(f, p),
            Predicate::Pp(a) => {
                f.factors().len() == 1 && f.factors()[0].1 == 1 && pp_contains(n, a)
            }
            Predicate::Sp(a) => sp_contains_factored(f, a),
        }
    }

    /// Membership flags for `lo..hi`; `base_primes` must hold every prime
    /// up to `sqrt(hi - 1)`.
    fn segment(self, lo: u64, hi: u64, base_primes: &[u64]) -> Vec<bool> {
        match self {
            Predicate::All => vec![true; (hi - lo) as usize],
            Predicate::Even => (lo..hi).map(|n| n % 2 == 0).collect(),
            Predicate::Np(p) => np_segment(p, lo, hi),
            _ => {
                let mut out = Vec::with_capacity((hi - lo) as usize);
                let mut start = lo;
                while start < hi {
                    let end = hi.min(start + FACTOR_BLOCK);
                    factor_block(start, end, base_primes, |f| out.push(self.contains_factored(f)));
                    start = end;
                }
                out
            }
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::All => write!(f, "all"),
            Predicate::Even => write!(f, "even"),
            Predicate::Primes => write!(f, "primes"),
            Predicate::Squarefree => write!(f, "squarefree"),
            Predicate::Np(p) => write!(f, "np:{p}"),
            Predicate::Pp(a) => write!(f, "pp:{a}"),
            Predicate::Sp(a) => write!(f, "sp:{a}"),
        }
    }
}

/// Segment size, memory budget and execution mode for sieves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub segment_len: u64,
    /// Largest `limit` for which a full membership array is materialised.
    pub memory_budget: u64,
    pub exec: Execution,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig { segment_len: 1 << 22, memory_budget: 1 << 34, exec: Execution::Sequential }
    }
}

impl SieveConfig {
    pub fn with_exec(self, exec: Execution) -> Self {
        SieveConfig { exec, ..self }
    }

    pub fn with_segment_len(self, segment_len: u64) -> Self {
        SieveConfig { segment_len: segment_len.max(1), ..self }
    }
}

/// Membership flags over `[1, limit]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    limit: u64,
    bits: BitVec<u64, Lsb0>,
}

impl Membership {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.limit && self.bits[(n - 1) as usize]
    }

    pub fn count(&self) -> u64 {
        self.bits.count_ones() as u64
    }

    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64 + 1)
    }
}

/// Sieves `NP_p` over `[1, limit]`.
pub fn sieve_np(p: u64, limit: u64, config: &SieveConfig) -> Result<Membership, NumTheoryError> {
    if !is_prime(p) {
        return Err(NumTheoryError::NotPrime(p));
    }
    if limit < p {
        return Err(NumTheoryError::InvalidArgument(format!("limit {limit} is below p = {p}")));
    }
    sieve(Predicate::Np(p), limit, config)
}

/// Materialises the members of `pred` in `[1, limit]`.
pub fn sieve(pred: Predicate, limit: u64, config: &SieveConfig) -> Result<Membership, NumTheoryError> {
    pred.validate()?;
    if limit > config.memory_budget {
        return Err(NumTheoryError::MemoryBudget { requested: limit, budget: config.memory_budget });
    }
    let base = odd_sieve(limit.sqrt());
    let segments = split(1, limit + 1, config.segment_len);
    let parts = config.exec.map(&segments, |&(lo, hi)| pred.segment(lo, hi, &base));
    let mut bits = BitVec::with_capacity(limit as usize);
    for part in parts {
        bits.extend(part);
    }
    Ok(Membership { limit, bits })
}

/// Member counts of `pred` over each half-open range in `ranges`.
pub(crate) fn count_ranges(
    pred: Predicate,
    ranges: &[(u64, u64)],
    config: &SieveConfig,
) -> Result<Vec<u64>, NumTheoryError> {
    pred.validate()?;
    let top = ranges.iter().map(|&(_, hi)| hi).max().unwrap_or(1);
    let base = odd_sieve((top - 1).sqrt());
    let mut tasks = Vec::new();
    for (i, &(lo, hi)) in ranges.iter().enumerate() {
        tasks.extend(split(lo, hi, config.segment_len).into_iter().map(|s| (i, s)));
    }
    let counts = config.exec.map(&tasks, |&(_, (lo, hi))| {
        pred.segment(lo, hi, &base).into_iter().filter(|&b| b).count() as u64
    });
    let mut out = vec![0u64; ranges.len()];
    for ((i, _), c) in tasks.iter().zip(counts) {
        out[*i] += c;
    }
    Ok(out)
}

fn split(lo: u64, hi: u64, len: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut start = lo;
    while start < hi {
        let end = hi.min(start.saturating_add(len));
        out.push((start, end));
        start = end;
    }
    out
}

fn np_segment(p: u64, lo: u64, hi: u64) -> Vec<bool> {
    let mut marks: Vec<bool> = (lo..hi).map(|n| n % p == 0 && !(n / p).is_multiple_of(p)).collect();
    if hi <= lo {
        return marks;
    }
    let span = hi - lo;
    let mut clear_multiples = |step: u64| {
        let mut m = lo.div_ceil(step) * step;
        while m < hi {
            marks[(m - lo) as usize] = false;
            m += step;
        }
    };
    // d = 1 (mod p), d > 1. Short strides walk the segment directly.
    let mut d = p + 1;
    while d.saturating_mul(p) <= span && d.saturating_mul(p) < hi {
        clear_multiples(d * p);
        d += p;
    }
    // Long strides hit the segment at most a few times each: enumerate the
    // cofactor k instead and solve for the admissible d.
    let d_min = d;
    let mut k = 1u64;
    while p.saturating_mul(k).saturating_mul(d_min) < hi {
        let pk = p * k;
        let mut d = lo.div_ceil(pk).max(d_min);
        // round up to 1 mod p
        d += (p + 1 - d % p) % p;
        while d * pk < hi {
            marks[(d * pk - lo) as usize] = false;
            d += p;
        }
        k += 1;
    }
    marks
}

const FACTOR_BLOCK: u64 = 1 << 15;

/// Calls `visit` with the factorisation of every `n` in `lo..hi`, in order.
fn factor_block<F: FnMut(&FactoredInteger)>(lo: u64, hi: u64, base_primes: &[u64], mut visit: F) {
    let len = (hi - lo) as usize;
    let mut rest: Vec<u64> = (lo..hi).collect();
    let mut factors: Vec<Vec<(u64, u32)>> = vec![Vec::new(); len];
    for &q in base_primes {
        if q * q >= hi {
            break;
        }
        let mut m = lo.div_ceil(q) * q;
        while m < hi {
            let i = (m - lo) as usize;
            let mut e = 0;
            while rest[i].is_multiple_of(q) {
                rest[i] /= q;
                e += 1;
            }
            factors[i].push((q, e));
            m += q;
        }
    }
    for (i, mut fs) in factors.into_iter().enumerate() {
        if rest[i] > 1 {
            fs.push((rest[i], 1));
        }
        visit(&FactoredInteger::from_parts(lo + i as u64, fs));
    }
}
