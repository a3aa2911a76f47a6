//! Exact prime counting and the Möbius function.

mod lucy;
mod mobius;
mod sieve;

pub use lucy::{prime_pi_fast, FAST_MAX};
pub use mobius::{mobius, mobius_sieve, MOBIUS_SIEVE_MAX};
pub use sieve::{
    for_each_prime_in, prime_pi_sieve, sieve_primes, PrimeTable, SieveConfig, DEFAULT_MAX_LIMIT,
    DEFAULT_MEMORY_BUDGET, DEFAULT_SEGMENT_BITS, MEMORY_BUDGET_ENV,
};

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PiSource {
    Sieved,
    Combinatorial,
    EmbeddedConstant,
}

impl std::fmt::Display for PiSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PiSource::Sieved => "sieved",
            PiSource::Combinatorial => "combinatorial",
            PiSource::EmbeddedConstant => "embedded",
        })
    }
}

/// π(x): the number of primes `<= x`, with where it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiValue {
    pub x: u64,
    pub count: u64,
    pub source: PiSource,
}

impl PiValue {
    pub fn new(x: u64, count: u64, source: PiSource) -> Self {
        PiValue { x, count, source }
    }
}

/// Above this the combinatorial counter is faster than sieving.
pub const SIEVE_CROSSOVER: u64 = 10_000_000;

/// Exact π(x) by whichever method suits the size of `x`.
pub fn prime_pi(x: u64, cfg: &SieveConfig) -> Result<PiValue> {
    if x <= SIEVE_CROSSOVER && x <= cfg.max_limit {
        prime_pi_sieve(x, cfg)
    } else {
        prime_pi_fast(x)
    }
}
