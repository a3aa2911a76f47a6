//! Segmented, odd-only, bit-packed sieve of Eratosthenes.
//!
//! Bit `i` of a segment stands for the odd number `2i + 1`. Segments are
//! sieved independently against the base primes up to √limit, so memory use
//! for counting stays at one segment per worker thread no matter how large
//! the limit is. Only [`sieve_primes`] materializes a full table, and that is
//! guarded by the configured memory budget.

use rayon::prelude::*;

use super::{PiSource, PiValue};
use crate::error::{Error, Result};

/// Environment variable holding the byte budget for materialized tables.
pub const MEMORY_BUDGET_ENV: &str = "PRIME_DENSITY_SIEVE_MEMORY";

pub const DEFAULT_SEGMENT_BITS: usize = 1 << 20;
pub const DEFAULT_MAX_LIMIT: u64 = 10_000_000_000;
pub const DEFAULT_MEMORY_BUDGET: usize = 512 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveConfig {
    /// Odd candidates per segment; rounded up to a multiple of 64.
    pub segment_bits: usize,
    /// Largest x accepted by the sieve-based operations.
    pub max_limit: u64,
    /// Byte budget for a materialized [`PrimeTable`].
    pub memory_budget: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_bits: DEFAULT_SEGMENT_BITS,
            max_limit: DEFAULT_MAX_LIMIT,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl SieveConfig {
    /// Defaults, with the memory budget overridden from
    /// `PRIME_DENSITY_SIEVE_MEMORY` (bytes) when set and parseable.
    pub fn from_env() -> Self {
        let mut cfg = SieveConfig::default();
        if let Some(budget) = std::env::var(MEMORY_BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            cfg.memory_budget = budget;
        }
        cfg
    }

    fn words_per_segment(&self) -> usize {
        self.segment_bits.max(64).div_ceil(64)
    }
}

/// Exact prime membership over `[2, limit]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    // bit i set <=> 2i+1 is prime
    odd_bits: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn contains(&self, n: u64) -> bool {
        if n > self.limit || n < 2 {
            return false;
        }
        if n == 2 {
            return true;
        }
        if n.is_multiple_of(2) {
            return false;
        }
        let i = (n / 2) as usize;
        self.odd_bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of primes in the table.
    pub fn len(&self) -> u64 {
        if self.limit < 2 {
            return 0;
        }
        1 + self.odd_bits.iter().map(|w| w.count_ones() as u64).sum::<u64>()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Primes in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.limit >= 2).then_some(2u64);
        two.into_iter().chain(self.odd_bits.iter().enumerate().flat_map(|(wi, &w)| {
            BitIter(w).map(move |b| 2 * (wi as u64 * 64 + b as u64) + 1)
        }))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(b)
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Odd primes up to `limit` by a plain (unsegmented) sieve; only used for
/// base primes, so `limit` is at most about 10^5.
fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    let mut i = 3;
    while i <= n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    out
}

/// Sieves the odd candidates with bit indices `[lo, lo + 64 * buf.len())` and
/// leaves set bits exactly at primes. Index 0 (the number 1) is cleared.
fn sieve_segment(lo: u64, buf: &mut [u64], base: &[u64]) {
    buf.fill(u64::MAX);
    let hi = lo + 64 * buf.len() as u64;
    for &p in base {
        let sq_idx = p * p / 2;
        if sq_idx >= hi {
            break;
        }
        // first odd multiple of p with index >= lo, and not below p^2
        let first_num = 2 * lo + 1;
        let mut m = first_num.div_ceil(p) * p;
        if m % 2 == 0 {
            m += p;
        }
        let mut idx = (m / 2).max(sq_idx);
        while idx < hi {
            let off = (idx - lo) as usize;
            buf[off / 64] &= !(1u64 << (off % 64));
            idx += p;
        }
    }
    if lo == 0 {
        buf[0] &= !1;
    }
}

fn base_primes_for(limit: u64) -> Vec<u64> {
    small_odd_primes(isqrt(limit))
}

/// Exact prime membership over `[2, limit]`.
pub fn sieve_primes(limit: u64, cfg: &SieveConfig) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::Domain(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > cfg.max_limit {
        return Err(Error::capacity(limit, cfg.max_limit, " (sieve maximum)"));
    }
    let n_bits = limit / 2 + 1; // indices 0..=limit/2 cover odd numbers <= limit (+1 when limit even)
    let n_words = n_bits.div_ceil(64) as usize;
    let bytes = n_words.saturating_mul(8);
    if bytes > cfg.memory_budget {
        return Err(Error::capacity(
            bytes as u64,
            cfg.memory_budget as u64,
            " bytes (sieve memory budget; raise PRIME_DENSITY_SIEVE_MEMORY or use a counting operation)",
        ));
    }
    let base = base_primes_for(limit);
    let mut odd_bits = vec![0u64; n_words];
    let wps = cfg.words_per_segment();
    odd_bits.par_chunks_mut(wps).enumerate().for_each(|(si, chunk)| {
        sieve_segment((si * wps * 64) as u64, chunk, &base);
    });
    clear_above(&mut odd_bits, limit);
    Ok(PrimeTable { limit, odd_bits })
}

/// Clears bits for odd numbers greater than `limit`.
fn clear_above(bits: &mut [u64], limit: u64) {
    // last valid odd index is (limit - 1) / 2 for limit >= 1
    let keep = (limit.saturating_sub(1) / 2 + 1) as usize;
    for (wi, w) in bits.iter_mut().enumerate() {
        let start = wi * 64;
        if start >= keep {
            *w = 0;
        } else if start + 64 > keep {
            *w &= (1u64 << (keep - start)) - 1;
        }
    }
}

/// Count primes `<= x` by segmented sieving, in parallel over segments.
pub fn prime_pi_sieve(x: u64, cfg: &SieveConfig) -> Result<PiValue> {
    if x > cfg.max_limit {
        return Err(Error::capacity(
            x,
            cfg.max_limit,
            " (sieve capacity; use the combinatorial counter prime_pi_fast)",
        ));
    }
    if x < 2 {
        return Ok(PiValue::new(x, 0, PiSource::Sieved));
    }
    let base = base_primes_for(x);
    let keep = (x - 1) / 2 + 1; // odd indices 0..keep
    let wps = cfg.words_per_segment() as u64;
    let seg_span = wps * 64;
    let n_segs = keep.div_ceil(seg_span);
    let odd = (0..n_segs)
        .into_par_iter()
        .map_init(
            || vec![0u64; wps as usize],
            |buf, si| {
                let lo = si * seg_span;
                sieve_segment(lo, buf, &base);
                let valid = (keep - lo).min(seg_span);
                count_prefix(buf, valid as usize)
            },
        )
        .sum::<u64>();
    Ok(PiValue::new(x, odd + 1, PiSource::Sieved))
}

fn count_prefix(buf: &[u64], bits: usize) -> u64 {
    let full = bits / 64;
    let mut c: u64 = buf[..full].iter().map(|w| w.count_ones() as u64).sum();
    let rem = bits % 64;
    if rem > 0 {
        c += (buf[full] & ((1u64 << rem) - 1)).count_ones() as u64;
    }
    c
}

/// Calls `visit` on every prime in `[lo, hi]` in increasing order, sieving
/// one segment at a time.
pub fn for_each_prime_in<F: FnMut(u64)>(lo: u64, hi: u64, cfg: &SieveConfig, mut visit: F) -> Result<()> {
    if hi > cfg.max_limit {
        return Err(Error::capacity(hi, cfg.max_limit, " (sieve capacity)"));
    }
    if hi < 2 || lo > hi {
        return Ok(());
    }
    if lo <= 2 {
        visit(2);
    }
    let base = base_primes_for(hi);
    let wps = cfg.words_per_segment();
    let seg_span = (wps * 64) as u64;
    let first_idx = lo.max(3) / 2;
    let last_idx = (hi - 1) / 2;
    if first_idx > last_idx {
        return Ok(());
    }
    let mut buf = vec![0u64; wps];
    // align segments to multiples of 64 so bit offsets stay word-aligned
    let mut seg_lo = first_idx / 64 * 64;
    while seg_lo <= last_idx {
        sieve_segment(seg_lo, &mut buf, &base);
        for (wi, &w) in buf.iter().enumerate() {
            for b in BitIter(w) {
                let idx = seg_lo + wi as u64 * 64 + b as u64;
                if idx < first_idx {
                    continue;
                }
                if idx > last_idx {
                    return Ok(());
                }
                visit(2 * idx + 1);
            }
        }
        seg_lo += seg_span;
    }
    Ok(())
}
