//! Bijection between ranks `1..=S(m, n)` and terms of size `n` with at most
//! `m` free indices, its inverse, and uniform samplers built on it.
//!
//! Rank order, for size `n` and bound `m`:
//!
//! 1. ranks `1..=S(m+1, n-2)` are abstractions, in the order of their bodies;
//! 2. then applications, grouped by the size `j` of the function part
//!    (`j = 0, 1, ...`); within a group, `(f, a)` pairs are laid out row-major
//!    with the argument varying fastest;
//! 3. when `m >= n-1`, rank `S(m, n)` itself is the index `n-1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::count::{CountTable, FreeBound};
use crate::term::Term;
use crate::typing;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnrankError {
    #[error("rank {k} is outside 1..={total}")]
    OutOfRange { k: BigUint, total: BigUint },
    #[error("there are no terms of size {n} with free indices bounded by {bound}")]
    NoTerms { n: usize, bound: FreeBound },
    #[error("term has free index {found}, which exceeds the bound {bound}")]
    FreeIndexExceeded { found: usize, bound: FreeBound },
    #[error("count table holds sizes up to {capacity}, but size {n} was requested")]
    Capacity { n: usize, capacity: usize },
    #[error("no typable term found after {attempts} draws")]
    AttemptsExhausted { attempts: u64 },
}

fn class_size(table: &CountTable, bound: FreeBound, n: usize) -> Result<&BigUint, UnrankError> {
    let total = table.get(bound, n).ok_or(UnrankError::Capacity {
        n,
        capacity: table.max_n(),
    })?;
    if total.is_zero() {
        return Err(UnrankError::NoTerms { n, bound });
    }
    Ok(total)
}

/// The `k`-th term (1-based) of size `n` with free indices bounded by `bound`.
pub fn unrank(table: &CountTable, bound: FreeBound, n: usize, k: &BigUint) -> Result<Term, UnrankError> {
    let total = class_size(table, bound, n)?;
    if k.is_zero() || k > total {
        return Err(UnrankError::OutOfRange {
            k: k.clone(),
            total: total.clone(),
        });
    }
    Ok(unrank_in(table, bound.clamp(n), n, k.clone()))
}

fn unrank_in(table: &CountTable, m: usize, n: usize, k: BigUint) -> Term {
    if m + 1 >= n && &k == table.at(m, n) {
        return Term::var(n - 1);
    }
    let abstractions = table.at(m + 1, n - 2);
    if &k <= abstractions {
        return Term::abs(unrank_in(table, m + 1, n - 2, k));
    }
    let mut h = k - abstractions;
    let rest = n - 2;
    for j in 0..=rest {
        let right = table.at(m, rest - j);
        let block = table.at(m, j) * right;
        if h <= block {
            let (q, r) = (h - 1u8).div_rem(right);
            return Term::app(
                unrank_in(table, m, j, q + 1u8),
                unrank_in(table, m, rest - j, r + 1u8),
            );
        }
        h -= block;
    }
    unreachable!("rank within S(m, n) always falls in some block")
}

/// Inverse of [`unrank`]: the rank of `t` among terms of its size under `bound`.
pub fn rank(table: &CountTable, bound: FreeBound, t: &Term) -> Result<BigUint, UnrankError> {
    let found = t.max_free_index();
    if !bound.admits(found) {
        return Err(UnrankError::FreeIndexExceeded { found, bound });
    }
    let n = t.size();
    if n > table.max_n() {
        return Err(UnrankError::Capacity {
            n,
            capacity: table.max_n(),
        });
    }
    Ok(rank_in(table, bound.clamp(n), t))
}

fn rank_in(table: &CountTable, m: usize, t: &Term) -> BigUint {
    let n = t.size();
    match t {
        // Only reachable with m >= n-1: the index is the last rank.
        Term::Index(_) => table.at(m, n).clone(),
        Term::Abs(body) => rank_in(table, m + 1, body),
        Term::App(f, a) => {
            let rest = n - 2;
            let j = f.size();
            let mut k = table.at(m + 1, rest).clone();
            for l in 0..j {
                k += table.at(m, l) * table.at(m, rest - l);
            }
            let kf = rank_in(table, m, f);
            let ka = rank_in(table, m, a);
            k + (kf - 1u8) * table.at(m, rest - j) + ka
        }
    }
}

/// Seeded source of uniform ranks.
///
/// The generator is ChaCha20 (`rand_chacha`) seeded through
/// `SeedableRng::seed_from_u64`, which is platform independent. Uniform
/// integers below a bound are drawn by rejection: take `bits(total - 1)`
/// random bits from little-endian 64-bit words and retry when the value is
/// not below `total`.
#[derive(Clone, Debug)]
pub struct Sampler {
    seed: u64,
    rng: ChaCha20Rng,
}

impl Sampler {
    pub const GENERATOR: &'static str = "chacha20-seed_from_u64";

    pub fn new(seed: u64) -> Self {
        Sampler {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for worker `i`: seeded with `seed ^ i`.
    pub fn for_worker(seed: u64, worker: u64) -> Self {
        Sampler::new(seed ^ worker)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform in `1..=total`. Panics on `total == 0`.
    pub fn uniform_rank(&mut self, total: &BigUint) -> BigUint {
        assert!(!total.is_zero(), "empty range");
        let span = total - 1u8;
        let bits = span.bits();
        if bits == 0 {
            return BigUint::one();
        }
        let words = bits.div_ceil(64) as usize;
        let top_mask = match bits % 64 {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        };
        loop {
            let mut digits: Vec<u64> = (0..words).map(|_| self.rng.next_u64()).collect();
            digits[words - 1] &= top_mask;
            let x = to_biguint(&digits);
            if x <= span {
                return x + 1u8;
            }
        }
    }
}

fn to_biguint(digits: &[u64]) -> BigUint {
    let mut bytes = Vec::with_capacity(digits.len() * 8);
    for d in digits {
        bytes.extend_from_slice(&d.to_le_bytes());
    }
    BigUint::from_bytes_le(&bytes)
}

/// A uniformly random term of size `n` under `bound`.
pub fn sample(table: &CountTable, bound: FreeBound, n: usize, sampler: &mut Sampler) -> Result<Term, UnrankError> {
    let total = class_size(table, bound, n)?;
    let k = sampler.uniform_rank(total);
    Ok(unrank_in(table, bound.clamp(n), n, k))
}

/// A uniformly random simply typable term, by rejecting untypable draws.
pub fn sample_typable(
    table: &CountTable,
    bound: FreeBound,
    n: usize,
    sampler: &mut Sampler,
    max_attempts: u64,
) -> Result<Term, UnrankError> {
    class_size(table, bound, n)?;
    let free = bound.clamp(n);
    for _ in 0..max_attempts {
        let t = sample(table, bound, n, sampler)?;
        if typing::is_typable(&t, free).unwrap_or(false) {
            return Ok(t);
        }
    }
    Err(UnrankError::AttemptsExhausted { attempts: max_attempts })
}

/// All terms of the class in rank order. Intended for small classes.
pub fn enumerate(table: &CountTable, bound: FreeBound, n: usize) -> Result<Vec<Term>, UnrankError> {
    let total = match class_size(table, bound, n) {
        Ok(t) => t.to_u64().expect("class too large to enumerate"),
        Err(UnrankError::NoTerms { .. }) => return Ok(Vec::new()),
        Err(e) => return Err(e),
    };
    let m = bound.clamp(n);
    Ok((1..=total).map(|k| unrank_in(table, m, n, BigUint::from(k))).collect())
}
