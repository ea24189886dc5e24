//! Exact counts `S(m, n)`: terms of size `n` needing at most `m` enclosing
//! binders, and `S(∞, n)` for all terms of size `n`.
//!
//! For `n >= 2`:
//!
//! ```text
//! S(m, n) = [m >= n-1] + S(m+1, n-2) + Σ_{k=0}^{n-2} S(m, k) S(m, n-2-k)
//! ```
//!
//! and `S(m, n) = S(∞, n)` whenever `m >= n-1`, so each column `n` only
//! stores `m < n-1` next to the dedicated `∞` row.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::par::Strategy;

/// Bound on the free indices of a term class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FreeBound {
    AtMost(usize),
    Unbounded,
}

impl FreeBound {
    /// The bound as a concrete `m` for size `n`, using saturation.
    pub fn clamp(self, n: usize) -> usize {
        let top = n.saturating_sub(1);
        match self {
            FreeBound::AtMost(m) => m.min(top),
            FreeBound::Unbounded => top,
        }
    }

    pub fn admits(self, max_free_index: usize) -> bool {
        match self {
            FreeBound::AtMost(m) => max_free_index <= m,
            FreeBound::Unbounded => true,
        }
    }
}

impl fmt::Display for FreeBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeBound::AtMost(m) => write!(f, "{m}"),
            FreeBound::Unbounded => f.write_str("inf"),
        }
    }
}

impl FromStr for FreeBound {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(FreeBound::Unbounded),
            other => other
                .parse()
                .map(FreeBound::AtMost)
                .map_err(|_| format!("expected a non-negative integer or 'inf', got {other:?}")),
        }
    }
}

/// Memoized `S(m, n)` for `n <= max_n`. Immutable once built; `extend_to`
/// appends columns.
#[derive(Clone, Debug)]
pub struct CountTable {
    unbounded: Vec<BigUint>,
    /// `columns[n][m]` for `m < n - 1`.
    columns: Vec<Vec<BigUint>>,
}

impl CountTable {
    pub fn new(max_n: usize) -> Self {
        Self::with_strategy(max_n, Strategy::default())
    }

    pub fn with_strategy(max_n: usize, strategy: Strategy) -> Self {
        let mut table = CountTable {
            unbounded: Vec::new(),
            columns: Vec::new(),
        };
        table.extend_to(max_n, strategy);
        table
    }

    pub fn max_n(&self) -> usize {
        self.unbounded.len() - 1
    }

    pub fn extend_to(&mut self, max_n: usize, strategy: Strategy) {
        let start = self.unbounded.len();
        if start > max_n {
            return;
        }
        for n in start..=max_n {
            let v = if n < 2 {
                BigUint::zero()
            } else {
                BigUint::one() + &self.unbounded[n - 2] + self.convolve(usize::MAX, n - 2)
            };
            self.unbounded.push(v);
        }
        strategy.install(|| {
            for n in start..=max_n {
                let column = strategy.map_range(0..n.saturating_sub(1), |m| {
                    // m < n-1, so the Iverson term vanishes.
                    self.raw(m + 1, n - 2) + self.convolve(m, n - 2)
                });
                self.columns.push(column);
            }
        });
    }

    /// `S(m, n)` for a concrete `m`; `n` must be within capacity.
    fn raw(&self, m: usize, n: usize) -> &BigUint {
        if m >= n.saturating_sub(1) {
            &self.unbounded[n]
        } else {
            &self.columns[n][m]
        }
    }

    /// `Σ_{k=0}^{total} S(m, k) S(m, total-k)` using the symmetry of the sum.
    fn convolve(&self, m: usize, total: usize) -> BigUint {
        let mut acc = BigUint::zero();
        // S(m, 0) = S(m, 1) = 0
        let mut k = 2;
        while 2 * k < total {
            acc += self.raw(m, k) * self.raw(m, total - k);
            k += 1;
        }
        acc <<= 1;
        if total.is_multiple_of(2) && total >= 4 {
            let mid = self.raw(m, total / 2);
            acc += mid * mid;
        }
        acc
    }

    /// `S(m, n)`, or `None` when `n` exceeds the capacity.
    pub fn get(&self, bound: FreeBound, n: usize) -> Option<&BigUint> {
        (n <= self.max_n()).then(|| self.raw(bound.clamp(n), n))
    }

    /// Like `get` but panics outside capacity; `m` is concrete and clamped.
    pub(crate) fn at(&self, m: usize, n: usize) -> &BigUint {
        self.raw(m, n)
    }

    /// `[S(m, 0), ..., S(m, max_n)]`; `None` when `max_n` exceeds capacity.
    pub fn row(&self, bound: FreeBound, max_n: usize) -> Option<Vec<BigUint>> {
        (max_n <= self.max_n()).then(|| (0..=max_n).map(|n| self.raw(bound.clamp(n), n).clone()).collect())
    }
}

/// A count table shared between threads that grows on demand.
#[derive(Debug)]
pub struct Counter {
    table: RwLock<CountTable>,
    strategy: Strategy,
}

impl Default for Counter {
    fn default() -> Self {
        Counter::new(0)
    }
}

impl Counter {
    pub fn new(initial_max_n: usize) -> Self {
        Counter::with_strategy(initial_max_n, Strategy::default())
    }

    pub fn with_strategy(initial_max_n: usize, strategy: Strategy) -> Self {
        Counter {
            table: RwLock::new(CountTable::with_strategy(initial_max_n, strategy)),
            strategy,
        }
    }

    pub fn ensure(&self, n: usize) {
        if self.table.read().unwrap().max_n() >= n {
            return;
        }
        let mut table = self.table.write().unwrap();
        let target = n.max(2 * table.max_n());
        table.extend_to(target, self.strategy);
    }

    pub fn count(&self, bound: FreeBound, n: usize) -> BigUint {
        self.ensure(n);
        self.table.read().unwrap().get(bound, n).unwrap().clone()
    }

    pub fn count_row(&self, bound: FreeBound, max_n: usize) -> Vec<BigUint> {
        self.ensure(max_n);
        self.table.read().unwrap().row(bound, max_n).unwrap()
    }

    pub fn with_table<R>(&self, n: usize, f: impl FnOnce(&CountTable) -> R) -> R {
        self.ensure(n);
        f(&self.table.read().unwrap())
    }
}

/// Truncated power series with natural-number coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Series(Vec<BigUint>);

impl Series {
    fn zero(len: usize) -> Self {
        Series(vec![BigUint::zero(); len])
    }

    fn len(&self) -> usize {
        self.0.len()
    }

    fn add(&self, other: &Series) -> Series {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn mul(&self, other: &Series) -> Series {
        let len = self.len();
        let mut out = Series::zero(len);
        for (i, a) in self.0.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.0.iter().take(len - i).enumerate() {
                out.0[i + j] += a * b;
            }
        }
        out
    }

    /// Multiplication by `z^k`.
    fn shift(&self, k: usize) -> Series {
        let mut out = Series::zero(self.len());
        for i in k..self.len() {
            out.0[i] = self.0[i - k].clone();
        }
        out
    }
}

/// Checks `S∞(z) = z²/(1-z) + z² S∞(z) + z² S∞(z)²` coefficient-wise up to
/// `z^max_n` against the tabulated recurrence.
pub fn verify_functional_equation(table: &CountTable, max_n: usize) -> bool {
    let Some(row) = table.row(FreeBound::Unbounded, max_n) else {
        return false;
    };
    let s = Series(row);
    let len = s.len();
    let geometric = Series((0..len).map(|n| BigUint::from(u8::from(n >= 2))).collect());
    let rhs = geometric.add(&s.shift(2)).add(&s.mul(&s).shift(2));
    rhs == s
}
