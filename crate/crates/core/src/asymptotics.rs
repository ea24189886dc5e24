//! Numerical side of the growth analysis.
//!
//! The generating function of all terms is
//!
//! ```text
//! S∞(z) = (1 - z - z² + z³ - sqrt(R∞(z))) / (2 z² (1 - z))
//! R∞(z) = z⁶ + 2z⁵ - 5z⁴ + 4z³ - z² - 2z + 1
//! ```
//!
//! Its dominant singularity is the smallest positive root `ρ` of `R∞`, and
//! with `Q(z) = R∞(z) / ((ρ - z)(1 - z))`
//!
//! ```text
//! S(∞, n) ~ C ρ^-n n^-3/2,   C = C̃ / Γ(-1/2),   C̃ = -sqrt(ρ Q(ρ) / (1 - ρ)) / (2ρ²)
//! ```
//!
//! The closed-term bounds `σ_m` are the smallest positive roots of
//! `P_m(z) = 4z⁴(1 - z^m) - (1 - z)³(1 + z)²`.

use num_bigint::BigUint;

use crate::count::{CountTable, FreeBound};
use crate::par::Strategy;
use crate::poly::{real_roots, real_roots_dyadic, IntPolynomial, RealRoot, SturmChain};
use crate::real::{Dyadic, Fixed};

/// Reference value of `C̃`, reported for comparison. It is smaller than the
/// computed one by a factor of about `4π`.
pub const REFERENCE_C_TILDE: f64 = -0.288265354;

pub fn r_infinity() -> IntPolynomial {
    IntPolynomial::from_coeffs(&[1, -2, -1, 4, -5, 2, 1])
}

pub fn p_infinity() -> IntPolynomial {
    IntPolynomial::from_coeffs(&[-1, 1, 2, -2, 3, 1])
}

/// `(1 - z)³ (1 + z)²`
fn shared_factor() -> IntPolynomial {
    let one_minus = IntPolynomial::from_coeffs(&[1, -1]);
    let one_plus = IntPolynomial::from_coeffs(&[1, 1]);
    &one_minus.pow(3) * &one_plus.pow(2)
}

/// `P_m(z) = 4z⁴(1 - z^m) - (1 - z)³(1 + z)²`, expanded.
pub fn p_m(m: usize) -> IntPolynomial {
    let head = &(&IntPolynomial::monomial(1, 0) - &IntPolynomial::monomial(1, m)) * &IntPolynomial::monomial(4, 4);
    &head - &shared_factor()
}

/// Smallest root of `P_m` in `(0, 1]`; `P_m(1) = 0`, so it always exists.
pub fn sigma(m: usize, tolerance: f64) -> RealRoot {
    real_roots(&p_m(m), 0.0, 1.0, tolerance)
        .into_iter()
        .find(|r| r.hi > Dyadic::from_int(0))
        .expect("P_m vanishes at 1")
}

pub fn sigma_sequence(max_m: usize, tolerance: f64) -> Vec<RealRoot> {
    (0..=max_m).map(|m| sigma(m, tolerance)).collect()
}

/// Constants of the asymptotic formula for `S(∞, n)`.
#[derive(Clone, Debug)]
pub struct AsymptoticReport {
    pub rho: Fixed,
    pub growth: Fixed,
    pub q_at_rho: Fixed,
    pub c_tilde: Fixed,
    pub gamma_minus_half: Fixed,
    pub c: Fixed,
    /// Real roots of `R∞`, ascending.
    pub real_roots: Vec<RealRoot>,
    /// Number of distinct real roots of `R∞` on the whole line.
    pub real_root_count: usize,
}

impl AsymptoticReport {
    /// Computed `C̃` over [`REFERENCE_C_TILDE`]; about `4π`.
    pub fn c_tilde_ratio(&self) -> f64 {
        self.c_tilde.to_f64() / REFERENCE_C_TILDE
    }
}

/// Computes `ρ`, `1/ρ`, `Q(ρ)`, `C̃` and `C`. `ρ` itself is refined to at
/// least 128 bits regardless of `tolerance`, which bounds the widths of the
/// reported root brackets.
pub fn constants(tolerance: f64) -> AsymptoticReport {
    let r = r_infinity();
    let sturm = SturmChain::new(&r);
    let real_root_count = sturm.count_all();
    // Cauchy bound: every root has modulus below 1 + max |c_i / c_6| = 6.
    let roots = real_roots(&r, -6.0, 6.0, tolerance);

    let fine = Dyadic::new(1.into(), 128).min(Dyadic::from_f64(tolerance).unwrap());
    let positive = roots
        .iter()
        .find(|x| x.lo > Dyadic::from_int(0))
        .expect("R∞ has a positive root");
    let rho_root = real_roots_dyadic(&r, &positive.lo, &positive.hi, &fine)
        .into_iter()
        .next()
        .expect("root stays in its bracket");
    let rho = rho_root.to_fixed();

    let one = Fixed::one();
    let one_minus_rho = one.sub(&rho);
    // R∞ = (ρ - z)(1 - z) Q(z), so R∞'(ρ) = -(1 - ρ) Q(ρ).
    let q_at_rho = r.derivative().eval_fixed(&rho).neg().div(&one_minus_rho);
    let c_tilde = rho
        .mul(&q_at_rho)
        .div(&one_minus_rho)
        .sqrt()
        .neg()
        .div(&rho.mul(&rho).mul_int(2));
    let gamma_minus_half = Fixed::pi().sqrt().mul_int(-2);
    let c = c_tilde.div(&gamma_minus_half);

    AsymptoticReport {
        growth: one.div(&rho),
        rho,
        q_at_rho,
        c_tilde,
        gamma_minus_half,
        c,
        real_roots: roots,
        real_root_count,
    }
}

/// `S(m, n) ρ^n n^{3/2}` for one `(m, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergencePoint {
    pub bound: FreeBound,
    pub n: usize,
    pub value: f64,
}

/// Natural logarithm of a positive big integer from its top 64 bits.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let drop = bits.saturating_sub(64);
    let top: u64 = (x >> drop).try_into().expect("at most 64 bits remain");
    (top as f64).ln() + drop as f64 * std::f64::consts::LN_2
}

/// Points for every bound in `bounds` (sorted, `∞` last) and every
/// `2 <= n <= max_n` with `S(m, n) > 0`.
pub fn convergence_series(
    table: &CountTable,
    bounds: &[FreeBound],
    max_n: usize,
    rho: &Fixed,
    strategy: Strategy,
) -> Vec<ConvergencePoint> {
    assert!(max_n <= table.max_n(), "count table too small");
    let ln_growth = -rho.to_f64().ln();
    let mut bounds = bounds.to_vec();
    bounds.sort();
    bounds.dedup();
    strategy.install(|| {
        bounds
            .iter()
            .flat_map(|&bound| {
                strategy
                    .map_range(2..max_n + 1, |n| {
                        let s = table.get(bound, n).unwrap();
                        (s.bits() > 0).then(|| ConvergencePoint {
                            bound,
                            n,
                            value: (ln_biguint(s) - n as f64 * ln_growth + 1.5 * (n as f64).ln()).exp(),
                        })
                    })
                    .into_iter()
                    .flatten()
            })
            .collect()
    })
}
