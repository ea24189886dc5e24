//! Exact dyadic rationals for root brackets and a fixed-point real type with
//! `FRAC_BITS` fractional bits for the derived constants.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `num / 2^exp`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0).min(u64::from(self.exp)) as u32;
        if tz > 0 {
            self.num >>= tz;
            self.exp -= tz;
        }
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let mut mantissa = bits & ((1u64 << 52) - 1);
        let e = if biased == 0 {
            -1074
        } else {
            mantissa |= 1u64 << 52;
            biased - 1075
        };
        let mut num = BigInt::from(mantissa);
        if negative {
            num = -num;
        }
        Some(if e >= 0 {
            Dyadic::new(num << e as u32, 0)
        } else {
            Dyadic::new(num, (-e) as u32)
        })
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn scaled_to(&self, exp: u32) -> BigInt {
        &self.num << (exp - self.exp)
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        Dyadic::new(self.scaled_to(e) + other.scaled_to(e), e + 1)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        Dyadic::new(self.scaled_to(e) - other.scaled_to(e), e)
    }

    pub fn to_f64(&self) -> f64 {
        // Keep 64 significant bits before converting so huge numerators
        // do not overflow.
        let bits = self.num.bits();
        let drop = bits.saturating_sub(64);
        let top = (&self.num >> drop).to_f64().unwrap_or(0.0);
        ldexp(top, drop as i64 - i64::from(self.exp))
    }

    pub fn to_fixed(&self) -> Fixed {
        let f = FRAC_BITS;
        if self.exp <= f {
            Fixed { raw: &self.num << (f - self.exp) }
        } else {
            Fixed { raw: &self.num >> (self.exp - f) }
        }
    }
}

/// `x * 2^e` without intermediate overflow or underflow.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    const STEP: i64 = 1000;
    while e > STEP {
        x *= 2f64.powi(STEP as i32);
        e -= STEP;
    }
    while e < -STEP {
        x *= 2f64.powi(-STEP as i32);
        e += STEP;
    }
    x * 2f64.powi(e as i32)
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_to(e).cmp(&other.scaled_to(e))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

pub const FRAC_BITS: u32 = 192;

/// Fixed-point real `raw / 2^FRAC_BITS`. Operations round toward negative
/// infinity in the last place.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fixed {
    raw: BigInt,
}

impl Fixed {
    pub fn from_int(v: i64) -> Self {
        Fixed { raw: BigInt::from(v) << FRAC_BITS }
    }

    pub fn zero() -> Self {
        Fixed { raw: BigInt::zero() }
    }

    pub fn one() -> Self {
        Fixed::from_int(1)
    }

    pub fn raw(&self) -> &BigInt {
        &self.raw
    }

    pub fn add(&self, o: &Fixed) -> Fixed {
        Fixed { raw: &self.raw + &o.raw }
    }

    pub fn sub(&self, o: &Fixed) -> Fixed {
        Fixed { raw: &self.raw - &o.raw }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { raw: -&self.raw }
    }

    pub fn mul(&self, o: &Fixed) -> Fixed {
        Fixed { raw: (&self.raw * &o.raw) >> FRAC_BITS }
    }

    pub fn div(&self, o: &Fixed) -> Fixed {
        assert!(!o.raw.is_zero(), "fixed-point division by zero");
        Fixed { raw: (&self.raw << FRAC_BITS).div_floor(&o.raw) }
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed { raw: &self.raw * k }
    }

    pub fn sqrt(&self) -> Fixed {
        assert!(!self.raw.is_negative(), "square root of a negative number");
        Fixed { raw: (&self.raw << FRAC_BITS).sqrt() }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { raw: self.raw.abs() }
    }

    /// `π` by Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
    pub fn pi() -> Fixed {
        const GUARD: u32 = 32;
        let one = BigInt::one() << (FRAC_BITS + GUARD);
        let atan_inv = |x: i64| {
            let x2 = BigInt::from(x * x);
            let mut power = &one / x;
            let mut sum = BigInt::zero();
            let mut k: i64 = 0;
            while !power.is_zero() {
                let term = &power / (2 * k + 1);
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
                power /= &x2;
                k += 1;
            }
            sum
        };
        let raw = atan_inv(5) * 16 - atan_inv(239) * 4;
        Fixed { raw: raw >> GUARD }
    }

    pub fn to_f64(&self) -> f64 {
        Dyadic::new(self.raw.clone(), FRAC_BITS).to_f64()
    }

    /// Decimal expansion truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.raw.sign() == Sign::Minus;
        let mag = self.raw.abs();
        let int = &mag >> FRAC_BITS;
        let frac = &mag - (&int << FRAC_BITS);
        let scaled = (frac * BigInt::from(10u8).pow(digits as u32)) >> FRAC_BITS;
        let sign = if negative { "-" } else { "" };
        format!("{sign}{int}.{scaled:0>digits$}")
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}
