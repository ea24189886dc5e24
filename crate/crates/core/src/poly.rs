//! Integer polynomials with exact sign evaluation at dyadic points, Sturm
//! sequences, and real-root isolation by Sturm bisection.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::real::{Dyadic, Fixed};

/// Polynomial with integer coefficients, ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    /// `c * z^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        IntPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPolynomial::from_coeffs(&[1]), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    fn scale(&self, k: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// `self * c * z^shift`
    fn shifted_scale(&self, c: &BigInt, shift: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); shift];
        coeffs.extend(self.coeffs.iter().map(|x| x * c));
        IntPolynomial::new(coeffs)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division in `Z[z]`; `None` if the quotient is not integral or
    /// the remainder is nonzero.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Quotient and remainder in `Z[z]`, requiring every step to divide
    /// exactly (always true for divisors with leading coefficient ±1).
    pub fn div_rem(&self, divisor: &IntPolynomial) -> Option<(IntPolynomial, IntPolynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading()?;
        let mut rem = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree().filter(|&d| d >= dd) {
            let (q, r) = rem.coeffs[rd].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &divisor.shifted_scale(&q, rd - dd);
            quot[rd - dd] = q;
        }
        Some((IntPolynomial::new(quot), rem))
    }

    /// `lc(d)^(deg self - deg d + 1) * self mod d`
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        let dd = d.degree().expect("pseudo-remainder by zero polynomial");
        let Some(sd) = self.degree().filter(|&s| s >= dd) else {
            return self.clone();
        };
        let lead = d.leading().unwrap();
        let mut rem = self.clone();
        let mut e = sd - dd + 1;
        while let Some(rd) = rem.degree().filter(|&r| r >= dd) {
            let c = rem.coeffs[rd].clone();
            rem = &rem.scale(lead) - &d.shifted_scale(&c, rd - dd);
            e -= 1;
        }
        rem.scale(&lead.pow(e as u32))
    }

    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(Signed::is_negative) {
            -a
        } else {
            a
        }
    }

    /// Product of the distinct irreducible factors, with positive content
    /// removed.
    pub fn square_free_part(&self) -> IntPolynomial {
        let p = self.primitive_part();
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return p;
        }
        p.div_exact(&g).expect("gcd divides the primitive part").primitive_part()
    }

    /// Sign of `self(x)`, computed exactly.
    pub fn sign_at(&self, x: &Dyadic) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        // 2^(e d) p(num / 2^e) = Σ c_i num^i 2^(e (d - i)), by Horner.
        let e = x.exponent() as usize;
        let num = x.numerator();
        let mut acc = self.coeffs[d].clone();
        for i in (0..d).rev() {
            acc = acc * num + (&self.coeffs[i] << (e * (d - i)));
        }
        acc.sign_cmp()
    }

    fn sign_at_infinity(&self, positive: bool) -> Ordering {
        let Some(lead) = self.leading() else {
            return Ordering::Equal;
        };
        let s = lead.sign_cmp();
        if positive || self.degree().unwrap().is_multiple_of(2) {
            s
        } else {
            s.reverse()
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_fixed(&self, x: &Fixed) -> Fixed {
        self.coeffs.iter().rev().fold(Fixed::zero(), |acc, c| {
            acc.mul(x).add(&Fixed::from_int(c.to_i64().expect("coefficient fits i64")))
        })
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: &IntPolynomial) -> IntPolynomial {
        self + &(-o.clone())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || o.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sturm sequence of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPolynomial>,
}

impl SturmChain {
    /// Builds the chain of the square-free part of `p`, so counts are of
    /// distinct roots.
    pub fn new(p: &IntPolynomial) -> Self {
        let p0 = p.square_free_part();
        let mut chain = vec![p0.clone()];
        let p1 = p0.derivative();
        if !p1.is_zero() {
            chain.push(p1);
        }
        while chain.len() >= 2 {
            let prev = &chain[chain.len() - 2];
            let last = &chain[chain.len() - 1];
            let r = prev.pseudo_rem(last);
            if r.is_zero() {
                break;
            }
            // prem = lc^e * rem; the next element is -rem up to a positive factor.
            let e = prev.degree().unwrap() - last.degree().unwrap() + 1;
            let flip = last.leading().unwrap().is_negative() && e % 2 == 1;
            let next = if flip { r } else { -r };
            chain.push(next.primitive_part());
        }
        SturmChain { chain }
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.chain
    }

    /// The square-free polynomial the chain starts with.
    pub fn base(&self) -> &IntPolynomial {
        &self.chain[0]
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut changes = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations_at(&self, x: &Dyadic) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at(x)))
    }

    /// Distinct roots in `(a, b]`.
    pub fn count_in(&self, a: &Dyadic, b: &Dyadic) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(false)))
            - Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(true)))
    }
}

/// A real root bracketed by `lo <= root <= hi` (equal when found exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.midpoint(&self.hi)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn to_fixed(&self) -> Fixed {
        self.midpoint().to_fixed()
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }
}

/// All distinct real roots of `p` in `[lo, hi]`, ascending, each bracketed
/// to width at most `tolerance`.
///
/// Roots are isolated by bisecting with Sturm counts until every piece
/// holds at most one root, then refined by bisection on exact signs.
pub fn real_roots(p: &IntPolynomial, lo: f64, hi: f64, tolerance: f64) -> Vec<RealRoot> {
    assert!(tolerance > 0.0, "tolerance must be positive");
    let lo = Dyadic::from_f64(lo).expect("finite interval");
    let hi = Dyadic::from_f64(hi).expect("finite interval");
    let tol = Dyadic::from_f64(tolerance).unwrap();
    real_roots_dyadic(p, &lo, &hi, &tol)
}

pub fn real_roots_dyadic(p: &IntPolynomial, lo: &Dyadic, hi: &Dyadic, tol: &Dyadic) -> Vec<RealRoot> {
    if p.is_zero() || lo > hi {
        return Vec::new();
    }
    let sturm = SturmChain::new(p);
    let base = sturm.base();
    let mut out = Vec::new();
    if base.sign_at(lo) == Ordering::Equal {
        out.push(RealRoot {
            lo: lo.clone(),
            hi: lo.clone(),
        });
    }
    let mut isolated = Vec::new();
    isolate(&sturm, lo.clone(), hi.clone(), &mut isolated);
    out.extend(isolated.into_iter().map(|(a, b)| refine(base, a, b, tol)));
    out
}

fn isolate(sturm: &SturmChain, a: Dyadic, b: Dyadic, out: &mut Vec<(Dyadic, Dyadic)>) {
    let mut stack = vec![(sturm.variations_at(&a), sturm.variations_at(&b), a, b)];
    // Intervals are popped left to right.
    while let Some((va, vb, a, b)) = stack.pop() {
        match va - vb {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let mid = a.midpoint(&b);
                let vm = sturm.variations_at(&mid);
                stack.push((vm, vb, mid.clone(), b));
                stack.push((va, vm, a, mid));
            }
        }
    }
}

/// Narrows `(a, b]`, known to hold exactly one simple root of `p`.
fn refine(p: &IntPolynomial, mut a: Dyadic, mut b: Dyadic, tol: &Dyadic) -> RealRoot {
    let sign_b = p.sign_at(&b);
    if sign_b == Ordering::Equal {
        return RealRoot { lo: b.clone(), hi: b };
    }
    while b.sub(&a) > *tol {
        let mid = a.midpoint(&b);
        match p.sign_at(&mid) {
            Ordering::Equal => return RealRoot { lo: mid.clone(), hi: mid },
            s if s == sign_b => b = mid,
            _ => a = mid,
        }
    }
    RealRoot { lo: a, hi: b }
}
