//! Exact rationals, base-p digit streams and truncations.
//!
//! Every expansion here is the *non-terminating* one: a number in `(0, 1]` is
//! written `Σ_{s≥1} d_s p^{-s}` with infinitely many nonzero digits, so `1`
//! is `0.(p-1)(p-1)…` and `1/p` is `0.0(p-1)(p-1)…`. A positive rational is
//! split as `N + β` with `N ∈ ℕ` and `β ∈ (0, 1]`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `num/den`, always with an explicit denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| Error::Syntax(format!("bad rational `{s}`")))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| Error::Syntax(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn pow_big(p: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(p), e)
}

pub fn pow_biguint(p: u64, e: u32) -> BigUint {
    Pow::pow(BigUint::from(p), e)
}

/// Smallest integer `≥ r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Splits `α > 0` as `N + β` with `β ∈ (0, 1]`.
pub fn split_unit(alpha: &Rational) -> Result<(BigInt, Rational)> {
    if !alpha.is_positive() {
        return Err(Error::domain(format!(
            "expected a positive rational, got {}",
            format_rational(alpha)
        )));
    }
    let n: BigInt = ceil(alpha) - 1;
    let beta = alpha - Rational::from_integer(n.clone());
    Ok((n, beta))
}

/// The `e`-th truncation: the unique `λ ∈ ℚ_{p^e}` with `λ < α ≤ λ + p^{-e}`.
pub fn truncate(alpha: &Rational, p: u64, e: u32) -> Result<Rational> {
    if !alpha.is_positive() {
        return Err(Error::domain(format!(
            "truncation needs α > 0, got {}",
            format_rational(alpha)
        )));
    }
    let q = pow_big(p, e);
    let scaled = alpha * Rational::from_integer(q.clone());
    Ok(Rational::new(ceil(&scaled) - 1, q))
}

/// Numerator of `truncate(α, p, e)` over the denominator `p^e`.
pub fn truncate_numerator(alpha: &Rational, p: u64, e: u32) -> Result<BigInt> {
    if !alpha.is_positive() {
        return Err(Error::domain("truncation needs α > 0"));
    }
    let scaled = alpha * Rational::from_integer(pow_big(p, e));
    Ok(ceil(&scaled) - 1)
}

pub fn truncate_vector(t: &[Rational], p: u64, e: u32) -> Result<Vec<Rational>> {
    t.iter().map(|a| truncate(a, p, e)).collect()
}

/// The `s`-th digit (`s ≥ 1`) of the fractional part `β ∈ (0,1]` of `α`.
pub fn digit_at(alpha: &Rational, p: u64, s: u32) -> Result<u64> {
    if s == 0 {
        return Err(Error::domain("digit positions start at 1"));
    }
    let n = truncate_numerator(alpha, p, s)?;
    let d = n.mod_floor(&BigInt::from(p));
    Ok(d.to_u64().expect("digit below p"))
}

/// Lazy digit stream of the fractional part of a positive rational, by
/// repeated multiplication by `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitStream {
    p: u64,
    num: BigInt,
    den: BigInt,
}

impl DigitStream {
    pub fn new(alpha: &Rational, p: u64) -> Result<Self> {
        let (_, beta) = split_unit(alpha)?;
        Ok(DigitStream {
            p,
            num: beta.numer().clone(),
            den: beta.denom().clone(),
        })
    }

    /// Remainder state; equal states produce equal futures.
    pub fn state(&self) -> &BigInt {
        &self.num
    }
}

impl Iterator for DigitStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        // β ∈ (0,1]: digit = ⌈pβ⌉ − 1, β ← pβ − digit ∈ (0,1]
        let scaled = &self.num * BigInt::from(self.p);
        let (q, r) = scaled.div_rem(&self.den);
        let digit = if r.is_zero() { q - 1u32 } else { q };
        self.num = scaled - &digit * &self.den;
        Some(digit.to_u64().expect("digit below p"))
    }
}

/// A finite run of base-p digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitVector {
    p: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn new(p: u64, digits: Vec<u64>) -> Result<Self> {
        if let Some(d) = digits.iter().find(|&&d| d >= p) {
            return Err(Error::domain(format!("digit {d} out of range for p = {p}")));
        }
        Ok(DigitVector { p, digits })
    }

    /// First `e` digits of the fractional part of `α`.
    pub fn of(alpha: &Rational, p: u64, e: usize) -> Result<Self> {
        Ok(DigitVector {
            p,
            digits: DigitStream::new(alpha, p)?.take(e).collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `Σ d_s p^{-s}`.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::zero();
        for &d in &self.digits {
            num = num * BigInt::from(self.p) + BigInt::from(d);
        }
        Rational::new(num, pow_big(self.p, self.digits.len() as u32))
    }
}

/// Least `μ ≥ 1` with `p^μ ≡ 1 (mod b)`.
pub fn mult_order(p: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if b == 1 {
        return Ok(1);
    }
    if p.gcd(&b) != 1 {
        return Err(Error::domain(format!("{p} is not invertible modulo {b}")));
    }
    let b128 = b as u128;
    let base = (p as u128) % b128;
    let mut acc = base;
    let mut mu = 1;
    while acc != 1 {
        acc = acc * base % b128;
        mu += 1;
    }
    Ok(mu)
}

/// Largest power of `p` dividing `n` (as exponent) and the cofactor.
pub fn split_p_power(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut k = n.clone();
    let mut m = 0;
    if k.is_zero() {
        return (0, k);
    }
    loop {
        let (q, r) = k.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        k = q;
        m += 1;
    }
    (m, k)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
