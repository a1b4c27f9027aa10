//! Reference values computed independently of the library: integer
//! fixed-point series for `π`, sine, cosine and tangent, and integer square
//! roots. Every value is an integer `v` standing for `v / 2^BITS`, accurate
//! to within `2^SLACK` units.

#![allow(dead_code)]

use archimedes_pi::interval::{compare_certain, IntervalScalar, Verdict};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub const BITS: u64 = 640;
pub const SLACK: u64 = 32;

pub fn one() -> BigInt {
    BigInt::one() << BITS
}

pub fn int(v: i64) -> BigInt {
    BigInt::from(v) << BITS
}

pub fn ratio(num: i64, den: i64) -> BigInt {
    (BigInt::from(num) << BITS) / den
}

pub fn mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> BITS
}

pub fn div(a: &BigInt, b: &BigInt) -> BigInt {
    (a << BITS) / b
}

pub fn sqrt(a: &BigInt) -> BigInt {
    assert!(!a.is_negative());
    (a << BITS).sqrt()
}

/// Parse a plain decimal such as `-0.125`.
pub fn decimal(s: &str) -> BigInt {
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{whole}{frac}").parse().unwrap();
    let v = (digits << BITS) / BigInt::from(10).pow(frac.len() as u32);
    if neg {
        -v
    } else {
        v
    }
}

/// `Σ (−1)^k / ((2k+1)·x^(2k+1))`, i.e. `atan(1/x)`.
fn atan_inv(x: i64) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = one() / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

/// Machin: `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi() -> BigInt {
    atan_inv(5) * 16 - atan_inv(239) * 4
}

/// `(sin x, cos x)` by the Taylor series, for `|x| ≤ 8`.
pub fn sin_cos(x: &BigInt) -> (BigInt, BigInt) {
    assert!(x.abs() <= int(8));
    let x2 = mul(x, x);
    let series = |first: BigInt, offset: u64| {
        let mut term = first;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !term.is_zero() {
            sum += &term;
            let a = 2 * k + 1 + offset;
            term = -mul(&term, &x2) / (a * (a + 1));
            k += 1;
        }
        sum
    };
    (series(x.clone(), 1), series(one(), 0))
}

pub fn sin(x: &BigInt) -> BigInt {
    sin_cos(x).0
}

pub fn cos(x: &BigInt) -> BigInt {
    sin_cos(x).1
}

pub fn tan(x: &BigInt) -> BigInt {
    let (s, c) = sin_cos(x);
    div(&s, &c)
}

/// `π·num/den`.
pub fn pi_times(num: i64, den: i64) -> BigInt {
    pi() * num / den
}

/// Interval of half-width `2^SLACK` units around a fixed-point value.
pub fn enclose(v: &BigInt, prec: u32) -> IntervalScalar {
    let den = BigInt::one() << BITS;
    let e = BigInt::one() << SLACK;
    let lo = IntervalScalar::from_ratio(v - &e, den.clone(), prec);
    let hi = IntervalScalar::from_ratio(v + &e, den, prec);
    lo.hull(&hi)
}

/// The library interval and the oracle value agree: they overlap, and the
/// library interval is narrower than `2^-bits`.
pub fn agrees(x: &IntervalScalar, v: &BigInt, bits: i64) -> bool {
    let reference = enclose(v, x.precision().max(BITS as u32));
    let narrow = x.width_f64() < 2f64.powi(-bits as i32);
    x.overlaps(&reference) && narrow
}

/// Every point of `x` lies within `2^-bits` of the oracle value.
pub fn close(x: &IntervalScalar, v: &BigInt, bits: i64) -> bool {
    x.sub(&enclose(v, x.precision())).mag().to_f64() < 2f64.powi(-bits as i32)
}

/// `lo < x < hi` certified, bounds given as decimals.
pub fn strictly_between(x: &IntervalScalar, lo: &str, hi: &str) -> bool {
    let p = x.precision().max(64);
    let lo = IntervalScalar::from_decimal(lo, p).unwrap();
    let hi = IntervalScalar::from_decimal(hi, p).unwrap();
    compare_certain(&lo, x) == Verdict::CertainlyLess
        && compare_certain(x, &hi) == Verdict::CertainlyLess
}

pub fn less(a: &IntervalScalar, b: &IntervalScalar) -> bool {
    compare_certain(a, b) == Verdict::CertainlyLess
}

/// The first `d` decimal digits of `π`, leading `3` included, as `3.14…`.
pub fn pi_digits(d: usize) -> String {
    let scaled = (pi() * BigInt::from(10).pow(d as u32 - 1)) >> BITS;
    let s = scaled.to_string();
    if d == 1 {
        s
    } else {
        format!("{}.{}", &s[..1], &s[1..])
    }
}
