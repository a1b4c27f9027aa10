//! Arbitrary-precision dyadic interval arithmetic with outward rounding.
//!
//! Every real quantity in the crate is carried as an [`IntervalScalar`]:
//! a closed interval with dyadic endpoints and a working precision in
//! mantissa bits. Each primitive returns the tightest interval whose
//! endpoints are representable at that precision and which contains the
//! exact result for every choice of reals in the operands. Precision is
//! part of the value, never global state; binary operations work at the
//! larger of the two operand precisions.

mod dyadic;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use dyadic::{Dyadic, Round};

use crate::error::{Error, Result};

/// Three-valued outcome of comparing two enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    CertainlyLess,
    CertainlyGreater,
    Overlap,
}

impl Verdict {
    pub fn is_certain(self) -> bool {
        self != Verdict::Overlap
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::CertainlyLess => "CertainlyLess",
            Verdict::CertainlyGreater => "CertainlyGreater",
            Verdict::Overlap => "Overlap",
        };
        f.write_str(s)
    }
}

/// The four field operations, for callers that dispatch on an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntervalScalar {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl IntervalScalar {
    /// Interval `[lo, hi]` with endpoints rounded outward to `prec` bits.
    ///
    /// Panics if `lo > hi`.
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        assert!(prec >= 2, "precision must be at least 2 bits");
        IntervalScalar {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(value: Dyadic, prec: u32) -> Self {
        IntervalScalar::new(value.clone(), value, prec)
    }

    pub fn zero(prec: u32) -> Self {
        IntervalScalar::point(Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        IntervalScalar::point(Dyadic::one(), prec)
    }

    pub fn from_int<I: Into<BigInt>>(value: I, prec: u32) -> Self {
        IntervalScalar::point(Dyadic::from_int(value), prec)
    }

    /// Enclosure of the rational `num / den`.
    pub fn from_ratio<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D, prec: u32) -> Self {
        let (num, den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        IntervalScalar {
            lo: Dyadic::from_ratio(&num, &den, prec, Round::Down),
            hi: Dyadic::from_ratio(&num, &den, prec, Round::Up),
            prec,
        }
    }

    /// Enclosure of a decimal literal such as `"1.99"`, `"-0.001"` or `"2.5e-3"`.
    pub fn from_decimal(text: &str, prec: u32) -> Result<Self> {
        let (num, den) = parse_decimal(text).ok_or_else(|| Error::BadDecimal(text.to_string()))?;
        Ok(IntervalScalar::from_ratio(num, den, prec))
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Same set, reinterpreted at precision `prec` (rounded outward when
    /// narrowing the precision).
    pub fn with_precision(&self, prec: u32) -> Self {
        IntervalScalar::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.add_exact(&self.lo.neg())
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64()
    }

    pub fn mid_f64(&self) -> f64 {
        self.lo.add_exact(&self.hi).mul_pow2(-1).to_f64()
    }

    /// Exact midpoint as a dyadic.
    pub fn midpoint(&self) -> Dyadic {
        self.lo.add_exact(&self.hi).mul_pow2(-1)
    }

    /// Largest endpoint magnitude.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_value(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether `other` is a subset of `self`.
    pub fn contains(&self, other: &IntervalScalar) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &IntervalScalar) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo.signum() <= 0 && self.hi.signum() >= 0
    }

    pub fn is_certainly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn is_certainly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn hull(&self, other: &IntervalScalar) -> Self {
        IntervalScalar {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn intersect(&self, other: &IntervalScalar) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| IntervalScalar {
            lo,
            hi,
            prec: self.prec.max(other.prec),
        })
    }

    /// Interval maximum `{max(x, y)}`.
    pub fn max(&self, other: &IntervalScalar) -> Self {
        IntervalScalar {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Interval minimum `{min(x, y)}`.
    pub fn min(&self, other: &IntervalScalar) -> Self {
        IntervalScalar {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Drop the negative part when the enclosed quantity is known to be
    /// nonnegative (for example `1 - x^2` on the unit circle).
    pub fn clamp_nonneg(&self) -> Self {
        let zero = Dyadic::zero();
        IntervalScalar {
            lo: self.lo.clone().max(zero.clone()),
            hi: self.hi.clone().max(zero),
            prec: self.prec,
        }
    }

    pub fn neg(&self) -> Self {
        IntervalScalar {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            IntervalScalar {
                lo: Dyadic::zero(),
                hi: self.lo.abs().max(self.hi.clone()),
                prec: self.prec,
            }
        }
    }

    pub fn add(&self, other: &IntervalScalar) -> Self {
        let prec = self.prec.max(other.prec);
        IntervalScalar {
            lo: self.lo.add_round(&other.lo, prec, Round::Down),
            hi: self.hi.add_round(&other.hi, prec, Round::Up),
            prec,
        }
    }

    pub fn sub(&self, other: &IntervalScalar) -> Self {
        let prec = self.prec.max(other.prec);
        IntervalScalar {
            lo: self.lo.add_round(&other.hi.neg(), prec, Round::Down),
            hi: self.hi.add_round(&other.lo.neg(), prec, Round::Up),
            prec,
        }
    }

    pub fn mul(&self, other: &IntervalScalar) -> Self {
        let prec = self.prec.max(other.prec);
        let products = [
            self.lo.mul_exact(&other.lo),
            self.lo.mul_exact(&other.hi),
            self.hi.mul_exact(&other.lo),
            self.hi.mul_exact(&other.hi),
        ];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        IntervalScalar {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    /// `x^2`, tighter than `x * x` when the interval straddles zero.
    pub fn sqr(&self) -> Self {
        let a = self.abs();
        IntervalScalar {
            lo: a.lo.mul_exact(&a.lo).round(a.prec, Round::Down),
            hi: a.hi.mul_exact(&a.hi).round(a.prec, Round::Up),
            prec: a.prec,
        }
    }

    pub fn div(&self, other: &IntervalScalar) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::DivByZeroInterval);
        }
        let prec = self.prec.max(other.prec);
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                let down = a.div_round(b, prec, Round::Down);
                let up = a.div_round(b, prec, Round::Up);
                lo = Some(match lo {
                    Some(cur) => cur.min(down),
                    None => down,
                });
                hi = Some(match hi {
                    Some(cur) => cur.max(up),
                    None => up,
                });
            }
        }
        Ok(IntervalScalar {
            lo: lo.expect("nonempty"),
            hi: hi.expect("nonempty"),
            prec,
        })
    }

    pub fn sqrt(&self) -> Result<Self> {
        if self.lo.signum() < 0 {
            return Err(Error::NegativeSqrt);
        }
        Ok(IntervalScalar {
            lo: self.lo.sqrt_round(self.prec, Round::Down),
            hi: self.hi.sqrt_round(self.prec, Round::Up),
            prec: self.prec,
        })
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        IntervalScalar {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    /// Scaling by an integer, rounded outward.
    pub fn scale<I: Into<BigInt>>(&self, factor: I) -> Self {
        let f = Dyadic::from_int(factor.into());
        let (a, b) = (self.lo.mul_exact(&f), self.hi.mul_exact(&f));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        IntervalScalar {
            lo: lo.round(self.prec, Round::Down),
            hi: hi.round(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    /// Decimal endpoints with enough digits to show the working precision,
    /// lower endpoint rounded down and upper rounded up.
    pub fn to_decimal_pair(&self) -> (String, String) {
        let digits = decimal_digits_for(self.prec);
        (
            self.lo.to_decimal(digits, Round::Down),
            self.hi.to_decimal(digits, Round::Up),
        )
    }

    /// Both endpoints written exactly, so parsing back at the same
    /// precision restores the interval.
    pub fn to_exact_decimal_pair(&self) -> (String, String) {
        (self.lo.to_exact_decimal(), self.hi.to_exact_decimal())
    }

    pub fn lo_decimal(&self) -> String {
        self.lo
            .to_decimal(decimal_digits_for(self.prec), Round::Down)
    }

    pub fn hi_decimal(&self) -> String {
        self.hi.to_decimal(decimal_digits_for(self.prec), Round::Up)
    }
}

/// Significant decimal digits needed to display `prec` binary digits.
pub fn decimal_digits_for(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

/// `CertainlyLess` iff `a.hi < b.lo`, `CertainlyGreater` iff `a.lo > b.hi`.
pub fn compare_certain(a: &IntervalScalar, b: &IntervalScalar) -> Verdict {
    if a.hi < b.lo {
        Verdict::CertainlyLess
    } else if a.lo > b.hi {
        Verdict::CertainlyGreater
    } else {
        Verdict::Overlap
    }
}

/// Dispatching form of the four field operations.
pub fn interval_arith(
    op: ArithOp,
    a: &IntervalScalar,
    b: &IntervalScalar,
) -> Result<IntervalScalar> {
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    })
}

impl fmt::Display for IntervalScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal_pair();
        write!(f, "[{lo}, {hi}] @{}bits", self.prec)
    }
}

impl PartialOrd for IntervalScalar {
    /// Certain ordering only; overlapping intervals are incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other && self.is_point() {
            return Some(Ordering::Equal);
        }
        match compare_certain(self, other) {
            Verdict::CertainlyLess => Some(Ordering::Less),
            Verdict::CertainlyGreater => Some(Ordering::Greater),
            Verdict::Overlap => None,
        }
    }
}

fn parse_decimal(text: &str) -> Option<(BigInt, BigInt)> {
    let text = text.trim();
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(i) => (&text[..i], text[i + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        Some((num * ten.pow(scale as u32), BigInt::one()))
    } else {
        Some((num, ten.pow((-scale) as u32)))
    }
}
