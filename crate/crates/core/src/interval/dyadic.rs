//! Exact dyadic rationals `mantissa * 2^exponent` with directed rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for a single endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// A dyadic rational in canonical form: the mantissa is odd, or the value
/// is zero with exponent 0. Canonical form makes structural equality agree
/// with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn new(mant: BigInt, exp: i64) -> Self {
        Dyadic { mant, exp }.normalized()
    }

    pub fn from_int<I: Into<BigInt>>(value: I) -> Self {
        Dyadic::new(value.into(), 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mant: BigInt::one(),
            exp: k,
        }
    }

    fn normalized(mut self) -> Self {
        match self.mant.trailing_zeros() {
            None => {
                self.exp = 0;
            }
            Some(0) => {}
            Some(tz) => {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i8 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Smallest `t` with `|self| < 2^t`. Meaningless for zero.
    fn top(&self) -> i64 {
        self.exp + self.mant.bits() as i64
    }

    /// Number of significant bits in the mantissa.
    pub fn significant_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Round to at most `prec` significant bits in direction `dir`.
    pub fn round(self, prec: u32, dir: Round) -> Self {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self;
        }
        let shift = bits - prec as u64;
        // BigInt >> floors toward negative infinity.
        let mant = match dir {
            Round::Down => &self.mant >> shift,
            Round::Up => -((-&self.mant) >> shift),
        };
        Dyadic::new(mant, self.exp + shift as i64)
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        if self.exp >= 0 {
            &self.mant << self.exp as u64
        } else {
            &self.mant >> (-self.exp) as u64
        }
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        -self.neg().floor()
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add_exact(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    /// `round(self + other)`. When one operand sits far below the rounding
    /// position of the other it is replaced by a bound of the right sign,
    /// which keeps the result outward without materialising huge shifts.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        if self.is_zero() {
            return other.clone().round(prec, dir);
        }
        if other.is_zero() {
            return self.clone().round(prec, dir);
        }
        let (big, small) = if self.top() >= other.top() {
            (self, other)
        } else {
            (other, self)
        };
        let cutoff = big.top() - prec as i64 - 8;
        if small.top() < cutoff {
            let nudge = match (dir, small.signum()) {
                (Round::Down, 1) | (Round::Up, -1) => Dyadic::zero(),
                (Round::Down, _) => Dyadic::pow2(cutoff).neg(),
                (Round::Up, _) => Dyadic::pow2(cutoff),
            };
            return big.add_exact(&nudge).round(prec, dir);
        }
        self.add_exact(other).round(prec, dir)
    }

    pub fn mul_exact(&self, other: &Dyadic) -> Self {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Directed quotient. `other` must be nonzero.
    pub fn div_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Self {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // Enough extra bits that the integer quotient carries > prec bits.
        let s = (prec as i64 + 2 + other.mant.bits() as i64 - self.mant.bits() as i64).max(0);
        let num = &self.mant << s as u64;
        let (q, r) = num.div_mod_floor(&other.mant);
        let q = match dir {
            Round::Up if !r.is_zero() => q + 1,
            _ => q,
        };
        Dyadic::new(q, self.exp - other.exp - s).round(prec, dir)
    }

    /// Directed square root of a nonnegative value.
    pub fn sqrt_round(&self, prec: u32, dir: Round) -> Self {
        assert!(self.signum() >= 0, "dyadic sqrt of a negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let bits = self.mant.bits() as i64;
        let mut t = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exp - t).rem_euclid(2) != 0 {
            t += 1;
        }
        let n = (&self.mant << t as u64)
            .to_biguint()
            .expect("nonnegative mantissa");
        let mut s = n.sqrt();
        if dir == Round::Up && &s * &s != n {
            s += 1u32;
        }
        Dyadic::new(BigInt::from(s), (self.exp - t) / 2).round(prec, dir)
    }

    /// Directed rounding of `num / den`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32, dir: Round) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Dyadic::from_int(num.clone()).div_round(&Dyadic::from_int(den.clone()), prec, dir)
    }

    /// Nearest `f64` (not directed; for diagnostics only).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.clone().round(60, Round::Down);
        let m = r.mant.to_f64().unwrap_or(f64::NAN);
        m * (r.exp as f64).exp2()
    }

    /// Decimal rendering with `sig` significant digits, rounded in `dir`,
    /// so the printed value bounds the exact one on the requested side.
    pub fn to_decimal(&self, sig: usize, dir: Round) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1) as i64;
        let dec_exp = ((self.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let frac_digits = (sig - 1 - dec_exp).max(0);
        let scaled = &self.mant * BigInt::from(10u32).pow(frac_digits as u32);
        let n = if self.exp >= 0 {
            scaled << self.exp as u64
        } else {
            let den = BigInt::one() << (-self.exp) as u64;
            let (q, r) = scaled.div_mod_floor(&den);
            match dir {
                Round::Up if !r.is_zero() => q + 1,
                _ => q,
            }
        };
        format_scaled(&n, frac_digits as usize)
    }
}

impl Dyadic {
    /// The exact decimal expansion; dyadic rationals always terminate.
    pub fn to_exact_decimal(&self) -> String {
        if self.exp >= 0 {
            return format_scaled(&(&self.mant << self.exp as u64), 0);
        }
        let k = (-self.exp) as u32;
        format_scaled(&(&self.mant * BigInt::from(5u32).pow(k)), k as usize)
    }
}

/// Render `n / 10^frac` without loss, choosing scientific notation for
/// very small or very large magnitudes.
fn format_scaled(n: &BigInt, frac: usize) -> String {
    if n.is_zero() {
        return "0".to_string();
    }
    let neg = n.sign() == Sign::Minus;
    let digits = n.abs().to_str_radix(10);
    let sign = if neg { "-" } else { "" };
    let int_len = digits.len() as i64 - frac as i64;
    // decimal exponent of the leading digit
    let lead_exp = int_len - 1;
    if !(-6..=20).contains(&lead_exp) {
        let mut mant = digits.clone();
        let tail = mant.split_off(1);
        let tail = tail.trim_end_matches('0');
        return if tail.is_empty() {
            format!("{sign}{mant}e{lead_exp}")
        } else {
            format!("{sign}{mant}.{tail}e{lead_exp}")
        };
    }
    let (int_part, frac_part) = if int_len > 0 {
        let (i, f) = digits.split_at(int_len as usize);
        (i.to_string(), f.to_string())
    } else {
        ("0".to_string(), "0".repeat((-int_len) as usize) + &digits)
    };
    let frac_part = frac_part.trim_end_matches('0');
    if frac_part.is_empty() {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let (ta, tb) = (self.top(), other.top());
        if ta != tb {
            let by_magnitude = ta.cmp(&tb);
            return if sa > 0 {
                by_magnitude
            } else {
                by_magnitude.reverse()
            };
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mant, self.exp)
    }
}
