//! Series evaluations of `π`, sine, cosine and arctangent with rigorous
//! remainder bounds.
//!
//! Nothing in the polygon, circuit or chord pipelines calls into this
//! module: it supplies the second, independent route for cross-checks and
//! the coordinate side of the angle profile.

use crate::circuits::PlanePoint;
use crate::interval::{Dyadic, IntervalScalar};

const GUARD_BITS: u32 = 24;

fn small_enough(term: &IntervalScalar, wp: u32) -> bool {
    term.mag() < Dyadic::pow2(-i64::from(wp) - 4)
}

/// `s ± |bound|`.
fn widen(s: &IntervalScalar, bound: &IntervalScalar) -> IntervalScalar {
    let b = bound.mag();
    s.add(&IntervalScalar::new(b.neg(), b, s.precision()))
}

/// `atan(y)` for `|y| ≤ 1/4` by the alternating Taylor series.
fn atan_small(y: &IntervalScalar, wp: u32) -> IntervalScalar {
    let y = y.with_precision(wp);
    let y_sq = y.sqr();
    let mut power = y.clone();
    let mut sum = IntervalScalar::zero(wp);
    let mut k: u64 = 0;
    loop {
        let term = power
            .div(&IntervalScalar::from_int(2 * k + 1, wp))
            .expect("odd divisor");
        if small_enough(&term, wp) {
            return widen(&sum, &term);
        }
        sum = if k.is_multiple_of(2) {
            sum.add(&term)
        } else {
            sum.sub(&term)
        };
        power = power.mul(&y_sq);
        k += 1;
    }
}

/// Enclosure of `π` by Machin's formula `π = 16·atan(1/5) − 4·atan(1/239)`.
pub fn pi(prec: u32) -> IntervalScalar {
    let wp = prec + GUARD_BITS;
    let a = atan_small(&IntervalScalar::from_ratio(1, 5, wp), wp);
    let b = atan_small(&IntervalScalar::from_ratio(1, 239, wp), wp);
    a.mul_pow2(4).sub(&b.mul_pow2(2)).with_precision(prec)
}

fn atan_point(d: &Dyadic, wp: u32) -> IntervalScalar {
    let x = IntervalScalar::point(d.clone(), wp);
    if d.abs() > Dyadic::one() {
        let half_pi = pi(wp).mul_pow2(-1);
        let inv = IntervalScalar::one(wp).div(&x).expect("|d| > 1");
        let tail = atan_point_reduced(&inv, wp);
        return if d.signum() > 0 {
            half_pi.sub(&tail)
        } else {
            half_pi.neg().sub(&tail)
        };
    }
    atan_point_reduced(&x, wp)
}

/// `atan(x)` for `|x| ≤ 1` via three half-angle reductions
/// `atan(x) = 2·atan(x / (1 + √(1 + x²)))`.
fn atan_point_reduced(x: &IntervalScalar, wp: u32) -> IntervalScalar {
    let one = IntervalScalar::one(wp);
    let mut y = x.clone();
    for _ in 0..3 {
        let denom = one.add(&one.add(&y.sqr()).sqrt().expect("positive"));
        y = y.div(&denom).expect("denominator ≥ 2");
    }
    atan_small(&y, wp).mul_pow2(3)
}

/// Enclosure of `atan(x)`.
pub fn atan(x: &IntervalScalar) -> IntervalScalar {
    let prec = x.precision();
    let wp = prec + GUARD_BITS;
    let lo = atan_point(x.lo(), wp);
    let hi = atan_point(x.hi(), wp);
    IntervalScalar::new(lo.lo().clone(), hi.hi().clone(), prec)
}

/// `(sin r, cos r)` for `|r| ≤ 1/2` by alternating Taylor series.
fn sin_cos_small(r: &IntervalScalar, wp: u32) -> (IntervalScalar, IntervalScalar) {
    let r_sq = r.sqr();
    let series = |first: IntervalScalar, offset: u64| {
        let mut term = first;
        let mut sum = IntervalScalar::zero(wp);
        let mut k: u64 = 0;
        loop {
            if small_enough(&term, wp) {
                return widen(&sum, &term);
            }
            sum = if k.is_multiple_of(2) {
                sum.add(&term)
            } else {
                sum.sub(&term)
            };
            let a = 2 * k + 1 + offset;
            let step = IntervalScalar::from_int(a * (a + 1), wp);
            term = term.mul(&r_sq).div(&step).expect("positive divisor");
            k += 1;
        }
    };
    (series(r.clone(), 1), series(IntervalScalar::one(wp), 0))
}

/// Enclosures of `(sin x, cos x)`.
pub fn sin_cos(x: &IntervalScalar) -> (IntervalScalar, IntervalScalar) {
    let prec = x.precision();
    let mut halvings: i64 = 0;
    while x.mag() > Dyadic::pow2(-1 + halvings) {
        halvings += 1;
    }
    let wp = prec + GUARD_BITS + 2 * halvings as u32;
    let r = x.with_precision(wp).mul_pow2(-halvings);
    let (mut s, mut c) = sin_cos_small(&r, wp);
    let one = IntervalScalar::one(wp);
    for _ in 0..halvings {
        let s2 = s.mul(&c).mul_pow2(1);
        c = one.sub(&s.sqr().mul_pow2(1));
        s = s2;
    }
    let clamp = |v: IntervalScalar| {
        let unit = IntervalScalar::new(Dyadic::from_int(-1), Dyadic::one(), wp);
        v.intersect(&unit).unwrap_or(v)
    };
    (clamp(s).with_precision(prec), clamp(c).with_precision(prec))
}

pub fn sin(x: &IntervalScalar) -> IntervalScalar {
    sin_cos(x).0
}

pub fn cos(x: &IntervalScalar) -> IntervalScalar {
    sin_cos(x).1
}

pub fn tan(x: &IntervalScalar) -> IntervalScalar {
    let (s, c) = sin_cos(x);
    s.div(&c).expect("cosine bounded away from zero")
}

/// Unsigned angle in `[0, π]` between the vectors `u` and `v`.
pub fn angle_between(u: &PlanePoint, v: &PlanePoint) -> IntervalScalar {
    let prec = u.x.precision().max(v.x.precision());
    let cross = u.cross(v).abs();
    let dot = u.dot(v);
    let pi = pi(prec);
    if dot.is_certainly_positive() {
        atan(&cross.div(&dot).expect("dot > 0"))
    } else if dot.is_certainly_negative() {
        pi.sub(&atan(&cross.div(&dot.neg()).expect("dot < 0")))
    } else if cross.is_certainly_positive() {
        pi.mul_pow2(-1)
            .sub(&atan(&dot.div(&cross).expect("cross > 0")))
    } else {
        IntervalScalar::zero(prec).hull(&pi)
    }
}
