//! Arclength, sector area and sine/cosine defined from the polygon scheme.
//!
//! `2π` is the common limit of the triangle-based perimeters. An arc's
//! length is its fraction of the circle times that limit, and the point at
//! arclength `θ` from `(1, 0)` is found by bisecting the circle fraction on
//! the vertex grids of `g(m, 3)`, so no series ever enters.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::circuits::{CirclePoint, Rotation};
use crate::error::{Error, Result};
use crate::interval::{compare_certain, Dyadic, IntervalScalar, Verdict};
use crate::polygons::{pi_bounds, RegularScheme};

const GUARD_BITS: u32 = 32;

/// Enclosure of `2π` as the limit of `p_3(m)`, bracketed by
/// `[p_3(m), P_3(m)]` at a depth where the bracket is below the rounding
/// width.
pub fn two_pi(prec: u32) -> IntervalScalar {
    let wp = prec + GUARD_BITS;
    let scheme = RegularScheme::new(3, wp / 2 + 4).expect("n = 3");
    pi_bounds(scheme, wp)
        .expect("triangle seed")
        .mul_pow2(1)
        .with_precision(prec)
}

/// Fraction of the circle cut off by an arc, its length and its sector area.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcMeasure {
    pub fraction: IntervalScalar,
    pub theta: IntervalScalar,
    pub sector_area: IntervalScalar,
}

/// Arc measure of the fraction `num/den` of the circle.
pub fn arc_measure(num: u64, den: u64, prec: u32) -> Result<ArcMeasure> {
    if den == 0 || num >= den {
        return Err(Error::FractionOutOfRange);
    }
    let wp = prec + GUARD_BITS;
    let theta = two_pi(wp)
        .scale(num)
        .div(&IntervalScalar::from_int(den, wp))?
        .with_precision(prec);
    Ok(ArcMeasure {
        fraction: IntervalScalar::from_ratio(num, den, prec),
        sector_area: theta.mul_pow2(-1),
        theta,
    })
}

/// Which grid vertex approximates a fraction at a given depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexChoice {
    /// Last vertex of `g(m, 3)` not past the arc end.
    Floor,
    /// First vertex of `g(m, 3)` not before the arc end.
    Ceiling,
}

fn grid_index(fraction: &IntervalScalar, m: u32, choice: VertexChoice) -> BigInt {
    let grid = Dyadic::from_int(BigInt::from(3) << m);
    match choice {
        VertexChoice::Floor => fraction.lo().mul_exact(&grid).floor(),
        VertexChoice::Ceiling => fraction.hi().mul_exact(&grid).ceil(),
    }
}

/// Length `2π·j/(3·2^m)` of the arc to the grid vertex `j` chosen for
/// `fraction` at depth `m`.
pub fn approximate_arclength(
    fraction: &IntervalScalar,
    m: u32,
    choice: VertexChoice,
    prec: u32,
) -> Result<IntervalScalar> {
    check_fraction(fraction)?;
    let j = grid_index(fraction, m, choice);
    Ok(grid_arc(&two_pi(prec + GUARD_BITS), &j, m).with_precision(prec))
}

fn grid_arc(two_pi: &IntervalScalar, j: &BigInt, m: u32) -> IntervalScalar {
    let three = IntervalScalar::from_int(3, two_pi.precision());
    two_pi
        .scale(j.clone())
        .div(&three)
        .expect("nonzero")
        .mul_pow2(-i64::from(m))
}

fn check_fraction(fraction: &IntervalScalar) -> Result<()> {
    if fraction.lo().signum() < 0 || *fraction.hi() >= Dyadic::one() {
        return Err(Error::FractionOutOfRange);
    }
    Ok(())
}

/// Arc measure of a fraction known only as an enclosure, bracketed by the
/// floor and ceiling vertices of `g(m, 3)` with `m` fine enough for `prec`.
pub fn arc_measure_interval(fraction: &IntervalScalar, prec: u32) -> Result<ArcMeasure> {
    check_fraction(fraction)?;
    let wp = prec + GUARD_BITS;
    let m = wp + 2;
    let tp = two_pi(wp);
    let lo = grid_arc(&tp, &grid_index(fraction, m, VertexChoice::Floor), m);
    let hi = grid_arc(&tp, &grid_index(fraction, m, VertexChoice::Ceiling), m);
    let theta = IntervalScalar::new(lo.lo().clone(), hi.hi().clone(), prec);
    Ok(ArcMeasure {
        fraction: fraction.with_precision(prec),
        sector_area: theta.mul_pow2(-1),
        theta,
    })
}

/// Rotations by `1/(3·2^i)` of a turn, built by repeated half-angle steps
/// from the rotation by a third of a turn.
struct GridRotations {
    table: Vec<Rotation>,
    prec: u32,
}

impl GridRotations {
    fn new(prec: u32) -> Self {
        let half = IntervalScalar::from_ratio(1, 2, prec);
        let s = IntervalScalar::from_int(3, prec)
            .sqrt()
            .expect("positive")
            .mul_pow2(-1);
        let third = CirclePoint::new(half.neg(), s).expect("on the circle");
        GridRotations {
            table: vec![Rotation::to_point(&third)],
            prec,
        }
    }

    fn level(&mut self, i: usize) -> &Rotation {
        let one = IntervalScalar::one(self.prec);
        while self.table.len() <= i {
            let last = self.table.last().expect("seeded");
            let c = one
                .add(last.cos())
                .mul_pow2(-1)
                .clamp_nonneg()
                .sqrt()
                .expect("nonnegative");
            let s = last
                .sin()
                .div(&c.mul_pow2(1))
                .expect("half angle below a quarter turn");
            let point = CirclePoint::new(c, s).expect("on the circle");
            self.table.push(Rotation::to_point(&point));
        }
        &self.table[i]
    }
}

/// Widen the box of a short arc from `a` to `b` (counterclockwise) by the
/// axis extremes the arc may pass through.
fn arc_box(a: &CirclePoint, b: &CirclePoint) -> (IntervalScalar, IntervalScalar) {
    let prec = a.precision();
    let mut x = a.x().hull(b.x());
    let mut y = a.y().hull(b.y());
    let one = IntervalScalar::one(prec);
    let zero = IntervalScalar::zero(prec);
    let axes = [
        (one.clone(), zero.clone()),
        (zero.clone(), one.clone()),
        (one.neg(), zero.clone()),
        (zero, one.neg()),
    ];
    for (ux, uy) in axes {
        let u = CirclePoint::new(ux.clone(), uy.clone()).expect("unit vector");
        let excluded = a.cross(&u).is_certainly_negative() || u.cross(b).is_certainly_negative();
        if !excluded {
            x = x.hull(&ux);
            y = y.hull(&uy);
        }
    }
    (x, y)
}

/// The point at arclength `theta` counterclockwise from `(1, 0)`;
/// negative arguments are reflected in the horizontal axis.
pub fn geometric_point(theta: &IntervalScalar, prec: u32) -> Result<CirclePoint> {
    if theta.is_certainly_negative() {
        return Ok(geometric_point(&theta.neg(), prec)?.reflect());
    }
    let wp = prec + GUARD_BITS;
    let tp = two_pi(wp);
    if theta.lo().signum() < 0 || *theta.hi() >= *tp.lo() {
        return Err(Error::ThetaOutOfRange);
    }
    let theta = theta.with_precision(wp.max(theta.precision()));
    let tol = Dyadic::pow2(8 - i64::from(prec));
    let mut rotations = GridRotations::new(wp);

    // Invariant: lo·u ≤ θ ≤ hi·u with u = 2π/(3·2^level), and p_lo, p_hi
    // are the grid vertices lo and hi.
    let mut level: u32 = 0;
    let mut lo = BigInt::from(0);
    let mut hi = BigInt::from(3);
    let mut p_lo = CirclePoint::start(wp);
    let mut p_hi = CirclePoint::start(wp);
    loop {
        let step = rotations.level(level as usize).clone();
        while &lo + 1u32 < hi
            && compare_certain(&grid_arc(&tp, &(&lo + 1u32), level), &theta)
                == Verdict::CertainlyLess
        {
            lo += 1u32;
            p_lo = step.apply(&p_lo);
        }
        while &hi - 1u32 > lo
            && compare_certain(&grid_arc(&tp, &(&hi - 1u32), level), &theta)
                == Verdict::CertainlyGreater
        {
            hi -= 1u32;
            p_hi = step.apply_inverse(&p_hi);
        }
        let width = &hi - &lo;
        if level >= 4 {
            if width > BigInt::from(16) {
                return Err(Error::BisectionStall);
            }
            if width > BigInt::from(8) || p_lo.dist(&p_hi).hi() < &tol {
                break;
            }
        }
        level += 1;
        lo <<= 1u32;
        hi <<= 1u32;
    }
    let (x, y) = arc_box(&p_lo, &p_hi);
    CirclePoint::new(x.with_precision(prec), y.with_precision(prec))
}

pub fn geometric_sin(theta: &IntervalScalar, prec: u32) -> Result<IntervalScalar> {
    Ok(geometric_point(theta, prec)?.y().clone())
}

pub fn geometric_cos(theta: &IntervalScalar, prec: u32) -> Result<IntervalScalar> {
    Ok(geometric_point(theta, prec)?.x().clone())
}

/// The two-triangle bracket `1 ≤ θ/sin θ ≤ 1/cos θ` for one argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub theta: IntervalScalar,
    pub sin: IntervalScalar,
    pub cos: IntervalScalar,
    /// `θ / sin θ`.
    pub mid: IntervalScalar,
    /// `1 / cos θ`.
    pub upper: IntervalScalar,
    /// `1` against `mid`, then `mid` against `upper`.
    pub verdicts: (Verdict, Verdict),
    /// `mid − 1` against `θ²`, reported for `θ ≤ 1/2`.
    pub quadratic: Option<Verdict>,
}

impl SandwichReport {
    /// Every reported inequality certified.
    pub fn holds(&self) -> bool {
        self.verdicts == (Verdict::CertainlyLess, Verdict::CertainlyLess)
            && self.quadratic.is_none_or(|v| v == Verdict::CertainlyLess)
    }

    /// `mid − 1`.
    pub fn gap(&self) -> IntervalScalar {
        self.mid.sub(&IntervalScalar::one(self.mid.precision()))
    }

    /// `theta, sin_lo, sin_hi, cos_lo, cos_hi, mid_lo, mid_hi, upper_lo, upper_hi`.
    pub fn csv_row(&self) -> String {
        let mut cells = vec![self.theta.lo_decimal()];
        for x in [&self.sin, &self.cos, &self.mid, &self.upper] {
            let (lo, hi) = x.to_decimal_pair();
            cells.push(lo);
            cells.push(hi);
        }
        cells.join(",")
    }
}

pub const SANDWICH_CSV_HEADER: &str =
    "theta,sin_lo,sin_hi,cos_lo,cos_hi,mid_lo,mid_hi,upper_lo,upper_hi";

/// Sandwich bracket for `0 < θ < π/2`.
pub fn sandwich_report(theta: &IntervalScalar, prec: u32) -> Result<SandwichReport> {
    let quarter_turn = two_pi(prec + GUARD_BITS).mul_pow2(-2);
    if !theta.is_certainly_positive() || theta.hi() >= quarter_turn.lo() {
        return Err(Error::ThetaOutOfRange);
    }
    let point = geometric_point(theta, prec)?;
    let (cos, sin) = (point.x().clone(), point.y().clone());
    let one = IntervalScalar::one(prec);
    let theta = theta.with_precision(prec.max(theta.precision()));
    // Both are positive on the domain; an enclosure reaching zero means the precision is too low.
    let inconclusive = |_| Error::InconclusivePrecision(prec);
    let mid = theta.div(&sin).map_err(inconclusive)?;
    let upper = one.div(&cos).map_err(inconclusive)?;
    let verdicts = (compare_certain(&one, &mid), compare_certain(&mid, &upper));
    let quadratic =
        (*theta.hi() <= Dyadic::pow2(-1)).then(|| compare_certain(&mid.sub(&one), &theta.sqr()));
    Ok(SandwichReport {
        theta,
        sin,
        cos,
        mid,
        upper,
        verdicts,
        quadratic,
    })
}
