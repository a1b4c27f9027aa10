//! Points in the plane and on the unit circle, chord stepping and tangent
//! meets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Dyadic, IntervalScalar};

/// A point of the plane as a pair of coordinate enclosures.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanePoint {
    pub x: IntervalScalar,
    pub y: IntervalScalar,
}

impl PlanePoint {
    pub fn new(x: IntervalScalar, y: IntervalScalar) -> Self {
        PlanePoint { x, y }
    }

    pub fn sub(&self, other: &PlanePoint) -> PlanePoint {
        PlanePoint::new(self.x.sub(&other.x), self.y.sub(&other.y))
    }

    pub fn dot(&self, other: &PlanePoint) -> IntervalScalar {
        self.x.mul(&other.x).add(&self.y.mul(&other.y))
    }

    /// `self × other`; positive when `other` lies counterclockwise of `self`.
    pub fn cross(&self, other: &PlanePoint) -> IntervalScalar {
        self.x.mul(&other.y).sub(&self.y.mul(&other.x))
    }

    pub fn norm_sq(&self) -> IntervalScalar {
        self.x.sqr().add(&self.y.sqr())
    }

    pub fn dist(&self, other: &PlanePoint) -> IntervalScalar {
        self.sub(other)
            .norm_sq()
            .sqrt()
            .expect("a sum of squares is nonnegative")
    }

    pub fn overlaps(&self, other: &PlanePoint) -> bool {
        self.x.overlaps(&other.x) && self.y.overlaps(&other.y)
    }

    pub fn with_precision(&self, prec: u32) -> PlanePoint {
        PlanePoint::new(self.x.with_precision(prec), self.y.with_precision(prec))
    }

    /// `[[x_lo, x_hi], [y_lo, y_hi]]` as outward-rounded decimals.
    pub fn to_decimal_pairs(&self) -> [[String; 2]; 2] {
        let (xl, xh) = self.x.to_decimal_pair();
        let (yl, yh) = self.y.to_decimal_pair();
        [[xl, xh], [yl, yh]]
    }
}

/// A point certified to lie on the unit circle: `x² + y²` contains 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CirclePoint {
    x: IntervalScalar,
    y: IntervalScalar,
}

impl CirclePoint {
    pub fn new(x: IntervalScalar, y: IntervalScalar) -> Result<Self> {
        let p = CirclePoint { x, y };
        if p.norm_sq().contains_value(&Dyadic::one()) {
            Ok(p)
        } else {
            Err(Error::OffCircle)
        }
    }

    /// Caller guarantees the exact point lies in the enclosure and on the circle.
    pub(crate) fn trusted(x: IntervalScalar, y: IntervalScalar) -> Self {
        CirclePoint { x, y }
    }

    /// `(1, 0)`.
    pub fn start(prec: u32) -> Self {
        CirclePoint::trusted(IntervalScalar::one(prec), IntervalScalar::zero(prec))
    }

    pub fn x(&self) -> &IntervalScalar {
        &self.x
    }

    pub fn y(&self) -> &IntervalScalar {
        &self.y
    }

    pub fn precision(&self) -> u32 {
        self.x.precision().max(self.y.precision())
    }

    pub fn as_plane(&self) -> PlanePoint {
        PlanePoint::new(self.x.clone(), self.y.clone())
    }

    pub fn norm_sq(&self) -> IntervalScalar {
        self.x.sqr().add(&self.y.sqr())
    }

    pub fn dot(&self, other: &CirclePoint) -> IntervalScalar {
        self.x.mul(&other.x).add(&self.y.mul(&other.y))
    }

    pub fn cross(&self, other: &CirclePoint) -> IntervalScalar {
        self.x.mul(&other.y).sub(&self.y.mul(&other.x))
    }

    /// Chord length `|self − other|`.
    pub fn dist(&self, other: &CirclePoint) -> IntervalScalar {
        self.as_plane().dist(&other.as_plane())
    }

    pub fn overlaps(&self, other: &CirclePoint) -> bool {
        self.x.overlaps(&other.x) && self.y.overlaps(&other.y)
    }

    /// Mirror image `(x, −y)` in the horizontal axis.
    pub fn reflect(&self) -> CirclePoint {
        CirclePoint::trusted(self.x.clone(), self.y.neg())
    }

    /// Mirror image `(−x, y)` in the vertical axis.
    pub fn mirror(&self) -> CirclePoint {
        CirclePoint::trusted(self.x.neg(), self.y.clone())
    }

    pub fn with_precision(&self, prec: u32) -> CirclePoint {
        CirclePoint::trusted(self.x.with_precision(prec), self.y.with_precision(prec))
    }

    pub fn to_decimal_pairs(&self) -> [[String; 2]; 2] {
        self.as_plane().to_decimal_pairs()
    }

    /// Intersect each coordinate with what the other forces through
    /// `x² + y² = 1`; keeps long step chains from drifting off the circle.
    fn tightened(self) -> CirclePoint {
        let prec = self.precision();
        if self.norm_sq().width() <= Dyadic::pow2(16 - i64::from(prec)) {
            return self;
        }
        let y = tighten_coordinate(&self.y, &self.x);
        let x = tighten_coordinate(&self.x, &y);
        CirclePoint::trusted(x, y)
    }
}

fn tighten_coordinate(target: &IntervalScalar, other: &IntervalScalar) -> IntervalScalar {
    let one = IntervalScalar::one(other.precision());
    let Ok(size) = one.sub(&other.sqr()).clamp_nonneg().sqrt() else {
        return target.clone();
    };
    let forced = if target.is_certainly_positive() {
        size
    } else if target.is_certainly_negative() {
        size.neg()
    } else {
        size.neg().hull(&size)
    };
    target.intersect(&forced).unwrap_or_else(|| target.clone())
}

/// Rotation whose chord from any circle point has a given length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    cos: IntervalScalar,
    sin: IntervalScalar,
}

impl Rotation {
    /// `cos = 1 − c²/2`, `sin = c·√(4 − c²)/2`, for `0 < c < 2`.
    pub fn from_chord(c: &IntervalScalar) -> Result<Self> {
        if c.lo().signum() <= 0 || *c.hi() >= Dyadic::from_int(2) {
            return Err(Error::InvalidChord);
        }
        let prec = c.precision();
        let c_sq = c.sqr();
        let one = IntervalScalar::one(prec);
        let four = IntervalScalar::from_int(4, prec);
        let cos = one.sub(&c_sq.mul_pow2(-1));
        let sin = c.mul(&four.sub(&c_sq).clamp_nonneg().sqrt()?).mul_pow2(-1);
        Ok(Rotation { cos, sin })
    }

    /// Rotation taking `(1, 0)` to the circle point `p`.
    pub fn to_point(p: &CirclePoint) -> Self {
        Rotation {
            cos: p.x.clone(),
            sin: p.y.clone(),
        }
    }

    pub fn cos(&self) -> &IntervalScalar {
        &self.cos
    }

    pub fn sin(&self) -> &IntervalScalar {
        &self.sin
    }

    /// Counterclockwise image of `p`.
    pub fn apply(&self, p: &CirclePoint) -> CirclePoint {
        let x = p.x.mul(&self.cos).sub(&p.y.mul(&self.sin));
        let y = p.x.mul(&self.sin).add(&p.y.mul(&self.cos));
        CirclePoint::trusted(x, y).tightened()
    }

    /// Clockwise image of `p`.
    pub fn apply_inverse(&self, p: &CirclePoint) -> CirclePoint {
        let x = p.x.mul(&self.cos).add(&p.y.mul(&self.sin));
        let y = p.y.mul(&self.cos).sub(&p.x.mul(&self.sin));
        CirclePoint::trusted(x, y).tightened()
    }

    /// Composition: first `self`, then `other`.
    pub fn then(&self, other: &Rotation) -> Rotation {
        let cos = self.cos.mul(&other.cos).sub(&self.sin.mul(&other.sin));
        let sin = self.sin.mul(&other.cos).add(&self.cos.mul(&other.sin));
        Rotation { cos, sin }
    }
}

/// The point at chord distance `c` counterclockwise from `p`.
pub fn step_by_chord(p: &CirclePoint, c: &IntervalScalar) -> Result<CirclePoint> {
    Ok(Rotation::from_chord(c)?.apply(p))
}

/// The point at chord distance `c` clockwise from `p`.
pub fn step_by_chord_clockwise(p: &CirclePoint, c: &IntervalScalar) -> Result<CirclePoint> {
    Ok(Rotation::from_chord(c)?.apply_inverse(p))
}

/// Meet of the tangent lines at `p` and `q`: `(p + q) / (1 + p·q)`.
pub fn tangent_intersection(p: &CirclePoint, q: &CirclePoint) -> Result<PlanePoint> {
    let one = IntervalScalar::one(p.precision().max(q.precision()));
    let denom = one.add(&p.dot(q));
    if denom.contains_zero() {
        return Err(Error::AntipodalTangents);
    }
    Ok(PlanePoint::new(
        p.x.add(&q.x).div(&denom)?,
        p.y.add(&q.y).div(&denom)?,
    ))
}

/// Serialized form of a point: `[[x_lo, x_hi], [y_lo, y_hi]]`, each an
/// exact decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointRecord(pub [[String; 2]; 2]);

impl PointRecord {
    pub fn to_point(&self, prec: u32) -> Result<CirclePoint> {
        let parse = |pair: &[String; 2]| -> Result<IntervalScalar> {
            let lo = IntervalScalar::from_decimal(&pair[0], prec)?;
            let hi = IntervalScalar::from_decimal(&pair[1], prec)?;
            if lo.lo() > hi.hi() {
                return Err(Error::BadDecimal(format!("{} > {}", pair[0], pair[1])));
            }
            Ok(IntervalScalar::new(lo.lo().clone(), hi.hi().clone(), prec))
        };
        CirclePoint::new(parse(&self.0[0])?, parse(&self.0[1])?)
    }
}

impl From<&CirclePoint> for PointRecord {
    fn from(p: &CirclePoint) -> Self {
        let (xl, xh) = p.x().to_exact_decimal_pair();
        let (yl, yh) = p.y().to_exact_decimal_pair();
        PointRecord([[xl, xh], [yl, yh]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{compare_certain, Verdict};

    const PREC: u32 = 128;

    fn sqrt_of(k: i64) -> IntervalScalar {
        IntervalScalar::from_int(k, PREC).sqrt().unwrap()
    }

    fn encloses(p: &CirclePoint, x: &IntervalScalar, y: &IntervalScalar) -> bool {
        p.x().overlaps(x) && p.y().overlaps(y) && p.x().width_f64() < 1e-30
    }

    #[test]
    fn quarter_turn() {
        let q = step_by_chord(&CirclePoint::start(PREC), &sqrt_of(2)).unwrap();
        assert!(encloses(
            &q,
            &IntervalScalar::zero(PREC),
            &IntervalScalar::one(PREC)
        ));
    }

    #[test]
    fn hexagon_steps() {
        let one = IntervalScalar::one(PREC);
        let half_root3 = sqrt_of(3).mul_pow2(-1);
        let p1 = step_by_chord(&CirclePoint::start(PREC), &one).unwrap();
        assert!(encloses(&p1, &one.mul_pow2(-1), &half_root3));
        let top = CirclePoint::new(IntervalScalar::zero(PREC), one.clone()).unwrap();
        let p2 = step_by_chord(&top, &one).unwrap();
        assert!(encloses(&p2, &half_root3.neg(), &one.mul_pow2(-1)));
        assert!(top.dist(&p2).overlaps(&one));
    }

    #[test]
    fn clockwise_undoes_counterclockwise() {
        let c = IntervalScalar::from_decimal("0.7", PREC).unwrap();
        let p = step_by_chord(&CirclePoint::start(PREC), &c).unwrap();
        let back = step_by_chord_clockwise(&p, &c).unwrap();
        assert!(back.overlaps(&CirclePoint::start(PREC)));
    }

    #[test]
    fn invalid_chords() {
        let p = CirclePoint::start(PREC);
        assert_eq!(
            step_by_chord(&p, &IntervalScalar::from_int(2, PREC)),
            Err(Error::InvalidChord)
        );
        assert_eq!(
            step_by_chord(&p, &IntervalScalar::zero(PREC)),
            Err(Error::InvalidChord)
        );
    }

    #[test]
    fn off_circle_points_are_rejected() {
        let half = IntervalScalar::from_ratio(1, 2, PREC);
        assert_eq!(CirclePoint::new(half.clone(), half), Err(Error::OffCircle));
    }

    #[test]
    fn tangent_meets() {
        let e = CirclePoint::start(PREC);
        let n = CirclePoint::new(IntervalScalar::zero(PREC), IntervalScalar::one(PREC)).unwrap();
        let corner = tangent_intersection(&e, &n).unwrap();
        assert_eq!(corner.x, IntervalScalar::one(PREC));
        assert_eq!(corner.y, IntervalScalar::one(PREC));
        let w = CirclePoint::new(
            IntervalScalar::from_int(-1, PREC),
            IntervalScalar::zero(PREC),
        )
        .unwrap();
        assert_eq!(tangent_intersection(&e, &w), Err(Error::AntipodalTangents));
    }

    #[test]
    fn tangent_meet_is_symmetric_and_equidistant() {
        let p = step_by_chord(
            &CirclePoint::start(PREC),
            &IntervalScalar::from_decimal("0.3", PREC).unwrap(),
        )
        .unwrap();
        let q = step_by_chord(&p, &IntervalScalar::from_decimal("1.2", PREC).unwrap()).unwrap();
        let t = tangent_intersection(&p, &q).unwrap();
        assert_eq!(t, tangent_intersection(&q, &p).unwrap());
        let (dp, dq) = (t.dist(&p.as_plane()), t.dist(&q.as_plane()));
        assert!(dp.overlaps(&dq));
    }

    #[test]
    fn long_chains_stay_certified_and_narrow() {
        let c = IntervalScalar::from_decimal("0.01", PREC).unwrap();
        let mut p = CirclePoint::start(PREC);
        for _ in 0..5000 {
            p = step_by_chord(&p, &c).unwrap();
        }
        assert!(p.norm_sq().contains_value(&Dyadic::one()));
        assert!(p.x().width_f64() < 1e-25);
    }

    #[test]
    fn rotation_composition() {
        let r = Rotation::from_chord(&IntervalScalar::one(PREC)).unwrap();
        let twice = r.then(&r);
        let p = twice.apply(&CirclePoint::start(PREC));
        assert_eq!(
            compare_certain(p.x(), &IntervalScalar::zero(PREC)),
            Verdict::CertainlyLess
        );
        assert!(p.x().overlaps(&IntervalScalar::from_ratio(-1, 2, PREC)));
    }

    #[test]
    fn record_roundtrip() {
        let p = step_by_chord(&CirclePoint::start(PREC), &IntervalScalar::one(PREC)).unwrap();
        let rec = PointRecord::from(&p);
        assert_eq!(rec.to_point(PREC).unwrap(), p);
    }
}
