//! Regular partitions of an arc shorter than half the circle, their chord,
//! projection and tangent profiles, and the comparison laws between them.
//!
//! The step chord of an `n`-fold partition is found by certified bisection:
//! walking `n` chord steps sweeps an angle that grows with the chord, and
//! each trial chord is classified as certainly too short, certainly too
//! long, or undecided, using only cross products against the arc ends.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::circuits::{crosses_ray, tangent_intersection, CirclePoint, PlanePoint, Rotation};
use crate::error::{Error, Result};
use crate::interval::{compare_certain, Dyadic, IntervalScalar, Round, Verdict};
use crate::oracle;
use crate::polygons::seed_edge;

/// Extra bits carried by the bisection beyond the requested precision.
const GUARD_BITS: u32 = 32;

/// An arc from `start`, counterclockwise, whose chord is `chord_total`;
/// certified shorter than half the circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcSpec {
    start: CirclePoint,
    chord_total: IntervalScalar,
}

impl ArcSpec {
    pub fn new(start: CirclePoint, chord_total: IntervalScalar) -> Result<Self> {
        if !chord_total.is_certainly_positive() || *chord_total.hi() >= Dyadic::from_int(2) {
            return Err(Error::InvalidChord);
        }
        Ok(ArcSpec { start, chord_total })
    }

    /// The arc starting at `(1, 0)`.
    pub fn from_chord(chord_total: IntervalScalar) -> Result<Self> {
        let start = CirclePoint::start(chord_total.precision());
        ArcSpec::new(start, chord_total)
    }

    /// A sixth of the circle (chord 1).
    pub fn sixth(prec: u32) -> Self {
        ArcSpec::from_chord(seed_edge(6, prec).expect("seed")).expect("chord 1")
    }

    /// A quarter of the circle (chord `√2`).
    pub fn quarter(prec: u32) -> Self {
        ArcSpec::from_chord(seed_edge(4, prec).expect("seed")).expect("chord √2")
    }

    /// A third of the circle (chord `√3`).
    pub fn third(prec: u32) -> Self {
        ArcSpec::from_chord(seed_edge(3, prec).expect("seed")).expect("chord √3")
    }

    pub fn start(&self) -> &CirclePoint {
        &self.start
    }

    pub fn chord_total(&self) -> &IntervalScalar {
        &self.chord_total
    }

    pub fn end(&self) -> CirclePoint {
        Rotation::from_chord(&self.chord_total)
            .expect("validated chord")
            .apply(&self.start)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sweep {
    Short,
    Long,
    Unknown,
}

/// Classify `n` steps of chord `c` from `start` against the target: the
/// arc ending at `end`, or one full turn when `end` is `None`.
fn classify(start: &CirclePoint, end: Option<&CirclePoint>, c: &IntervalScalar, n: u32) -> Sweep {
    let Ok(rotation) = Rotation::from_chord(c) else {
        return Sweep::Long;
    };
    let mut p = start.clone();
    for i in 0..n {
        let q = rotation.apply(&p);
        if i > 0 {
            match crosses_ray(&p, &q, start) {
                Some(true) => return Sweep::Long,
                None => return Sweep::Unknown,
                Some(false) => {}
            }
        }
        p = q;
    }
    let Some(end) = end else {
        return Sweep::Short;
    };
    let side = start.cross(&p);
    if side.is_certainly_negative() {
        return Sweep::Long;
    }
    if !side.is_certainly_positive() {
        return Sweep::Unknown;
    }
    let gap = p.cross(end);
    if gap.is_certainly_positive() {
        Sweep::Short
    } else if gap.is_certainly_negative() {
        Sweep::Long
    } else {
        Sweep::Unknown
    }
}

/// Narrow `[lo, hi]` around the switch point of a monotone classifier
/// until the width drops below `2^(7 − prec)`.
fn bisect(
    classify: impl Fn(&Dyadic) -> Sweep,
    mut lo: Dyadic,
    mut hi: Dyadic,
    prec: u32,
) -> Result<IntervalScalar> {
    let tol = Dyadic::pow2(7 - i64::from(prec));
    let midpoint = |a: &Dyadic, b: &Dyadic| a.add_exact(b).mul_pow2(-1);
    while hi.add_exact(&lo.neg()) >= tol {
        let mid = midpoint(&lo, &hi);
        match classify(&mid) {
            Sweep::Short => lo = mid,
            Sweep::Long => hi = mid,
            Sweep::Unknown => {
                let q1 = midpoint(&lo, &mid);
                let q3 = midpoint(&mid, &hi);
                let mut moved = false;
                if classify(&q1) == Sweep::Short {
                    lo = q1;
                    moved = true;
                }
                if classify(&q3) == Sweep::Long {
                    hi = q3;
                    moved = true;
                }
                if !moved {
                    return Err(Error::BisectionStall);
                }
            }
        }
    }
    Ok(IntervalScalar::new(lo, hi, prec))
}

/// Chord `c` such that `n` counterclockwise steps of length `c` from the
/// arc start land on the arc end.
pub fn solve_regular_chord(arc: &ArcSpec, n: u32, prec: u32) -> Result<IntervalScalar> {
    match n {
        0 => Err(Error::PreconditionViolation(
            "a partition needs n ≥ 1".into(),
        )),
        1 => Ok(arc.chord_total.clone()),
        _ => {
            let wp = prec + GUARD_BITS;
            let start = arc.start.with_precision(wp.max(arc.start.precision()));
            let end = ArcSpec::new(start.clone(), arc.chord_total.clone())?.end();
            let test =
                |c: &Dyadic| classify(&start, Some(&end), &IntervalScalar::point(c.clone(), wp), n);
            bisect(test, Dyadic::zero(), arc.chord_total.hi().clone(), prec)
        }
    }
}

/// Edge of the regular `n`-gon inscribed in the unit circle, for any
/// `n ≥ 3`, by bisection against one full turn.
pub fn solve_closing_chord(n: u32, prec: u32) -> Result<IntervalScalar> {
    if n < 3 {
        return Err(Error::PreconditionViolation(format!(
            "a polygon needs n ≥ 3, got {n}"
        )));
    }
    let wp = prec + GUARD_BITS;
    let start = CirclePoint::start(wp);
    let test = |c: &Dyadic| classify(&start, None, &IntervalScalar::point(c.clone(), wp), n);
    let bound = Dyadic::from_ratio(&BigInt::from(7), &BigInt::from(n), wp, Round::Up);
    bisect(test, Dyadic::zero(), bound.min(Dyadic::from_int(2)), prec)
}

/// Chord, projection and tangent profile of the regular `n`-fold partition
/// `P_1, …, P_{n+1}` of an arc.
///
/// Coordinates are taken in the frame where the chord `P_{n+1} P_1` points
/// along the positive horizontal axis and is bisected by the vertical axis;
/// the points run counterclockwise from right to left over the top, and the
/// left half is the exact mirror image of the right half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionProfile {
    pub n: u32,
    /// Chord of one subdivision.
    pub step_chord: IntervalScalar,
    /// `P_1, …, P_{n+1}`.
    pub points: Vec<CirclePoint>,
    /// `ℓ_k = |P_1 P_{k+1}|` for `k = 1..n`.
    pub cumulative_chords: Vec<IntervalScalar>,
    /// `|P_{1,k} P_{1,k+1}|` for `k = 1..n`, with `P_{1,1} = P_1` and
    /// `P_{1,k}` the meet of the tangents at `P_1` and `P_k`.
    pub tangent_segments: Vec<IntervalScalar>,
    /// Gaps `|q_k q_{k+1}|` between the projections of consecutive points
    /// onto the chord `P_1 P_{n+1}`.
    pub projections: Vec<IntervalScalar>,
    /// `L_k = 2·|P_1 P_{1,k+1}|` for `k = 1..n`, the circumscribed edge
    /// over the first `k` subdivisions.
    pub tangent_lengths: Vec<IntervalScalar>,
    /// `L_n`.
    pub tangent_total: IntervalScalar,
}

pub fn partition_profile(arc: &ArcSpec, n: u32, prec: u32) -> Result<PartitionProfile> {
    if n < 2 {
        return Err(Error::PreconditionViolation(format!(
            "a profile needs n ≥ 2, got {n}"
        )));
    }
    let c = solve_regular_chord(arc, n, prec)?;
    let rotation = Rotation::from_chord(&c)?;
    let one = IntervalScalar::one(prec);
    let half = (n / 2) as usize;
    let mut right = Vec::with_capacity(half + 1);
    let mut middle = None;
    let mut p = if n.is_multiple_of(2) {
        let top = CirclePoint::new(IntervalScalar::zero(prec), one.clone())?;
        middle = Some(top.clone());
        rotation.apply_inverse(&top)
    } else {
        let x = c.mul_pow2(-1);
        let y = one.sub(&x.sqr()).clamp_nonneg().sqrt()?;
        CirclePoint::new(x, y)?
    };
    let right_count = n.div_ceil(2) as usize;
    for _ in 0..right_count {
        right.push(p.clone());
        p = rotation.apply_inverse(&p);
    }
    let mut points: Vec<CirclePoint> = right.iter().rev().cloned().collect();
    points.extend(middle);
    points.extend(right.iter().map(CirclePoint::mirror));
    debug_assert_eq!(points.len(), n as usize + 1);

    let first = &points[0];
    let cumulative_chords = points[1..].iter().map(|q| first.dist(q)).collect();
    let projections = points.windows(2).map(|w| w[0].x().sub(w[1].x())).collect();
    let mut meets = vec![first.as_plane()];
    for q in &points[1..] {
        meets.push(tangent_intersection(first, q)?);
    }
    let tangent_segments = meets.windows(2).map(|w| w[0].dist(&w[1])).collect();
    let base = first.as_plane();
    let tangent_lengths: Vec<IntervalScalar> = meets[1..]
        .iter()
        .map(|t| base.dist(t).mul_pow2(1))
        .collect();
    let tangent_total = tangent_lengths.last().expect("n ≥ 2").clone();
    Ok(PartitionProfile {
        n,
        step_chord: c,
        points,
        cumulative_chords,
        tangent_segments,
        projections,
        tangent_lengths,
        tangent_total,
    })
}

/// Outcome of a certified comparison `lhs` vs `rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: Verdict,
    pub lhs: IntervalScalar,
    pub rhs: IntervalScalar,
}

/// Which comparison law to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    /// `n·ℓ_m > m·ℓ_n`.
    Chord,
    /// `n·L_m < m·L_n`.
    Tangent,
}

fn check_indices(m: u32, n: u32) -> Result<()> {
    if m < 1 || m >= n {
        return Err(Error::PreconditionViolation(format!(
            "need 1 ≤ m < n, got m={m}, n={n}"
        )));
    }
    Ok(())
}

/// `lhs = n·ℓ_m`, `rhs = m·ℓ_n`, verdict of `rhs` against `lhs`; the chord
/// law predicts `CertainlyLess`.
pub fn chord_compare(arc: &ArcSpec, m: u32, n: u32, prec: u32) -> Result<Comparison> {
    check_indices(m, n)?;
    let profile = partition_profile(arc, n, prec)?;
    let lhs = profile.cumulative_chords[m as usize - 1].scale(n);
    let rhs = profile.cumulative_chords[n as usize - 1].scale(m);
    Ok(Comparison {
        verdict: compare_certain(&rhs, &lhs),
        lhs,
        rhs,
    })
}

/// `lhs = n·L_m`, `rhs = m·L_n`, verdict of `lhs` against `rhs`; the
/// tangent law predicts `CertainlyLess`.
pub fn tangent_compare(arc: &ArcSpec, m: u32, n: u32, prec: u32) -> Result<Comparison> {
    check_indices(m, n)?;
    let profile = partition_profile(arc, n, prec)?;
    let lhs = profile.tangent_lengths[m as usize - 1].scale(n);
    let rhs = profile.tangent_lengths[n as usize - 1].scale(m);
    Ok(Comparison {
        verdict: compare_certain(&lhs, &rhs),
        lhs,
        rhs,
    })
}

pub fn compare(law: Law, arc: &ArcSpec, m: u32, n: u32, prec: u32) -> Result<Comparison> {
    match law {
        Law::Chord => chord_compare(arc, m, n, prec),
        Law::Tangent => tangent_compare(arc, m, n, prec),
    }
}

/// Repeat a comparison at doubled precision while it overlaps or the
/// bisection stalls, up to `cap` bits; `arc_at` rebuilds the arc at each
/// precision. Returns the last comparison and the precision it used.
pub fn compare_adaptive(
    law: Law,
    arc_at: impl Fn(u32) -> Result<ArcSpec>,
    m: u32,
    n: u32,
    start_prec: u32,
    cap: u32,
) -> Result<(Comparison, u32)> {
    let mut prec = start_prec;
    loop {
        match compare(law, &arc_at(prec)?, m, n, prec) {
            Ok(c) if c.verdict.is_certain() || prec * 2 > cap => return Ok((c, prec)),
            Err(Error::BisectionStall) if prec * 2 > cap => {
                return Err(Error::InconclusivePrecision(cap))
            }
            Ok(_) | Err(Error::BisectionStall) => prec *= 2,
            Err(e) => return Err(e),
        }
    }
}

/// Degree measures of the quadrilateral cut out by the tangents at
/// `Q_0, Q_1, Q_{n−1}, Q_n`, where `Q_j` sits at angle `jθ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleProfile {
    /// `180 − nθ`, at the meet of the tangents at `Q_0` and `Q_n`.
    pub outer_apex: IntervalScalar,
    /// `(n − 1)θ`, at the meets of the tangents at `Q_0, Q_{n−1}` and at `Q_1, Q_n`.
    pub base_angles: IntervalScalar,
    /// `180 − (n − 2)θ`, at the meet of the tangents at `Q_1` and `Q_{n−1}`.
    pub inner_apex: IntervalScalar,
    /// The same four angles measured from coordinates: outer, the two
    /// base angles, inner.
    pub measured: [IntervalScalar; 4],
    /// True when `n = 2` and the inner apex is a straight angle.
    pub inner_degenerate: bool,
}

/// Angle profile for `θ = 360°·num/den`, computed by the closed formulas
/// and by coordinate geometry; the two routes must agree.
pub fn angle_profile(n: u32, num: u64, den: u64, prec: u32) -> Result<AngleProfile> {
    if n < 2 || num == 0 || den == 0 {
        return Err(Error::PreconditionViolation(format!(
            "need n ≥ 2 and a positive fraction, got n={n}, {num}/{den}"
        )));
    }
    if 2 * u128::from(n) * u128::from(num) >= u128::from(den) {
        return Err(Error::DomainViolation(format!(
            "{n}·(360·{num}/{den})° is not below 180°"
        )));
    }
    let degrees = |whole: i64, multiple: i64| {
        let value = BigInt::from(whole) * BigInt::from(den)
            - BigInt::from(multiple) * 360 * BigInt::from(num);
        IntervalScalar::from_ratio(value, den, prec)
    };
    let n_i = i64::from(n);
    let outer_apex = degrees(180, n_i);
    let base_angles = degrees(0, -(n_i - 1));
    let inner_apex = degrees(180, n_i - 2);

    let wp = prec + GUARD_BITS;
    let pi = oracle::pi(wp);
    let theta = pi
        .mul_pow2(1)
        .scale(num)
        .div(&IntervalScalar::from_int(den, wp))?;
    let q = |j: u32| -> Result<CirclePoint> {
        let (s, c) = oracle::sin_cos(&theta.scale(j));
        CirclePoint::new(c, s)
    };
    let (q0, q1, qm, qn) = (q(0)?, q(1)?, q(n - 1)?, q(n)?);
    let a = tangent_intersection(&q0, &qn)?;
    let b = tangent_intersection(&q0, &qm)?;
    let c = if n == 2 {
        q1.as_plane()
    } else {
        tangent_intersection(&q1, &qm)?
    };
    let d = tangent_intersection(&q1, &qn)?;
    let to_degrees = |r: IntervalScalar| r.scale(180).div(&pi).map(|v| v.with_precision(prec));
    let angle = |v: &PlanePoint, u: &PlanePoint, w: &PlanePoint| {
        to_degrees(oracle::angle_between(&u.sub(v), &w.sub(v)))
    };
    let measured = [
        angle(&a, &b, &d)?,
        angle(&b, &a, &c)?,
        angle(&d, &a, &c)?,
        angle(&c, &b, &d)?,
    ];
    let agree = measured[0].overlaps(&outer_apex)
        && measured[1].overlaps(&base_angles)
        && measured[2].overlaps(&base_angles)
        && measured[3].overlaps(&inner_apex);
    if !agree {
        return Err(Error::GeometryMismatch);
    }
    Ok(AngleProfile {
        outer_apex,
        base_angles,
        inner_apex,
        measured,
        inner_degenerate: n == 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PREC: u32 = 96;

    fn dec(s: &str) -> IntervalScalar {
        IntervalScalar::from_decimal(s, 128).unwrap()
    }

    fn between(x: &IntervalScalar, lo: &str, hi: &str) -> bool {
        compare_certain(&dec(lo), x) == Verdict::CertainlyLess
            && compare_certain(x, &dec(hi)) == Verdict::CertainlyLess
    }

    #[test]
    fn single_step_is_the_whole_chord() {
        let arc = ArcSpec::quarter(PREC);
        assert_eq!(
            solve_regular_chord(&arc, 1, PREC).unwrap(),
            *arc.chord_total()
        );
        assert!(solve_regular_chord(&arc, 0, PREC).is_err());
    }

    #[test]
    fn halving_a_quarter_arc() {
        let c = solve_regular_chord(&ArcSpec::quarter(PREC), 2, PREC).unwrap();
        assert!(between(&c, "0.76536686", "0.76536687"));
        assert!(c.width() < Dyadic::pow2(8 - i64::from(PREC)));
    }

    #[test]
    fn closing_chords_of_small_polygons() {
        let tri = solve_closing_chord(3, PREC).unwrap();
        assert!(tri.overlaps(&seed_edge(3, PREC).unwrap()));
        let hex = solve_closing_chord(6, PREC).unwrap();
        assert!(hex.contains_value(&Dyadic::one()));
        assert!(between(
            &solve_closing_chord(5, PREC).unwrap(),
            "1.17557050",
            "1.17557051"
        ));
    }

    #[test]
    fn low_precision_arc_stalls_at_high_precision() {
        let arc = ArcSpec::from_chord(IntervalScalar::from_decimal("1.3", 24).unwrap()).unwrap();
        assert_eq!(
            solve_regular_chord(&arc, 3, 200),
            Err(Error::BisectionStall)
        );
    }

    #[test]
    fn profile_symmetry_is_bitwise() {
        for n in [3, 4, 7] {
            let p = partition_profile(&ArcSpec::third(PREC), n, PREC).unwrap();
            let k = p.projections.len();
            for i in 0..k {
                assert_eq!(p.projections[i], p.projections[k - 1 - i]);
            }
        }
    }

    #[test]
    fn profile_sums_and_orders() {
        let arc = ArcSpec::quarter(PREC);
        let p = partition_profile(&arc, 4, PREC).unwrap();
        let sum = p
            .projections
            .iter()
            .fold(IntervalScalar::zero(PREC), |s, g| s.add(g));
        assert!(sum.overlaps(arc.chord_total()));
        for w in p.tangent_segments.windows(2) {
            assert_eq!(compare_certain(&w[0], &w[1]), Verdict::CertainlyLess);
        }
        for w in p.cumulative_chords.windows(2) {
            assert_eq!(compare_certain(&w[0], &w[1]), Verdict::CertainlyLess);
        }
        assert!(p.tangent_total.contains_value(&Dyadic::from_int(2)));
    }

    #[test]
    fn quarter_arc_comparisons() {
        let arc = ArcSpec::quarter(PREC);
        let c = chord_compare(&arc, 1, 2, PREC).unwrap();
        assert_eq!(c.verdict, Verdict::CertainlyLess);
        assert!(between(&c.lhs, "1.530733", "1.530734"));
        assert!(between(&c.rhs, "1.414213", "1.414214"));
        let t = tangent_compare(&arc, 1, 2, PREC).unwrap();
        assert_eq!(t.verdict, Verdict::CertainlyLess);
        assert!(between(&t.lhs, "1.656854", "1.656855"));
        assert!(t.rhs.contains_value(&Dyadic::from_int(2)));
    }

    #[test]
    fn degenerate_indices_are_rejected() {
        let arc = ArcSpec::sixth(PREC);
        assert!(matches!(
            tangent_compare(&arc, 2, 2, PREC),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            chord_compare(&arc, 0, 2, PREC),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn adaptive_comparison_escalates_from_a_tiny_precision() {
        let arc_at = |p: u32| ArcSpec::from_chord(IntervalScalar::from_decimal("1.99", p)?);
        let (c, used) = compare_adaptive(Law::Chord, arc_at, 1, 2, 16, 4096).unwrap();
        assert_eq!(c.verdict, Verdict::CertainlyLess);
        assert!(used >= 16);
    }

    #[test]
    fn angle_profiles() {
        let p = angle_profile(3, 1, 12, PREC).unwrap();
        assert!(p.outer_apex.contains_value(&Dyadic::from_int(90)));
        assert!(p.base_angles.contains_value(&Dyadic::from_int(60)));
        assert!(p.inner_apex.contains_value(&Dyadic::from_int(150)));
        let q = angle_profile(2, 1, 8, PREC).unwrap();
        assert!(q.inner_degenerate);
        assert!(q.measured[3].contains_value(&Dyadic::from_int(180)));
        let r = angle_profile(4, 1, 18, PREC).unwrap();
        assert!(r.outer_apex.contains_value(&Dyadic::from_int(100)));
        assert!(matches!(
            angle_profile(4, 1, 8, PREC),
            Err(Error::DomainViolation(_))
        ));
    }
}
