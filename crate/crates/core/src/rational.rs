//! Rational lengths: chords whose stepping path closes after `N` steps
//! having wound `k` times around the centre.
//!
//! `(k, N)` is the source of truth for the numerator and denominator; the
//! geometric closure and crossing count only verify the construction.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chords::{solve_closing_chord, Comparison};
use crate::circuits::{step_by_chord, winding_number, CirclePoint, Rotation};
use crate::error::{Error, Result};
use crate::interval::{compare_certain, IntervalScalar, Verdict};
use crate::polygons::circumscribed_edge;

const GUARD_BITS: u32 = 32;

/// The chord spanning `k` steps of the regular `N`-gon, `gcd(k, N) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalLength {
    k: u32,
    n: u32,
    chord: IntervalScalar,
}

impl RationalLength {
    /// `D(ℓ)`: turns made by the closed stepping path.
    pub fn denominator(&self) -> u32 {
        self.k
    }

    /// `N(ℓ)`: steps until the stepping path closes.
    pub fn numerator(&self) -> u32 {
        self.n
    }

    pub fn chord(&self) -> &IntervalScalar {
        &self.chord
    }

    /// `(N/k)·ℓ`, the perimeter of the path per turn.
    pub fn normalized(&self) -> IntervalScalar {
        normalize(&self.chord, self.k, self.n)
    }

    /// `(N/k)·L` with `L` the circumscribed edge matching the chord.
    pub fn normalized_circumscribed(&self) -> Result<IntervalScalar> {
        Ok(normalize(&circumscribed_edge(&self.chord)?, self.k, self.n))
    }
}

fn normalize(x: &IntervalScalar, k: u32, n: u32) -> IntervalScalar {
    x.scale(n)
        .div(&IntervalScalar::from_int(k, x.precision()))
        .expect("k ≥ 1")
}

/// Realize the chord for `(k, N)` on the regular `N`-gon built by chord
/// stepping from the solved base edge, after checking that the base
/// polygon closes.
pub fn realize_rational(k: u32, n: u32, prec: u32) -> Result<RationalLength> {
    if n < 3 || k < 1 {
        return Err(Error::PreconditionViolation(format!(
            "need N ≥ 3 and k ≥ 1, got ({k}, {n})"
        )));
    }
    if k.gcd(&n) != 1 {
        return Err(Error::NonCoprime { k, n });
    }
    if 2 * k >= n {
        return Err(Error::ChordTooLong { k, n });
    }
    let wp = prec + GUARD_BITS;
    let edge = solve_closing_chord(n, wp)?;
    let rotation = Rotation::from_chord(&edge)?;
    let start = CirclePoint::start(wp);
    let mut p = start.clone();
    let mut target = None;
    for step in 1..=n {
        p = rotation.apply(&p);
        if step == k {
            target = Some(p.clone());
        }
    }
    if !p.overlaps(&start) {
        return Err(Error::ClosureFailure);
    }
    let chord = start.dist(&target.expect("k < N")).with_precision(prec);
    Ok(RationalLength { k, n, chord })
}

/// The `N` vertices `P_1, …, P_N` of the path stepping by the chord from
/// `(1, 0)`; one further step is checked to return to `P_1`, and the path
/// must wind exactly `k` times.
pub fn gamma_path(r: &RationalLength) -> Result<Vec<CirclePoint>> {
    let start = CirclePoint::start(r.chord.precision());
    let mut points = vec![start];
    for _ in 1..r.n {
        points.push(step_by_chord(points.last().expect("nonempty"), &r.chord)?);
    }
    let closing = step_by_chord(points.last().expect("nonempty"), &r.chord)?;
    if !closing.overlaps(&points[0]) {
        return Err(Error::ClosureFailure);
    }
    match winding_number(&points) {
        Some(w) if w == r.k => Ok(points),
        Some(_) => Err(Error::ClosureFailure),
        None => Err(Error::InconclusivePrecision(r.chord.precision())),
    }
}

/// Perimeter per turn of paths, inscribed or circumscribed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Inscribed,
    Circumscribed,
}

/// With `ℓ` the longer chord and `m` the shorter, `lhs` and `rhs` are the
/// normalized lengths of `ℓ` and `m`. The inscribed law predicts
/// `CertainlyLess`, the circumscribed law `CertainlyGreater`.
pub fn normalized_compare(
    a: &RationalLength,
    b: &RationalLength,
    mode: Mode,
) -> Result<Comparison> {
    let (long, short) = match compare_certain(&a.chord, &b.chord) {
        Verdict::CertainlyGreater => (a, b),
        Verdict::CertainlyLess => (b, a),
        Verdict::Overlap => return Err(Error::HypothesisUnordered),
    };
    let (lhs, rhs) = match mode {
        Mode::Inscribed => (long.normalized(), short.normalized()),
        Mode::Circumscribed => (
            long.normalized_circumscribed()?,
            short.normalized_circumscribed()?,
        ),
    };
    Ok(Comparison {
        verdict: compare_certain(&lhs, &rhs),
        lhs,
        rhs,
    })
}

/// One swept `(k, N)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub chord_lo: String,
    pub chord_hi: String,
    pub normalized_lo: String,
    pub normalized_hi: String,
    /// Whether the path closed and its crossing count matched `k`.
    pub winding_checked: bool,
}

/// Result of sweeping every coprime `(k, N)` with `3 ≤ N ≤ max_n`.
#[derive(Clone, Debug)]
pub struct Sweep {
    /// Lengths sorted by chord, longest first.
    pub lengths: Vec<RationalLength>,
    pub rows: Vec<SweepRow>,
    /// Verdicts for each adjacent pair in both modes.
    pub inscribed: Vec<Comparison>,
    pub circumscribed: Vec<Comparison>,
    /// Precision at which every chord and path was certified.
    pub precision: u32,
}

/// Coprime pairs `(k, N)` with `3 ≤ N ≤ max_n` and `1 ≤ k < N/2`.
pub fn coprime_pairs(max_n: u32) -> Vec<(u32, u32)> {
    (3..=max_n)
        .flat_map(|n| {
            (1..n.div_ceil(2))
                .filter(move |&k| k.gcd(&n) == 1)
                .map(move |k| (k, n))
        })
        .collect()
}

/// Realize and order every coprime pair, doubling the precision until
/// every chord pair separates and every path verifies, up to `cap` bits.
pub fn sweep_rational(max_n: u32, prec: u32, cap: u32) -> Result<Sweep> {
    let pairs = coprime_pairs(max_n);
    let mut prec = prec;
    loop {
        match sweep_at(&pairs, prec) {
            Err(
                Error::HypothesisUnordered
                | Error::InconclusivePrecision(_)
                | Error::BisectionStall,
            ) if prec * 2 <= cap => prec *= 2,
            Err(
                Error::HypothesisUnordered
                | Error::InconclusivePrecision(_)
                | Error::BisectionStall,
            ) => return Err(Error::InconclusivePrecision(cap)),
            other => return other,
        }
    }
}

fn sweep_at(pairs: &[(u32, u32)], prec: u32) -> Result<Sweep> {
    let mut realized: Vec<(RationalLength, bool)> = pairs
        .par_iter()
        .map(|&(k, n)| {
            let r = realize_rational(k, n, prec)?;
            let checked = match gamma_path(&r) {
                Ok(path) => path.len() == n as usize,
                Err(Error::ClosureFailure) => false,
                Err(e) => return Err(e),
            };
            Ok((r, checked))
        })
        .collect::<Result<_>>()?;
    realized.sort_by(|a, b| b.0.chord.mid_f64().total_cmp(&a.0.chord.mid_f64()));
    let mut inscribed = Vec::new();
    let mut circumscribed = Vec::new();
    for w in realized.windows(2) {
        inscribed.push(normalized_compare(&w[0].0, &w[1].0, Mode::Inscribed)?);
        circumscribed.push(normalized_compare(&w[0].0, &w[1].0, Mode::Circumscribed)?);
    }
    let rows = realized
        .iter()
        .map(|(r, checked)| {
            let (chord_lo, chord_hi) = r.chord.to_decimal_pair();
            let (normalized_lo, normalized_hi) = r.normalized().to_decimal_pair();
            SweepRow {
                k: r.k,
                n: r.n,
                chord_lo,
                chord_hi,
                normalized_lo,
                normalized_hi,
                winding_checked: *checked,
            }
        })
        .collect();
    Ok(Sweep {
        lengths: realized.into_iter().map(|(r, _)| r).collect(),
        rows,
        inscribed,
        circumscribed,
        precision: prec,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Dyadic;

    const PREC: u32 = 96;

    fn dec(s: &str) -> IntervalScalar {
        IntervalScalar::from_decimal(s, 128).unwrap()
    }

    #[test]
    fn integral_lengths() {
        let hex = realize_rational(1, 6, PREC).unwrap();
        assert!(hex.chord().contains_value(&Dyadic::one()));
        assert_eq!((hex.numerator(), hex.denominator()), (6, 1));
        let sq = realize_rational(1, 4, PREC).unwrap();
        assert!(sq.chord().sqr().contains_value(&Dyadic::from_int(2)));
    }

    #[test]
    fn pentagram() {
        let r = realize_rational(2, 5, PREC).unwrap();
        assert_eq!(
            compare_certain(&dec("1.90211302"), r.chord()),
            Verdict::CertainlyLess
        );
        assert_eq!(
            compare_certain(r.chord(), &dec("1.90211304")),
            Verdict::CertainlyLess
        );
        let path = gamma_path(&r).unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!(winding_number(&path), Some(2));
    }

    #[test]
    fn triangle_path() {
        let path = gamma_path(&realize_rational(1, 3, PREC).unwrap()).unwrap();
        assert_eq!(path.len(), 3);
    }

    #[test]
    fn invalid_pairs() {
        assert_eq!(
            realize_rational(2, 6, PREC),
            Err(Error::NonCoprime { k: 2, n: 6 })
        );
        assert_eq!(
            realize_rational(3, 5, PREC),
            Err(Error::ChordTooLong { k: 3, n: 5 })
        );
        assert!(realize_rational(1, 2, PREC).is_err());
    }

    #[test]
    fn closed_form_comparisons() {
        let sq = realize_rational(1, 4, PREC).unwrap();
        let hex = realize_rational(1, 6, PREC).unwrap();
        let ins = normalized_compare(&sq, &hex, Mode::Inscribed).unwrap();
        assert_eq!(ins.verdict, Verdict::CertainlyLess);
        assert!(ins.rhs.contains_value(&Dyadic::from_int(6)));
        let circ = normalized_compare(&hex, &sq, Mode::Circumscribed).unwrap();
        assert_eq!(circ.verdict, Verdict::CertainlyGreater);
        assert!(circ.lhs.contains_value(&Dyadic::from_int(8)));
        assert_eq!(
            normalized_compare(&sq, &sq, Mode::Inscribed).unwrap_err(),
            Error::HypothesisUnordered
        );
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(
            coprime_pairs(6),
            vec![(1, 3), (1, 4), (1, 5), (2, 5), (1, 6)]
        );
    }

    #[test]
    fn small_sweep_is_ordered() {
        let sweep = sweep_rational(10, 64, 1024).unwrap();
        assert_eq!(sweep.rows.len(), coprime_pairs(10).len());
        assert!(sweep
            .inscribed
            .iter()
            .all(|c| c.verdict == Verdict::CertainlyLess));
        assert!(sweep
            .circumscribed
            .iter()
            .all(|c| c.verdict == Verdict::CertainlyGreater));
        assert!(sweep.rows.iter().all(|r| r.winding_checked));
    }
}
